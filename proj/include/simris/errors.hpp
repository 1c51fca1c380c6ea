// SPDX-License-Identifier: Apache-2.0
//
// simris: link-level simulator for RIS-assisted mmWave channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SIMRIS_ERRORS_HPP
#define SIMRIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace simris {

struct DegenerateGeometry : std::invalid_argument {
    explicit DegenerateGeometry(const std::string &what) : std::invalid_argument(what) {}
};

struct NotSquare : std::invalid_argument {
    explicit NotSquare(const std::string &what) : std::invalid_argument(what) {}
};

struct BelowReferenceDistance : std::invalid_argument {
    explicit BelowReferenceDistance(const std::string &what) : std::invalid_argument(what) {}
};

struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string &what) : std::invalid_argument(what) {}
};

struct NotHermitian : std::invalid_argument {
    explicit NotHermitian(const std::string &what) : std::invalid_argument(what) {}
};

struct InsufficientSamples : std::invalid_argument {
    explicit InsufficientSamples(const std::string &what) : std::invalid_argument(what) {}
};

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string &what) : std::runtime_error(what) {}
};

// Configuration parsing/validation error carrying the offending field path.
struct ConfigError : std::runtime_error {
    std::string field;
    ConfigError(std::string field_path, const std::string &reason)
        : std::runtime_error(field_path.empty() ? reason : field_path + ": " + reason),
          field(std::move(field_path)) {}
};

} // namespace simris

#endif // SIMRIS_ERRORS_HPP
