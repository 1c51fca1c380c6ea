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

#ifndef SIMRIS_CSV_HPP
#define SIMRIS_CSV_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "simris/channel.hpp"
#include "simris/config.hpp"
#include "simris/metrics.hpp"

namespace simris {

/// 17 significant digits: enough to round-trip any double exactly.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string &path) : out_(path, std::ios::binary) {
        if (!out_)
            throw std::runtime_error("cannot open output file '" + path + "'");
    }

    void header(const std::string &line) { out_ << line << "\n"; }

    void row(const std::vector<double> &values) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i)
                out_ << ',';
            out_ << format_double(values[i]);
        }
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

inline std::string channel_csv_header(std::size_t n_elements) {
    std::string h;
    for (std::size_t i = 1; i <= n_elements; ++i)
        h += "re(h_" + std::to_string(i) + "),im(h_" + std::to_string(i) + "),";
    for (std::size_t i = 1; i <= n_elements; ++i)
        h += "re(g_" + std::to_string(i) + "),im(g_" + std::to_string(i) + "),";
    h += "re(h_siso),im(h_siso),los_txris,los_risrx,los_txrx";
    return h;
}

inline std::vector<double> channel_csv_row(const ChannelRealization &r) {
    std::vector<double> row;
    row.reserve(4 * r.h.size() + 5);
    for (const auto &v : r.h) {
        row.push_back(v.real());
        row.push_back(v.imag());
    }
    for (const auto &v : r.g) {
        row.push_back(v.real());
        row.push_back(v.imag());
    }
    row.push_back(r.h_siso.real());
    row.push_back(r.h_siso.imag());
    row.push_back(r.los_tx_ris ? 1.0 : 0.0);
    row.push_back(r.los_ris_rx ? 1.0 : 0.0);
    row.push_back(r.los_tx_rx ? 1.0 : 0.0);
    return row;
}

inline constexpr const char *kRateCsvHeader =
    "axis_value,mean_rate,stderr,mean_rate_no_ris,n_realizations";

inline std::vector<double> rate_csv_row(const RateResult &r) {
    return {r.axis_value, r.mean_rate, r.std_error, r.mean_rate_no_ris, double(r.realizations)};
}

/// Run manifest: tool version, subcommand, effective configuration and the
/// files it produced. Feeding the manifest back as --config reruns the exact
/// same job.
inline void write_manifest(const std::string &path, const std::string &subcommand,
                           const SimConfig &cfg, const std::vector<std::string> &outputs) {
    nlohmann::json j;
    j["simris_version"] = kVersion;
    j["subcommand"] = subcommand;
    j["seed"] = cfg.seed;
    j["config"] = detail::config_to_json(cfg);
    j["outputs"] = outputs;
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open manifest file '" + path + "'");
    out << j.dump(2) << "\n";
}

} // namespace simris

#endif // SIMRIS_CSV_HPP
