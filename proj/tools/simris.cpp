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

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simris/simris.hpp"

namespace fs = std::filesystem;
using namespace simris;

namespace {

// Grid parsing: either a comma list "1,2,3" or a range "start:step:stop".
std::vector<double> parse_grid(const std::string &text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double start, step, stop;
        char c1, c2;
        std::istringstream ss(text);
        if (!(ss >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw ConfigError("grid", "expected 'start:step:stop' with positive step");
        for (double v = start; v <= stop + 1e-12; v += step)
            out.push_back(v);
    } else {
        std::istringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ','))
            out.push_back(std::stod(item));
    }
    if (out.empty())
        throw ConfigError("grid", "empty grid");
    return out;
}

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> realizations;
    std::optional<int> workers;
    std::optional<std::string> phase_mode;
    std::optional<int> q_bits;
    std::optional<double> kappa;
    std::optional<double> pt_dbm;
};

void add_common(CLI::App *cmd, CommonOpts &o) {
    cmd->add_option("--config", o.config_path, "JSON config file (or a run manifest)")
        ->required();
    cmd->add_option("--out", o.out_dir, "output directory (default: $SIMRIS_OUT or '.')");
    cmd->add_option("--seed", o.seed, "override the config seed");
    cmd->add_option("--realizations", o.realizations, "override the realization count");
    cmd->add_option("--workers", o.workers, "worker thread count");
    cmd->add_option("--phase-mode", o.phase_mode,
                    "override phase mode: ideal|quantized|noisy|quantized-noisy");
    cmd->add_option("--q-bits", o.q_bits, "override phase quantizer control bits");
    cmd->add_option("--kappa", o.kappa, "override phase error concentration");
    cmd->add_option("--pt-dbm", o.pt_dbm, "override transmit power in dBm");
}

SimConfig load_effective_config(const CommonOpts &o, ParseReport &report) {
    SimConfig cfg = load_config_file(o.config_path, &report);
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.realizations)
        cfg.realizations = *o.realizations;
    if (o.workers)
        cfg.workers = *o.workers;
    if (o.phase_mode) {
        const std::string &s = *o.phase_mode;
        if (s == "ideal")
            cfg.phase.mode = PhaseMode::Ideal;
        else if (s == "quantized")
            cfg.phase.mode = PhaseMode::Quantized;
        else if (s == "noisy")
            cfg.phase.mode = PhaseMode::Noisy;
        else if (s == "quantized-noisy" || s == "quantized_noisy")
            cfg.phase.mode = PhaseMode::QuantizedNoisy;
        else
            throw ConfigError("phase-mode", "unknown phase mode '" + s + "'");
    }
    if (o.q_bits)
        cfg.phase.q_bits = *o.q_bits;
    if (o.kappa)
        cfg.phase.kappa = *o.kappa;
    if (o.pt_dbm)
        cfg.budget.pt_dbm = *o.pt_dbm;
    return cfg;
}

fs::path resolve_out_dir(const CommonOpts &o) {
    std::string dir = o.out_dir;
    if (dir.empty()) {
        if (const char *env = std::getenv("SIMRIS_OUT"))
            dir = env;
        else
            dir = ".";
    }
    fs::create_directories(dir);
    return dir;
}

void print_warnings(const ParseReport &report) {
    for (const auto &w : report.warnings)
        std::cerr << "warning: " << w << "\n";
}

int run_generate(const CommonOpts &o) {
    ParseReport report;
    const SimConfig cfg = load_effective_config(o, report);
    const ChannelModel model = make_channel_model(cfg, &report);
    print_warnings(report);
    const fs::path dir = resolve_out_dir(o);

    CsvWriter csv((dir / "channels.csv").string());
    csv.header(channel_csv_header(cfg.n_elements));

    // realizations stream out in blocks so memory stays bounded while the
    // row order (and hence the bytes) stays independent of the worker count
    constexpr std::size_t kBlock = 256;
    for (std::size_t start = 0; start < cfg.realizations; start += kBlock) {
        const std::size_t n = std::min(kBlock, cfg.realizations - start);
        std::vector<ChannelRealization> block(n);
        parallel_for_indices(n, cfg.workers, [&](std::size_t i) {
            block[i] = generate_realization(model, cfg.seed, start + i);
        });
        for (const auto &r : block)
            csv.row(channel_csv_row(r));
    }

    write_manifest((dir / "manifest.json").string(), "generate", cfg, {"channels.csv"});
    std::cout << "wrote " << (dir / "channels.csv").string() << " (" << cfg.realizations
              << " realizations)\n";
    return 0;
}

int run_rate(const CommonOpts &o) {
    ParseReport report;
    const SimConfig cfg = load_effective_config(o, report);
    const ChannelModel model = make_channel_model(cfg, &report);
    print_warnings(report);
    const fs::path dir = resolve_out_dir(o);

    const RateResult r =
        achievable_rate(model, cfg.phase, cfg.budget, cfg.realizations, cfg.seed, cfg.workers);
    CsvWriter csv((dir / "rate.csv").string());
    csv.header(kRateCsvHeader);
    csv.row(rate_csv_row(r));
    write_manifest((dir / "manifest.json").string(), "rate", cfg, {"rate.csv"});
    std::cout << "rate " << r.mean_rate << " bits/s/Hz (no RIS: " << r.mean_rate_no_ris
              << ") over " << r.realizations << " realizations\n";
    return 0;
}

int write_sweep(const fs::path &dir, const std::string &name, const SimConfig &cfg,
                const std::vector<RateResult> &rows, const std::vector<std::string> &errors) {
    const std::string file = name + ".csv";
    CsvWriter csv((dir / file).string());
    csv.header(kRateCsvHeader);
    for (const auto &r : rows)
        csv.row(rate_csv_row(r));
    for (const auto &e : errors)
        std::cerr << "warning: " << e << "\n";
    write_manifest((dir / "manifest.json").string(), name, cfg, {file});
    std::cout << "wrote " << (dir / file).string() << " (" << rows.size() << " grid points)\n";
    return 0;
}

int run_sweep_power(const CommonOpts &o, const std::string &grid_text) {
    ParseReport report;
    const SimConfig cfg = load_effective_config(o, report);
    const ChannelModel model = make_channel_model(cfg, &report);
    print_warnings(report);
    const auto grid = parse_grid(grid_text);
    const auto rows = sweep_power(model, cfg.phase, cfg.budget, grid, cfg.realizations, cfg.seed,
                                  cfg.workers);
    return write_sweep(resolve_out_dir(o), "sweep_power", cfg, rows, {});
}

int run_sweep_position(const CommonOpts &o, const std::string &grid_text, char coord,
                       bool move_ris) {
    ParseReport report;
    const SimConfig cfg = load_effective_config(o, report);
    const ChannelModel model = make_channel_model(cfg, &report);
    print_warnings(report);
    const auto grid = parse_grid(grid_text);

    auto mutate = [coord, move_ris](ChannelModel &m, double v) {
        Point3 &p = move_ris ? m.panel.position : m.rx;
        if (coord == 'x')
            p.x = v;
        else if (coord == 'y')
            p.y = v;
        else
            p.z = v;
        if (p.z < 0.0)
            throw DegenerateGeometry("position below ground");
        if (m.env == Environment::Indoor && !inside_bounds(p, m.bounds, m.env))
            throw ConfigError("grid", "position outside room bounds");
    };
    std::vector<std::string> errors;
    const auto rows = sweep_scene(model, cfg.phase, cfg.budget, grid, mutate, cfg.realizations,
                                  cfg.seed, cfg.workers, &errors);
    return write_sweep(resolve_out_dir(o), move_ris ? "sweep_ris" : "sweep_rx", cfg, rows,
                       errors);
}

int run_sweep_n(const CommonOpts &o, const std::string &grid_text) {
    ParseReport report;
    const SimConfig cfg = load_effective_config(o, report);
    const ChannelModel model = make_channel_model(cfg, &report);
    print_warnings(report);
    std::vector<std::size_t> grid;
    for (double v : parse_grid(grid_text))
        grid.push_back(std::size_t(v));
    std::vector<std::string> errors;
    const auto rows = sweep_element_count(model, cfg.phase, cfg.budget, grid, cfg.realizations,
                                          cfg.seed, cfg.workers, &errors);
    return write_sweep(resolve_out_dir(o), "sweep_n", cfg, rows, errors);
}

int run_corr(const CommonOpts &o, const std::string &method, std::size_t samples) {
    ParseReport report;
    const SimConfig cfg = load_effective_config(o, report);
    const ChannelModel model = make_channel_model(cfg, &report);
    print_warnings(report);
    const fs::path dir = resolve_out_dir(o);

    CorrelationMatrix R;
    if (method == "empirical") {
        // sample NLOS Tx-RIS vectors; the LOS term is excluded from the
        // correlation analysis
        std::vector<std::vector<cplx>> h_samples(cfg.realizations);
        parallel_for_indices(cfg.realizations, cfg.workers, [&](std::size_t i) {
            ChannelRealization r = generate_realization(model, cfg.seed, i);
            for (std::size_t n = 0; n < r.h.size(); ++n)
                r.h[n] -= r.h_los[n];
            h_samples[i] = std::move(r.h);
        });
        R = empirical_correlation(h_samples);
    } else if (method == "semi") {
        std::vector<std::vector<double>> per_index(cfg.realizations);
        parallel_for_indices(cfg.realizations, cfg.workers, [&](std::size_t i) {
            const ChannelRealization r = generate_realization(model, cfg.seed, i);
            per_index[i] = cluster_mean_elevations(r.tx_ris_clusters, model.panel.position,
                                                   model.panel.scenario);
        });
        std::vector<double> thetas;
        for (auto &v : per_index)
            thetas.insert(thetas.end(), v.begin(), v.end());
        if (samples > 0 && thetas.size() > samples)
            thetas.resize(samples);
        R = correlation_matrix_from_function(
            cfg.n_elements, model.panel.spacing,
            [&](double d) { return semi_analytic_correlation(thetas, d, model.wavenumber); });
    } else if (method == "analytic") {
        const ElevationPdf pdf = model.env == Environment::Indoor ? ElevationPdf::indoor()
                                                                  : ElevationPdf::outdoor();
        R = correlation_matrix_from_function(cfg.n_elements, model.panel.spacing, [&](double d) {
            return analytic_correlation(pdf, d, model.wavenumber);
        });
    } else {
        throw ConfigError("method", "unknown correlation method '" + method + "'");
    }

    const auto eigs = eigenvalue_spread(R);
    const std::string file = "corr_" + method + "_eigenvalues.csv";
    CsvWriter csv((dir / file).string());
    csv.header("index,eigenvalue");
    for (std::size_t i = 0; i < eigs.size(); ++i)
        csv.row({double(i + 1), eigs[i]});
    write_manifest((dir / "manifest.json").string(), "corr", cfg, {file});
    std::cout << "wrote " << (dir / file).string() << " (lambda_1/N = "
              << eigs.front() / double(cfg.n_elements) << ")\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"simris: Monte Carlo simulator for RIS-assisted mmWave links"};
    app.require_subcommand(1);

    CommonOpts gen_o, rate_o, sp_o, srx_o, sris_o, sn_o, corr_o;
    std::string sp_grid, srx_grid, sris_grid, sn_grid = "64,256,1024";
    std::string srx_coord = "x", sris_coord = "x";
    std::string corr_method = "empirical";
    std::size_t corr_samples = 0;

    auto *gen = app.add_subcommand("generate", "dump channel realizations to CSV");
    add_common(gen, gen_o);

    auto *rate = app.add_subcommand("rate", "ergodic achievable rate at the configured budget");
    add_common(rate, rate_o);

    auto *sp = app.add_subcommand("sweep-power", "rate vs transmit power");
    add_common(sp, sp_o);
    sp->add_option("--grid", sp_grid, "Pt grid in dBm, 'a,b,c' or 'start:step:stop'")
        ->required();

    auto *srx = app.add_subcommand("sweep-rx", "rate vs receiver position");
    add_common(srx, srx_o);
    srx->add_option("--grid", srx_grid, "coordinate grid, 'a,b,c' or 'start:step:stop'")
        ->required();
    srx->add_option("--coord", srx_coord, "which Rx coordinate to sweep: x|y|z");

    auto *sris = app.add_subcommand("sweep-ris", "rate vs panel position");
    add_common(sris, sris_o);
    sris->add_option("--grid", sris_grid, "coordinate grid, 'a,b,c' or 'start:step:stop'")
        ->required();
    sris->add_option("--coord", sris_coord, "which RIS coordinate to sweep: x|y|z");

    auto *sn = app.add_subcommand("sweep-n", "rate vs element count");
    add_common(sn, sn_o);
    sn->add_option("--grid", sn_grid, "element counts, comma separated perfect squares");

    auto *corr = app.add_subcommand("corr", "spatial correlation eigenvalue spread");
    add_common(corr, corr_o);
    corr->add_option("--method", corr_method, "empirical|semi|analytic");
    corr->add_option("--samples", corr_samples,
                     "cap on elevation samples for the semi-analytic method (0 = all)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return run_generate(gen_o);
        if (rate->parsed())
            return run_rate(rate_o);
        if (sp->parsed())
            return run_sweep_power(sp_o, sp_grid);
        if (srx->parsed())
            return run_sweep_position(srx_o, srx_grid, srx_coord.at(0), false);
        if (sris->parsed())
            return run_sweep_position(sris_o, sris_grid, sris_coord.at(0), true);
        if (sn->parsed())
            return run_sweep_n(sn_o, sn_grid);
        if (corr->parsed())
            return run_corr(corr_o, corr_method, corr_samples);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
