#include "lpdmt/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "lpdmt/config.hpp"
#include "lpdmt/oracle.hpp"
#include "lpdmt/simkit.hpp"

namespace lpdmt {

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "config file (TOML or JSON)")
        ->envname("LPDMT_CONFIG");
    cmd->add_option("--out", opts.out_path, "output path (default: stdout)");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--seed", opts.seed, "random seed")->capture_default_str();
}

SimConfig config_for(const CommonOpts& opts) {
    if (opts.config_path.empty()) return default_config();
    return load_config(opts.config_path);
}

int emit(const CommonOpts& opts, const std::string& payload) {
    if (opts.out_path.empty()) {
        std::cout << payload;
        return 0;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << opts.out_path << "\n";
        return 1;
    }
    out << payload;
    if (!out) {
        std::cerr << "error: write failed: " << opts.out_path << "\n";
        return 1;
    }
    return 0;
}

int run_gap_table(const CommonOpts& opts) {
    const SimConfig cfg = config_for(opts);
    std::ostringstream buf;
    write_gap_table_csv(buf, cfg.coding);
    return emit(opts, buf.str());
}

int run_channel_response(const CommonOpts& opts) {
    const SimConfig cfg = config_for(opts);
    const ChannelResponse resp = frequency_response(cfg.resolve_channel(), cfg.grid);
    std::ostringstream buf;
    write_response_csv(buf, resp, cfg.grid);
    return emit(opts, buf.str());
}

int run_allocate(const CommonOpts& opts, bool dmt, bool uncoded) {
    SimConfig cfg = config_for(opts);
    cfg.validate();
    GapConfig gap_cfg = cfg.coding;
    gap_cfg.coded = !uncoded;
    const GapTable table = build_gap_table(gap_cfg);
    LoadParams params = cfg.load_params();
    if (dmt) params.lc = 1;
    const SubsetPlan plan = partition(cfg.grid.n, params.lc, cfg.strategy);
    const ChannelResponse resp = frequency_response(cfg.resolve_channel(), cfg.grid);
    const SystemAllocation alloc = allocate_system(resp, plan, table, params);

    std::ostringstream buf;
    if (opts.format == "json") {
        buf << allocation_json(alloc, plan);
    } else {
        write_allocation_csv(buf, alloc, plan, cfg.grid);
    }
    return emit(opts, buf.str());
}

int run_sweep_cmd(const CommonOpts& opts, const std::string& pct_out) {
    const SimConfig cfg = config_for(opts);
    const SweepResult result = run_sweep(cfg);
    std::ostringstream buf;
    if (opts.format == "json") {
        buf << sweep_json(result);
    } else {
        write_sweep_csv(buf, result);
    }
    const int rc = emit(opts, buf.str());
    if (rc != 0 || pct_out.empty()) return rc;
    std::ostringstream pct;
    write_pct_csv(pct, result);
    CommonOpts pct_opts = opts;
    pct_opts.out_path = pct_out;
    return emit(pct_opts, pct.str());
}

int run_energy_profile(const CommonOpts& opts, const std::string& mode, bool uncoded) {
    const SimConfig cfg = config_for(opts);
    const auto rows = energy_profile(cfg, mode == "lpdmt", !uncoded);
    std::ostringstream buf;
    write_energy_profile_csv(buf, rows);
    return emit(opts, buf.str());
}

int run_verify(const CommonOpts& opts, std::size_t seeds, std::size_t symbols) {
    const SimConfig cfg = config_for(opts);
    GapConfig coded_cfg = cfg.coding;
    coded_cfg.coded = true;
    coded_cfg.b_max = std::min(coded_cfg.b_max, 4);
    const GapTable table = build_gap_table(coded_cfg);

    bool all_ok = true;

    // greedy vs exhaustive search on small random instances
    std::size_t equal = 0, infeasible = 0, above = 0;
    std::mt19937_64 rng(opts.seed);
    LoadParams params = cfg.load_params();
    params.b_min = coded_cfg.b_min;
    params.b_max = coded_cfg.b_max;
    for (std::size_t s = 0; s < seeds; ++s) {
        params.lc = 2 + static_cast<std::size_t>(rng() % 3);  // 2..4
        const auto gains = random_subset_gains(rng, params.lc);
        const SubsetAllocation greedy = allocate_subset(gains, table, params);
        const OracleResult opt = exhaustive_allocate(gains, table, params);
        if (greedy.total_energy() > params.es) ++infeasible;
        if (greedy.r_discrete > opt.best_rate) ++above;
        if (greedy.r_discrete == opt.best_rate) ++equal;
    }
    const bool loading_ok = infeasible == 0 && above == 0 && equal * 100 >= seeds * 95;
    std::cout << (loading_ok ? "PASS" : "FAIL") << " loading-vs-exhaustive: optimum matched " << equal
              << "/" << seeds << ", budget violations " << infeasible << ", above-optimum " << above
              << "\n";
    all_ok = all_ok && loading_ok;

    // gap calibration: QPSK at the gap for symbol error rate 1e-3
    const double target_ser = 1e-3;
    const double gap_db = 10.0 * std::log10(gap_at_ber(target_ser));
    const double ser = qam_error_monte_carlo(2, gap_db, symbols, opts.seed);
    const bool mc_ok = ser >= 0.5 * target_ser && ser <= 2.0 * target_ser;
    std::cout << (mc_ok ? "PASS" : "FAIL") << " qam-gap-calibration: measured SER "
              << format_double(ser) << " vs target " << format_double(target_ser) << " ("
              << symbols << " symbols)\n";
    all_ok = all_ok && mc_ok;

    return all_ok ? 0 : 1;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"Adaptive bit/energy loading for linearly precoded multitone over power-line channels"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* gap_cmd = app.add_subcommand("gap-table", "emit the per-order SNR gap table (CSV)");
    add_common(gap_cmd, opts);

    auto* chan_cmd = app.add_subcommand("channel-response", "emit the channel frequency response (CSV)");
    add_common(chan_cmd, opts);

    auto* alloc_cmd = app.add_subcommand("allocate", "run the loading algorithm on the reference channel");
    add_common(alloc_cmd, opts);
    bool alloc_dmt = false, alloc_uncoded = false;
    alloc_cmd->add_flag("--dmt", alloc_dmt, "plain multitone (lc = 1)");
    alloc_cmd->add_flag("--uncoded", alloc_uncoded, "use the uncoded gap table");

    auto* sweep_cmd = app.add_subcommand("sweep", "four-way throughput sweep over average channel gain");
    add_common(sweep_cmd, opts);
    std::string pct_out;
    sweep_cmd->add_option("--pct-out", pct_out, "also write a gain-vs-percentage CSV to this path");

    auto* energy_cmd = app.add_subcommand("energy-profile", "per-subcarrier allocated energy (CSV)");
    add_common(energy_cmd, opts);
    std::string mode = "lpdmt";
    bool energy_uncoded = false;
    energy_cmd->add_option("--mode", mode, "system variant")
        ->check(CLI::IsMember({"lpdmt", "dmt"}))
        ->capture_default_str();
    energy_cmd->add_flag("--uncoded", energy_uncoded, "use the uncoded gap table");

    auto* verify_cmd = app.add_subcommand("verify", "run the built-in verification oracles");
    add_common(verify_cmd, opts);
    std::size_t seeds = 100, symbols = 1000000;
    verify_cmd->add_option("--seeds", seeds, "random loading instances")->capture_default_str();
    verify_cmd->add_option("--symbols", symbols, "Monte-Carlo symbols")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gap_cmd->parsed()) return run_gap_table(opts);
        if (chan_cmd->parsed()) return run_channel_response(opts);
        if (alloc_cmd->parsed()) return run_allocate(opts, alloc_dmt, alloc_uncoded);
        if (sweep_cmd->parsed()) return run_sweep_cmd(opts, pct_out);
        if (energy_cmd->parsed()) return run_energy_profile(opts, mode, energy_uncoded);
        if (verify_cmd->parsed()) return run_verify(opts, seeds, symbols);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace lpdmt
