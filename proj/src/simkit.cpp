#include "lpdmt/simkit.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

namespace lpdmt {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

namespace {

double pct_gain(long a, long b) {
    if (b == 0) return a == 0 ? std::numeric_limits<double>::quiet_NaN()
                              : std::numeric_limits<double>::infinity();
    return 100.0 * static_cast<double>(a - b) / static_cast<double>(b);
}

}  // namespace

SweepResult run_sweep(const SimConfig& cfg) {
    cfg.validate();
    const ChannelModel model = cfg.resolve_channel();
    const ChannelResponse reference = frequency_response(model, cfg.grid);

    SweepResult result;
    result.reference_g_db = average_gain_db(reference);

    GapConfig coded_cfg = cfg.coding;
    coded_cfg.coded = true;
    GapConfig uncoded_cfg = cfg.coding;
    uncoded_cfg.coded = false;
    const GapTable coded = build_gap_table(coded_cfg);
    const GapTable uncoded = build_gap_table(uncoded_cfg);

    const SubsetPlan plan_lp = partition(cfg.grid.n, cfg.lc, cfg.strategy);
    const SubsetPlan plan_dmt = partition(cfg.grid.n, 1, cfg.strategy);
    LoadParams params_lp = cfg.load_params();
    LoadParams params_dmt = params_lp;
    params_dmt.lc = 1;

    const std::size_t points = cfg.sweep.points();
    result.rows.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
        SweepRow row;
        row.target_g_db = cfg.sweep.start_db + static_cast<double>(i) * cfg.sweep.step_db;
        row.snr_db = cfg.psd_dbm_hz + row.target_g_db - cfg.noise_dbm_hz;

        const ChannelResponse scaled = scale_to_gain(reference, row.target_g_db);
        row.bits_coded_lpdmt = allocate_system(scaled, plan_lp, coded, params_lp).total_bits;
        row.bits_uncoded_lpdmt = allocate_system(scaled, plan_lp, uncoded, params_lp).total_bits;
        row.bits_coded_dmt = allocate_system(scaled, plan_dmt, coded, params_dmt).total_bits;
        row.bits_uncoded_dmt = allocate_system(scaled, plan_dmt, uncoded, params_dmt).total_bits;
        row.pct_vs_uncoded_lpdmt = pct_gain(row.bits_coded_lpdmt, row.bits_uncoded_lpdmt);
        row.pct_vs_coded_dmt = pct_gain(row.bits_coded_lpdmt, row.bits_coded_dmt);
        result.rows.push_back(row);
    }
    return result;
}

std::vector<EnergyProfileRow> energy_profile(const SimConfig& cfg, bool lpdmt, bool coded) {
    cfg.validate();
    const ChannelModel model = cfg.resolve_channel();
    const ChannelResponse reference = frequency_response(model, cfg.grid);

    GapConfig gap_cfg = cfg.coding;
    gap_cfg.coded = coded;
    const GapTable table = build_gap_table(gap_cfg);

    LoadParams params = cfg.load_params();
    params.lc = lpdmt ? cfg.lc : 1;
    const SubsetPlan plan = partition(cfg.grid.n, params.lc, cfg.strategy);
    const SystemAllocation alloc = allocate_system(reference, plan, table, params);

    std::vector<EnergyProfileRow> rows;
    rows.reserve(cfg.grid.n);
    for (std::size_t i = 0; i < cfg.grid.n; ++i) {
        rows.push_back({i + 1, cfg.grid.frequency(i), alloc.per_subcarrier_energy[i], params.es});
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << "# reference_channel_gain_db = " << format_double(result.reference_g_db) << "\n";
    out << "target_G_dB,snr_db,bits_coded_lpdmt,bits_uncoded_lpdmt,bits_coded_dmt,bits_uncoded_dmt,"
           "pct_vs_uncoded_lpdmt,pct_vs_coded_dmt\n";
    for (const auto& r : result.rows) {
        out << format_double(r.target_g_db) << ',' << format_double(r.snr_db) << ','
            << r.bits_coded_lpdmt << ',' << r.bits_uncoded_lpdmt << ',' << r.bits_coded_dmt << ','
            << r.bits_uncoded_dmt << ',' << format_double(r.pct_vs_uncoded_lpdmt) << ','
            << format_double(r.pct_vs_coded_dmt) << '\n';
    }
}

void write_pct_csv(std::ostream& out, const SweepResult& result) {
    out << "# reference_channel_gain_db = " << format_double(result.reference_g_db) << "\n";
    out << "target_G_dB,pct_vs_uncoded_lpdmt,pct_vs_coded_dmt\n";
    for (const auto& r : result.rows) {
        out << format_double(r.target_g_db) << ',' << format_double(r.pct_vs_uncoded_lpdmt) << ','
            << format_double(r.pct_vs_coded_dmt) << '\n';
    }
}

void write_energy_profile_csv(std::ostream& out, const std::vector<EnergyProfileRow>& rows) {
    out << "n,f_hz,energy,ceiling\n";
    for (const auto& r : rows) {
        out << r.n << ',' << format_double(r.f_hz) << ',' << format_double(r.energy) << ','
            << format_double(r.ceiling) << '\n';
    }
}

void write_gap_table_csv(std::ostream& out, const GapConfig& cfg) {
    const GapTable table = build_gap_table(cfg);
    const double g_rs = cfg.coded ? gamma_rs_db(cfg) : 0.0;
    const double g_tc = cfg.coded ? cfg.gamma_tc_db : 0.0;
    out << "b,gamma_db,gamma_linear,gamma_rs_db,gamma_loss_db,gamma_tc_db,gamma_m_db\n";
    for (int b = cfg.b_min; b <= cfg.b_max; ++b) {
        const double g_loss = cfg.coded ? gamma_loss_db(b, cfg) : 0.0;
        out << b << ',' << format_double(table.db(b)) << ',' << format_double(table.linear(b)) << ','
            << format_double(g_rs) << ',' << format_double(g_loss) << ',' << format_double(g_tc)
            << ',' << format_double(cfg.gamma_m_db) << '\n';
    }
}

void write_response_csv(std::ostream& out, const ChannelResponse& resp, const FrequencyGrid& grid) {
    out << "n,f_hz,gain_linear,gain_db\n";
    for (std::size_t i = 0; i < resp.gains.size(); ++i) {
        const double g = resp.gains[i];
        out << (i + 1) << ',' << format_double(grid.frequency(i)) << ',' << format_double(g) << ','
            << format_double(10.0 * std::log10(g)) << '\n';
    }
}

void write_allocation_csv(std::ostream& out, const SystemAllocation& alloc, const SubsetPlan& plan,
                          const FrequencyGrid& grid) {
    // bits per tone: subset rate spread over its lc subcarriers
    std::vector<double> bits_density(alloc.per_subcarrier_energy.size(), 0.0);
    for (std::size_t k = 0; k < plan.subsets.size(); ++k) {
        const auto& subset = plan.subsets[k];
        const double density =
            static_cast<double>(alloc.per_subset[k].r_discrete) / static_cast<double>(subset.size());
        for (std::size_t idx : subset) bits_density[idx] = density;
    }
    out << "n,f_hz,energy_per_subcarrier,bits_density\n";
    for (std::size_t i = 0; i < alloc.per_subcarrier_energy.size(); ++i) {
        out << (i + 1) << ',' << format_double(grid.frequency(i)) << ','
            << format_double(alloc.per_subcarrier_energy[i]) << ',' << format_double(bits_density[i])
            << '\n';
    }
}

std::string allocation_json(const SystemAllocation& alloc, const SubsetPlan& plan) {
    json subsets = json::array();
    double total_energy = 0.0;
    for (std::size_t k = 0; k < plan.subsets.size(); ++k) {
        const auto& a = alloc.per_subset[k];
        json subcarriers = json::array();
        for (std::size_t idx : plan.subsets[k]) subcarriers.push_back(idx + 1);  // 1-based
        subsets.push_back({{"subset_index", k + 1},
                           {"subcarriers", subcarriers},
                           {"bits", a.bits},
                           {"energies", a.energies},
                           {"r_continuous", a.r_continuous},
                           {"r_discrete", a.r_discrete},
                           {"usable", a.usable}});
        total_energy += a.total_energy() * static_cast<double>(plan.subsets[k].size());
    }
    json root = {{"total_bits", alloc.total_bits},
                 {"total_energy", total_energy},
                 {"n_subsets", plan.subsets.size()},
                 {"strategy", strategy_name(plan.strategy)},
                 {"subsets", subsets}};
    return root.dump(2) + "\n";
}

std::string sweep_json(const SweepResult& result) {
    json rows = json::array();
    for (const auto& r : result.rows) {
        rows.push_back({{"target_G_dB", r.target_g_db},
                        {"snr_db", r.snr_db},
                        {"bits_coded_lpdmt", r.bits_coded_lpdmt},
                        {"bits_uncoded_lpdmt", r.bits_uncoded_lpdmt},
                        {"bits_coded_dmt", r.bits_coded_dmt},
                        {"bits_uncoded_dmt", r.bits_uncoded_dmt},
                        {"pct_vs_uncoded_lpdmt", r.pct_vs_uncoded_lpdmt},
                        {"pct_vs_coded_dmt", r.pct_vs_coded_dmt}});
    }
    json root = {{"reference_channel_gain_db", result.reference_g_db}, {"rows", rows}};
    return root.dump(2) + "\n";
}

}  // namespace lpdmt
