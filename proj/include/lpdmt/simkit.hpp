#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lpdmt/config.hpp"
#include "lpdmt/loader.hpp"

namespace lpdmt {

/// One gain point of the four-way comparison sweep.
struct SweepRow {
    double target_g_db = 0.0;
    double snr_db = 0.0;  // psd_dbm_hz + target_g_db - noise_dbm_hz
    long bits_coded_lpdmt = 0;
    long bits_uncoded_lpdmt = 0;
    long bits_coded_dmt = 0;
    long bits_uncoded_dmt = 0;
    double pct_vs_uncoded_lpdmt = 0.0;  // 100*(coded_lp - uncoded_lp)/uncoded_lp
    double pct_vs_coded_dmt = 0.0;      // 100*(coded_lp - coded_dmt)/coded_dmt
};

struct SweepResult {
    std::vector<SweepRow> rows;
    double reference_g_db = 0.0;  // average gain of the unscaled channel
};

/// Scale the reference channel to each target gain and load all four
/// system variants (coded/uncoded x lpdmt/dmt). Deterministic.
SweepResult run_sweep(const SimConfig& cfg);

struct EnergyProfileRow {
    std::size_t n = 0;  // 1-based subcarrier index
    double f_hz = 0.0;
    double energy = 0.0;
    double ceiling = 0.0;  // per-subcarrier budget es
};

/// Per-subcarrier allocated energy on the unscaled reference channel.
std::vector<EnergyProfileRow> energy_profile(const SimConfig& cfg, bool lpdmt, bool coded);

// CSV / JSON emission. All writers are deterministic: identical inputs
// produce byte-identical output.
void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_pct_csv(std::ostream& out, const SweepResult& result);  // gain + pct columns only
void write_energy_profile_csv(std::ostream& out, const std::vector<EnergyProfileRow>& rows);
void write_gap_table_csv(std::ostream& out, const GapConfig& cfg);
void write_response_csv(std::ostream& out, const ChannelResponse& resp, const FrequencyGrid& grid);
void write_allocation_csv(std::ostream& out, const SystemAllocation& alloc, const SubsetPlan& plan,
                          const FrequencyGrid& grid);
std::string allocation_json(const SystemAllocation& alloc, const SubsetPlan& plan);
std::string sweep_json(const SweepResult& result);

/// Fixed-format double used by every writer ("%.10g", "nan"/"inf" spelled out).
std::string format_double(double v);

}  // namespace lpdmt
