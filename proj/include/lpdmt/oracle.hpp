#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "lpdmt/gap.hpp"
#include "lpdmt/loader.hpp"

namespace lpdmt {

/// Result of the exhaustive-search reference loader.
struct OracleResult {
    std::vector<int> best_bits;
    long best_rate = 0;
    double best_energy = 0.0;
    long ties = 0;  // distinct feasible vectors achieving best_rate
};

/// Enumerate every bit vector with entries in {0} + [b_min, b_max] and
/// return the maximum-rate vector whose summed energy fits the budget.
/// Ties broken by minimal energy, then lexicographically.
/// Restricted to lc <= 6 and b_max <= 6 to bound the search space.
OracleResult exhaustive_allocate(std::span<const double> gains, const GapTable& table,
                                 const LoadParams& params);

/// Constellation used by the Monte-Carlo check: square QAM for even b,
/// 4x2 rectangle for b = 3, corner-cut cross for odd b >= 5. Unit-average
/// energy is NOT applied; points sit on the odd-integer grid.
std::vector<std::complex<double>> qam_constellation(int b);

/// Measure the symbol error rate of 2^b-QAM over AWGN at
/// SNR = gap_linear * (2^b - 1), nearest-neighbor detection.
/// Bit-exact reproducible for a fixed seed and symbol count.
double qam_error_monte_carlo(int b, double gap_db, std::size_t symbols, std::uint64_t seed);

/// Test-instance gains: log-uniform over [-80, -20] dB, one draw per tone
/// in tone order.
std::vector<double> random_subset_gains(std::mt19937_64& rng, std::size_t lc);

}  // namespace lpdmt
