#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "lpdmt/channel.hpp"
#include "lpdmt/gap.hpp"

namespace lpdmt {

enum class Strategy { adjacent, interleaved };

/// Loading parameters. es is the per-subcarrier energy budget (PSD times
/// subcarrier spacing), n0 the noise energy on the same scale; only the
/// ratio es/n0 affects bit decisions.
struct LoadParams {
    std::size_t lc = 32;  // precoding sequences per subset
    double es = 0.0;
    double n0 = 1.0;
    int b_min = 2;
    int b_max = 10;

    void validate() const;
};

/// Disjoint subsets of subcarrier indices (0-based), each of size lc.
/// Leftover subcarriers (n mod lc) stay unassigned.
struct SubsetPlan {
    std::vector<std::vector<std::size_t>> subsets;
    Strategy strategy = Strategy::adjacent;
};

SubsetPlan partition(std::size_t n_subcarriers, std::size_t lc, Strategy strategy);

/// Bit/energy allocation of one subset.
struct SubsetAllocation {
    double r_continuous = 0.0;     // real-valued rate at the initial gap
    std::vector<int> bits;         // per sequence, 0 or in [b_min, b_max]
    std::vector<double> energies;  // per sequence, same length
    std::size_t n_c = 0;           // sequences holding the larger initial load
    long r_discrete = 0;           // sum of bits
    bool usable = true;            // false when a subset tone has zero gain

    double total_energy() const;
};

/// Whole-symbol allocation. Every tone of subset S_k carries the subset's
/// summed sequence energy (each sequence spreads over all lc tones and
/// contributes its e_i to every one of them).
struct SystemAllocation {
    std::vector<SubsetAllocation> per_subset;
    long total_bits = 0;
    std::vector<double> per_subcarrier_energy;  // length = grid size, 0 on unassigned tones
};

/// Continuous rate of one subset: lc * log2(1 + (1/gamma) * h * es/n0) with
/// h the harmonic mean of the subset gains. A zero gain makes the subset
/// unusable and yields 0.
double continuous_rate(std::span<const double> gains, double gamma, const LoadParams& params);

/// Split a real rate over lc sequences: n_c sequences get floor(r/lc)+1
/// bits, the rest floor(r/lc), with n_c = floor(lc*(2^frac - 1)).
/// Raw output, clamps not applied.
std::pair<std::vector<int>, std::size_t> initial_bits(double r_k, std::size_t lc);

/// Energy a b-bit sequence deposits on each subset tone:
/// (2^b - 1) * (gamma/lc^2) * n0 * sum(1/|h_n|^2); zero when b = 0.
double sequence_energy(int b, double gamma, std::span<const double> gains, const LoadParams& params);

/// Greedy discrete loading of one subset: rate estimate at the initial gap,
/// the closed-form bit split, clamping to {0} + [b_min, b_max], then add
/// one bit at a time at a rotating index while the summed energy stays
/// within es, undoing (and if needed removing initial bits) to restore
/// feasibility. Gains length must equal params.lc.
SubsetAllocation allocate_subset(std::span<const double> gains, const GapTable& table,
                                 const LoadParams& params);

/// allocate_subset over every subset of the plan, in subset order.
SystemAllocation allocate_system(const ChannelResponse& resp, const SubsetPlan& plan,
                                 const GapTable& table, const LoadParams& params);

}  // namespace lpdmt
