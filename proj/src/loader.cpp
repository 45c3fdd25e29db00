#include "lpdmt/loader.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpdmt {

void LoadParams::validate() const {
    if (lc < 1) throw std::invalid_argument("loading.lc must be >= 1");
    if (!(es >= 0.0) || !std::isfinite(es)) throw std::invalid_argument("loading: es must be finite and >= 0");
    if (!(n0 > 0.0) || !std::isfinite(n0)) throw std::invalid_argument("loading: n0 must be finite and > 0");
    if (b_min < 1) throw std::invalid_argument("loading.b_min must be >= 1");
    if (b_max < b_min) throw std::invalid_argument("loading.b_max must be >= b_min");
}

SubsetPlan partition(std::size_t n_subcarriers, std::size_t lc, Strategy strategy) {
    if (lc < 1) throw std::invalid_argument("partition: lc must be >= 1");
    if (lc > n_subcarriers) throw std::invalid_argument("partition: lc exceeds subcarrier count");

    const std::size_t n_subsets = n_subcarriers / lc;
    SubsetPlan plan;
    plan.strategy = strategy;
    plan.subsets.resize(n_subsets);
    for (std::size_t k = 0; k < n_subsets; ++k) {
        plan.subsets[k].reserve(lc);
        for (std::size_t j = 0; j < lc; ++j) {
            const std::size_t idx = strategy == Strategy::adjacent ? k * lc + j : k + j * n_subsets;
            plan.subsets[k].push_back(idx);
        }
    }
    return plan;
}

namespace {

// sum of 1/|h_n|^2; +inf when a tone has zero gain
double inverse_gain_sum(std::span<const double> gains) {
    if (gains.empty()) throw std::invalid_argument("subset gains must be non-empty");
    double acc = 0.0;
    for (double g : gains) {
        if (g < 0.0) throw std::invalid_argument("subset gains must be >= 0");
        if (g == 0.0) return std::numeric_limits<double>::infinity();
        acc += 1.0 / g;
    }
    return acc;
}

}  // namespace

double continuous_rate(std::span<const double> gains, double gamma, const LoadParams& params) {
    if (!(gamma > 0.0)) throw std::invalid_argument("continuous_rate: gamma must be > 0");
    const double inv_sum = inverse_gain_sum(gains);
    if (std::isinf(inv_sum)) return 0.0;  // zero-gain tone: subset carries nothing
    const double lc = static_cast<double>(gains.size());
    const double harmonic = lc / inv_sum;
    return lc * std::log2(1.0 + (1.0 / gamma) * harmonic * (params.es / params.n0));
}

std::pair<std::vector<int>, std::size_t> initial_bits(double r_k, std::size_t lc) {
    if (!(r_k >= 0.0) || !std::isfinite(r_k))
        throw std::invalid_argument("initial_bits: rate must be finite and >= 0");
    if (lc < 1) throw std::invalid_argument("initial_bits: lc must be >= 1");
    const double per_seq = r_k / static_cast<double>(lc);
    const double base = std::floor(per_seq);
    const double frac = per_seq - base;
    const auto n_c = static_cast<std::size_t>(std::floor(static_cast<double>(lc) * (std::exp2(frac) - 1.0)));

    std::vector<int> bits(lc, static_cast<int>(base));
    for (std::size_t i = 0; i < n_c && i < lc; ++i) bits[i] = static_cast<int>(base) + 1;
    return {std::move(bits), n_c};
}

double sequence_energy(int b, double gamma, std::span<const double> gains, const LoadParams& params) {
    if (b < 0) throw std::invalid_argument("sequence_energy: b must be >= 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("sequence_energy: gamma must be > 0");
    if (b == 0) return 0.0;
    const double lc = static_cast<double>(params.lc);
    return (std::exp2(b) - 1.0) * (gamma / (lc * lc)) * params.n0 * inverse_gain_sum(gains);
}

SubsetAllocation allocate_subset(std::span<const double> gains, const GapTable& table,
                                 const LoadParams& params) {
    params.validate();
    if (gains.size() != params.lc)
        throw std::invalid_argument("allocate_subset: gains length must equal lc");
    if (table.b_min != params.b_min || table.b_max != params.b_max)
        throw std::invalid_argument("allocate_subset: gap table range does not match load params");

    const std::size_t lc = params.lc;
    SubsetAllocation alloc;
    alloc.bits.assign(lc, 0);
    alloc.energies.assign(lc, 0.0);

    const double inv_sum = inverse_gain_sum(gains);
    if (std::isinf(inv_sum)) {
        alloc.usable = false;  // a dead tone kills the whole spread subset
        return alloc;
    }

    alloc.r_continuous = continuous_rate(gains, table.gamma_init_linear, params);
    // rates above lc*(b_max+1) split into entries that all clamp to b_max
    const double r_cap = static_cast<double>(lc) * (static_cast<double>(params.b_max) + 1.0);
    auto [bits, n_c] = initial_bits(std::min(alloc.r_continuous, r_cap), lc);
    alloc.n_c = n_c;

    // clamp the raw split to {0} + [b_min, b_max]
    for (auto& b : bits) {
        if (b < params.b_min) b = 0;
        if (b > params.b_max) b = params.b_max;
    }

    const double unit = params.n0 * inv_sum / (static_cast<double>(lc) * static_cast<double>(lc));
    auto energy_of = [&](int b) {
        return b == 0 ? 0.0 : (std::exp2(b) - 1.0) * table.linear(b) * unit;
    };

    std::vector<double> energy(lc);
    for (std::size_t i = 0; i < lc; ++i) energy[i] = energy_of(bits[i]);
    auto total = [&] {
        double acc = 0.0;
        for (double e : energy) acc += e;
        return acc;
    };

    // add one bit at a time at a rotating index, first position n_c + 1
    std::vector<std::pair<std::size_t, int>> added;  // (index, previous bits)
    std::size_t pos = n_c % lc;
    while (total() <= params.es) {
        if (std::all_of(bits.begin(), bits.end(), [&](int b) { return b >= params.b_max; })) break;
        while (bits[pos] >= params.b_max) pos = (pos + 1) % lc;
        const int old = bits[pos];
        bits[pos] = old == 0 ? params.b_min : old + 1;
        energy[pos] = energy_of(bits[pos]);
        added.emplace_back(pos, old);
        pos = (pos + 1) % lc;
        if (total() > params.es) break;
    }

    // back out over-budget bits: undo the newest increments first, then walk
    // backwards from position n_c through the initial allocation
    std::size_t back = (n_c + lc - 1) % lc;
    while (total() > params.es) {
        if (!added.empty()) {
            auto [idx, old] = added.back();
            added.pop_back();
            bits[idx] = old;
            energy[idx] = energy_of(old);
        } else {
            while (bits[back] == 0) back = (back + lc - 1) % lc;
            const int old = bits[back];
            bits[back] = old <= params.b_min ? 0 : old - 1;
            energy[back] = energy_of(bits[back]);
            back = (back + lc - 1) % lc;
        }
    }

    alloc.bits = std::move(bits);
    alloc.energies = std::move(energy);
    alloc.r_discrete = 0;
    for (int b : alloc.bits) alloc.r_discrete += b;
    return alloc;
}

double SubsetAllocation::total_energy() const {
    double acc = 0.0;
    for (double e : energies) acc += e;
    return acc;
}

SystemAllocation allocate_system(const ChannelResponse& resp, const SubsetPlan& plan,
                                 const GapTable& table, const LoadParams& params) {
    SystemAllocation sys;
    sys.per_subcarrier_energy.assign(resp.gains.size(), 0.0);
    sys.per_subset.reserve(plan.subsets.size());

    std::vector<double> subset_gains(params.lc);
    for (const auto& subset : plan.subsets) {
        if (subset.size() != params.lc)
            throw std::invalid_argument("allocate_system: subset size does not match lc");
        for (std::size_t j = 0; j < subset.size(); ++j) {
            if (subset[j] >= resp.gains.size())
                throw std::invalid_argument("allocate_system: subset index outside response");
            subset_gains[j] = resp.gains[subset[j]];
        }
        SubsetAllocation alloc = allocate_subset(subset_gains, table, params);
        sys.total_bits += alloc.r_discrete;
        // every tone of the subset carries the summed sequence energies
        const double tone_energy = alloc.total_energy();
        for (std::size_t idx : subset) sys.per_subcarrier_energy[idx] = tone_energy;
        sys.per_subset.push_back(std::move(alloc));
    }
    return sys;
}

}  // namespace lpdmt
