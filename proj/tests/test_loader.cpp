#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <doctest.h>

#include "lpdmt/loader.hpp"

using namespace lpdmt;

namespace {

GapTable uniform_table(double gamma_db, int b_min = 2, int b_max = 10) {
    GapTable t;
    t.b_min = b_min;
    t.b_max = b_max;
    for (int b = b_min; b <= b_max; ++b) {
        t.gamma_db.push_back(gamma_db);
        t.gamma_linear.push_back(std::pow(10.0, gamma_db / 10.0));
    }
    return t;
}

GapTable default_coded_table() { return build_gap_table(GapConfig{}); }

LoadParams params_for(std::size_t lc, double es, double n0 = 1.0, int b_min = 2, int b_max = 10) {
    LoadParams p;
    p.lc = lc;
    p.es = es;
    p.n0 = n0;
    p.b_min = b_min;
    p.b_max = b_max;
    return p;
}

// reference per-tone loader for the lc = 1 equivalence property: same
// clamp/add/remove rule applied directly to log2(1 + g*es/(gamma_b*n0))
long per_tone_reference(double gain, const GapTable& table, const LoadParams& params) {
    if (gain <= 0.0) return 0;
    const double r = std::log2(1.0 + gain * params.es / (table.gamma_init_linear * params.n0));
    int b = std::clamp(static_cast<int>(std::floor(r)), 0, params.b_max);
    if (b < params.b_min) b = 0;
    auto energy = [&](int bits) {
        return bits == 0 ? 0.0 : (std::exp2(bits) - 1.0) * table.linear(bits) * params.n0 / gain;
    };
    while (energy(b) <= params.es && b < params.b_max) b = b == 0 ? params.b_min : b + 1;
    while (energy(b) > params.es && b > 0) b = b == params.b_min ? 0 : b - 1;
    return b;
}

}  // namespace

TEST_SUITE("loader") {

TEST_CASE("partition splits adjacent and interleaved as documented") {
    const auto adj = partition(4, 2, Strategy::adjacent);
    REQUIRE(adj.subsets.size() == 2);
    CHECK(adj.subsets[0] == std::vector<std::size_t>{0, 1});
    CHECK(adj.subsets[1] == std::vector<std::size_t>{2, 3});

    const auto il = partition(4, 2, Strategy::interleaved);
    REQUIRE(il.subsets.size() == 2);
    CHECK(il.subsets[0] == std::vector<std::size_t>{0, 2});
    CHECK(il.subsets[1] == std::vector<std::size_t>{1, 3});
}

TEST_CASE("partition of the default grid gives 32 disjoint full subsets") {
    const auto plan = partition(1024, 32, Strategy::adjacent);
    CHECK(plan.subsets.size() == 32);
    std::vector<bool> seen(1024, false);
    for (const auto& s : plan.subsets) {
        CHECK(s.size() == 32);
        for (auto idx : s) {
            CHECK(!seen[idx]);
            seen[idx] = true;
        }
    }
    CHECK(std::count(seen.begin(), seen.end(), true) == 1024);
}

TEST_CASE("leftover subcarriers stay unassigned") {
    const auto plan = partition(10, 3, Strategy::adjacent);
    CHECK(plan.subsets.size() == 3);
    std::size_t covered = 0;
    for (const auto& s : plan.subsets) covered += s.size();
    CHECK(covered == 9);

    const auto il = partition(10, 3, Strategy::interleaved);
    std::vector<bool> seen(10, false);
    for (const auto& s : il.subsets)
        for (auto idx : s) {
            CHECK(idx < 10);
            CHECK(!seen[idx]);
            seen[idx] = true;
        }
}

TEST_CASE("partition rejects lc larger than the grid") {
    CHECK_THROWS_AS(partition(4, 8, Strategy::adjacent), std::invalid_argument);
}

TEST_CASE("continuous rate closed forms") {
    LoadParams p = params_for(4, 2.0);
    // equal gains: harmonic mean collapses to the gain itself
    const std::vector<double> flat{0.5, 0.5, 0.5, 0.5};
    CHECK(continuous_rate(flat, 2.0, p) ==
          doctest::Approx(4.0 * std::log2(1.0 + 0.5 * 2.0 / 2.0)).epsilon(1e-12));

    // single tone reduces to the per-tone formula
    LoadParams p1 = params_for(1, 3.0);
    const std::vector<double> one{0.25};
    CHECK(continuous_rate(one, 1.5, p1) ==
          doctest::Approx(std::log2(1.0 + 0.25 * 3.0 / 1.5)).epsilon(1e-12));

    // worked two-tone example: harmonic term 2/(1+3) = 0.5
    LoadParams p2 = params_for(2, 2.0);
    const std::vector<double> pair{1.0, 1.0 / 3.0};
    CHECK(continuous_rate(pair, 1.0, p2) == doctest::Approx(2.0).epsilon(1e-12));

    // a dead tone zeroes the subset
    const std::vector<double> dead{1.0, 0.0};
    CHECK(continuous_rate(dead, 1.0, p2) == 0.0);
}

TEST_CASE("initial bit split follows the closed form") {
    {
        const auto [bits, n_c] = initial_bits(12.0, 4);
        CHECK(n_c == 0);
        CHECK(bits == std::vector<int>{3, 3, 3, 3});
    }
    {
        const auto [bits, n_c] = initial_bits(10.0, 4);
        CHECK(n_c == 1);
        CHECK(bits == std::vector<int>{3, 2, 2, 2});
        CHECK(std::accumulate(bits.begin(), bits.end(), 0) == 9);
    }
}

TEST_CASE("discrete rate formula equals the sum of the split vector") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> rate(0.0, 80.0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t lc = 1 + rng() % 8;
        const double r_k = rate(rng);
        const auto [bits, n_c] = initial_bits(r_k, lc);
        const double base = std::floor(r_k / static_cast<double>(lc));
        const double closed_form =
            static_cast<double>(n_c) * (base + 1.0) + static_cast<double>(lc - n_c) * base;
        CHECK(std::accumulate(bits.begin(), bits.end(), 0) == doctest::Approx(closed_form));
    }
}

TEST_CASE("sequence energy closed forms") {
    LoadParams p1 = params_for(1, 10.0);
    const std::vector<double> unit{1.0};
    CHECK(sequence_energy(0, 1.0, unit, p1) == 0.0);
    CHECK(sequence_energy(2, 1.0, unit, p1) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sequence_energy(2, 2.0, unit, p1) == doctest::Approx(6.0).epsilon(1e-12));

    LoadParams p4 = params_for(4, 10.0, 0.5);
    const std::vector<double> gains{0.5, 0.25, 1.0, 0.125};
    const double inv_sum = 2.0 + 4.0 + 1.0 + 8.0;
    CHECK(sequence_energy(3, 1.7, gains, p4) ==
          doctest::Approx(7.0 * (1.7 / 16.0) * 0.5 * inv_sum).epsilon(1e-12));
}

TEST_CASE("zero budget loads nothing") {
    const GapTable table = default_coded_table();
    LoadParams p = params_for(4, 0.0);
    const std::vector<double> gains{1.0, 0.5, 0.25, 0.125};
    const auto alloc = allocate_subset(gains, table, p);
    CHECK(alloc.r_discrete == 0);
    CHECK(alloc.total_energy() == 0.0);
    CHECK(std::all_of(alloc.bits.begin(), alloc.bits.end(), [](int b) { return b == 0; }));
}

TEST_CASE("a zero-gain tone marks the subset unusable") {
    const GapTable table = default_coded_table();
    LoadParams p = params_for(3, 5.0);
    const std::vector<double> gains{1.0, 0.0, 0.5};
    const auto alloc = allocate_subset(gains, table, p);
    CHECK_FALSE(alloc.usable);
    CHECK(alloc.r_discrete == 0);
    CHECK(alloc.total_energy() == 0.0);
}

TEST_CASE("allocation never exceeds the budget and respects clamps") {
    const GapTable table = default_coded_table();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> gain_db(-80.0, -20.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t lc = 1 + rng() % 8;
        LoadParams p = params_for(lc, 1.9043e-4 * std::pow(10.0, (rng() % 40) / 10.0), 1.9043e-11);
        std::vector<double> gains(lc);
        for (auto& g : gains) g = std::pow(10.0, gain_db(rng) / 10.0);
        const auto alloc = allocate_subset(gains, table, p);
        CHECK(alloc.total_energy() <= p.es * (1.0 + 1e-12));
        long sum = 0;
        for (int b : alloc.bits) {
            CHECK((b == 0 || (b >= p.b_min && b <= p.b_max)));
            sum += b;
        }
        CHECK(sum == alloc.r_discrete);
        // b = 0 exactly when the sequence carries no energy
        for (std::size_t i = 0; i < lc; ++i)
            CHECK((alloc.bits[i] == 0) == (alloc.energies[i] == 0.0));
    }
}

TEST_CASE("flat single-tone loading lands on the saturating modulation order") {
    // uncoded constant gap, lc = 1: the result is the largest clamped b whose
    // energy (2^b - 1) * gamma * n0 / g stays under the budget
    GapConfig cfg;
    cfg.coded = false;
    const GapTable table = build_gap_table(cfg);
    LoadParams p = params_for(1, 1.9043e-4, 1.9043e-11);
    const double gamma = table.linear(2);
    for (double gain_db = -75.0; gain_db <= -25.0; gain_db += 0.7) {
        const double g = std::pow(10.0, gain_db / 10.0);
        const std::vector<double> gains{g};
        const auto alloc = allocate_subset(gains, table, p);
        int expected = 0;
        for (int b = p.b_min; b <= p.b_max; ++b)
            if ((std::exp2(b) - 1.0) * gamma * p.n0 / g <= p.es) expected = b;
        CHECK(alloc.r_discrete == expected);
    }
}

TEST_CASE("scaling es and n0 together keeps bits and scales energies") {
    const GapTable table = default_coded_table();
    const std::vector<double> gains{3e-5, 1e-4, 6e-6, 2e-5};
    LoadParams p = params_for(4, 1.9043e-4, 1.9043e-11);
    const auto base = allocate_subset(gains, table, p);

    LoadParams scaled = p;
    scaled.es *= 1000.0;
    scaled.n0 *= 1000.0;
    const auto big = allocate_subset(gains, table, scaled);
    CHECK(base.bits == big.bits);
    for (std::size_t i = 0; i < gains.size(); ++i)
        CHECK(big.energies[i] == doctest::Approx(1000.0 * base.energies[i]).epsilon(1e-9));
}

TEST_CASE("raising gains or budget never lowers the discrete rate") {
    const GapTable table = default_coded_table();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> gain_db(-70.0, -30.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t lc = 2 + rng() % 3;
        LoadParams p = params_for(lc, 1.9043e-4, 1.9043e-11);
        std::vector<double> gains(lc);
        for (auto& g : gains) g = std::pow(10.0, gain_db(rng) / 10.0);
        const auto base = allocate_subset(gains, table, p);

        std::vector<double> better = gains;
        for (auto& g : better) g *= 4.0;
        CHECK(allocate_subset(better, table, p).r_discrete >= base.r_discrete);

        LoadParams richer = p;
        richer.es *= 4.0;
        CHECK(allocate_subset(gains, table, richer).r_discrete >= base.r_discrete);
    }
}

TEST_CASE("a uniformly larger gap table never raises the rate") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> gain_db(-70.0, -30.0);
    const GapTable small = uniform_table(3.0);
    const GapTable large = uniform_table(9.8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t lc = 2 + rng() % 3;
        LoadParams p = params_for(lc, 1.9043e-4, 1.9043e-11);
        std::vector<double> gains(lc);
        for (auto& g : gains) g = std::pow(10.0, gain_db(rng) / 10.0);
        CHECK(allocate_subset(gains, large, p).r_discrete <=
              allocate_subset(gains, small, p).r_discrete);
    }
}

TEST_CASE("lc = 1 system equals an independent per-tone loader") {
    const GapTable table = default_coded_table();
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> gain_db(-75.0, -25.0);
    LoadParams p = params_for(1, 1.9043e-4, 1.9043e-11);

    ChannelResponse resp;
    resp.gains.resize(256);
    for (auto& g : resp.gains) g = std::pow(10.0, gain_db(rng) / 10.0);
    const auto plan = partition(resp.gains.size(), 1, Strategy::adjacent);
    const auto sys = allocate_system(resp, plan, table, p);

    long reference_total = 0;
    for (double g : resp.gains) reference_total += per_tone_reference(g, table, p);
    CHECK(sys.total_bits == reference_total);
}

TEST_CASE("identical subsets produce identical allocations") {
    const GapTable table = default_coded_table();
    LoadParams p = params_for(2, 1.9043e-4, 1.9043e-11);
    ChannelResponse resp;
    resp.gains = {2e-5, 4e-5, 2e-5, 4e-5};
    const auto plan = partition(4, 2, Strategy::adjacent);
    const auto sys = allocate_system(resp, plan, table, p);
    REQUIRE(sys.per_subset.size() == 2);
    CHECK(sys.per_subset[0].bits == sys.per_subset[1].bits);
    CHECK(sys.per_subset[0].energies == sys.per_subset[1].energies);
    CHECK(sys.total_bits == 2 * sys.per_subset[0].r_discrete);
}

TEST_CASE("per-subcarrier energy is the subset sum on every tone and obeys the ceiling") {
    const GapTable table = default_coded_table();
    LoadParams p = params_for(4, 1.9043e-4, 1.9043e-11);
    ChannelResponse resp;
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> gain_db(-60.0, -30.0);
    resp.gains.resize(16);
    for (auto& g : resp.gains) g = std::pow(10.0, gain_db(rng) / 10.0);
    const auto plan = partition(16, 4, Strategy::interleaved);
    const auto sys = allocate_system(resp, plan, table, p);
    for (std::size_t k = 0; k < plan.subsets.size(); ++k) {
        const double subset_sum = sys.per_subset[k].total_energy();
        CHECK(subset_sum <= p.es * (1.0 + 1e-12));
        for (auto idx : plan.subsets[k])
            CHECK(sys.per_subcarrier_energy[idx] == doctest::Approx(subset_sum).epsilon(1e-15));
    }
}

TEST_CASE("unusable subsets are flagged and skipped without failing the system") {
    const GapTable table = default_coded_table();
    LoadParams p = params_for(2, 1.9043e-4, 1.9043e-11);
    ChannelResponse resp;
    resp.gains = {2e-5, 0.0, 3e-5, 4e-5};
    const auto plan = partition(4, 2, Strategy::adjacent);
    const auto sys = allocate_system(resp, plan, table, p);
    CHECK_FALSE(sys.per_subset[0].usable);
    CHECK(sys.per_subset[0].r_discrete == 0);
    CHECK(sys.per_subset[1].usable);
    CHECK(sys.per_subset[1].r_discrete > 0);
}

TEST_CASE("parameter validation") {
    LoadParams p;
    p.lc = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = LoadParams{};
    p.es = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = LoadParams{};
    p.n0 = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    const GapTable table = default_coded_table();
    p = LoadParams{};
    p.lc = 3;
    p.es = 1.0;
    const std::vector<double> two{1.0, 1.0};
    CHECK_THROWS_AS(allocate_subset(two, table, p), std::invalid_argument);

    // table range must line up with the clamps
    p.lc = 2;
    p.b_max = 12;
    CHECK_THROWS_AS(allocate_subset(two, table, p), std::invalid_argument);
}

}  // TEST_SUITE
