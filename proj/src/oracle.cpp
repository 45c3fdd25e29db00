#include "lpdmt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpdmt {

OracleResult exhaustive_allocate(std::span<const double> gains, const GapTable& table,
                                 const LoadParams& params) {
    params.validate();
    if (gains.size() != params.lc)
        throw std::invalid_argument("exhaustive_allocate: gains length must equal lc");
    if (params.lc > 6 || params.b_max > 6)
        throw std::invalid_argument("exhaustive_allocate: search space capped at lc <= 6, b_max <= 6");
    if (table.b_min != params.b_min || table.b_max != params.b_max)
        throw std::invalid_argument("exhaustive_allocate: gap table range does not match load params");

    const std::size_t lc = params.lc;
    double inv_sum = 0.0;
    bool usable = true;
    for (double g : gains) {
        if (g < 0.0) throw std::invalid_argument("exhaustive_allocate: gains must be >= 0");
        if (g == 0.0) {
            usable = false;
            break;
        }
        inv_sum += 1.0 / g;
    }

    OracleResult best;
    best.best_bits.assign(lc, 0);
    best.ties = 1;  // the all-zero vector
    if (!usable) return best;

    // candidate loads and their per-sequence energies
    std::vector<int> values{0};
    for (int b = params.b_min; b <= params.b_max; ++b) values.push_back(b);
    const double unit = params.n0 * inv_sum / (static_cast<double>(lc) * static_cast<double>(lc));
    std::vector<double> energy_of(values.size());
    for (std::size_t v = 0; v < values.size(); ++v)
        energy_of[v] = values[v] == 0 ? 0.0 : (std::exp2(values[v]) - 1.0) * table.linear(values[v]) * unit;

    std::vector<std::size_t> idx(lc, 0);  // odometer over value indices
    std::vector<int> bits(lc, 0);
    best.best_rate = 0;
    best.best_energy = 0.0;

    for (;;) {
        long rate = 0;
        double energy = 0.0;
        for (std::size_t i = 0; i < lc; ++i) {
            rate += values[idx[i]];
            energy += energy_of[idx[i]];
        }
        if (energy <= params.es) {
            for (std::size_t i = 0; i < lc; ++i) bits[i] = values[idx[i]];
            if (rate > best.best_rate) {
                best.best_rate = rate;
                best.best_energy = energy;
                best.best_bits = bits;
                best.ties = 1;
            } else if (rate == best.best_rate && rate > 0) {
                best.ties += 1;
                if (energy < best.best_energy ||
                    (energy == best.best_energy && bits < best.best_bits)) {
                    best.best_energy = energy;
                    best.best_bits = bits;
                }
            }
        }
        // advance odometer, last position fastest
        std::size_t i = lc;
        while (i > 0) {
            --i;
            if (++idx[i] < values.size()) break;
            idx[i] = 0;
            if (i == 0) return best;
        }
    }
}

std::vector<std::complex<double>> qam_constellation(int b) {
    if (b < 2 || b > 10) throw std::invalid_argument("qam_constellation: b must be in [2, 10]");

    std::vector<std::complex<double>> points;
    if (b % 2 == 0) {
        const int m = 1 << (b / 2);  // levels per dimension
        for (int ix = 0; ix < m; ++ix)
            for (int iy = 0; iy < m; ++iy)
                points.emplace_back(2 * ix - (m - 1), 2 * iy - (m - 1));
    } else if (b == 3) {
        // 4x2 rectangle
        for (int ix = 0; ix < 4; ++ix)
            for (int iy = 0; iy < 2; ++iy) points.emplace_back(2 * ix - 3, 2 * iy - 1);
    } else {
        // cross: w x w grid minus s x s corner blocks, w = 3*2^((b-3)/2)
        const int w = 3 * (1 << ((b - 3) / 2));
        const int s = 1 << ((b - 5) / 2);
        for (int ix = 0; ix < w; ++ix) {
            for (int iy = 0; iy < w; ++iy) {
                const bool corner_x = ix < s || ix >= w - s;
                const bool corner_y = iy < s || iy >= w - s;
                if (corner_x && corner_y) continue;
                points.emplace_back(2 * ix - (w - 1), 2 * iy - (w - 1));
            }
        }
    }
    return points;
}

namespace {

// uniform in [0,1) straight off the engine bits, platform-independent
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Slicer {
    std::vector<std::complex<double>> points;
    // grid -> point index lookup; -1 marks holes (cut corners)
    std::vector<int> grid_index;
    int wx = 0, wy = 0;  // levels per dimension of the bounding grid

    explicit Slicer(int b) : points(qam_constellation(b)) {
        double max_x = 0.0, max_y = 0.0;
        for (const auto& p : points) {
            max_x = std::max(max_x, std::abs(p.real()));
            max_y = std::max(max_y, std::abs(p.imag()));
        }
        wx = static_cast<int>(max_x) / 2 + 1;
        wy = static_cast<int>(max_y) / 2 + 1;
        grid_index.assign(static_cast<std::size_t>(4) * wx * wy, -1);
        for (std::size_t i = 0; i < points.size(); ++i)
            grid_index[cell(points[i].real(), points[i].imag())] = static_cast<int>(i);
    }

    std::size_t cell(double lx, double ly) const {
        const int cx = static_cast<int>((lx + (2 * wx - 1)) / 2);
        const int cy = static_cast<int>((ly + (2 * wy - 1)) / 2);
        return static_cast<std::size_t>(cx) * (2 * wy) + static_cast<std::size_t>(cy);
    }

    static double slice_level(double v, int levels) {
        // nearest value in {-(levels-1), ..., -1, 1, ..., levels-1} step 2
        double t = std::round((v + (levels - 1)) / 2.0);
        t = std::clamp(t, 0.0, static_cast<double>(levels - 1));
        return 2.0 * t - (levels - 1);
    }

    int detect(std::complex<double> y) const {
        const double lx = slice_level(y.real(), 2 * wx);
        const double ly = slice_level(y.imag(), 2 * wy);
        const int hit = grid_index[cell(lx, ly)];
        if (hit >= 0) return hit;
        // sliced into a cut corner: exact nearest-point scan (rare)
        int arg = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double d = std::norm(y - points[i]);
            if (d < best) {
                best = d;
                arg = static_cast<int>(i);
            }
        }
        return arg;
    }
};

}  // namespace

double qam_error_monte_carlo(int b, double gap_db, std::size_t symbols, std::uint64_t seed) {
    if (b < 2 || b > 10) throw std::invalid_argument("qam_error_monte_carlo: b must be in [2, 10]");
    if (symbols == 0) throw std::invalid_argument("qam_error_monte_carlo: symbols must be > 0");

    const Slicer slicer(b);
    const auto& points = slicer.points;
    const std::size_t m = points.size();

    double avg_energy = 0.0;
    for (const auto& p : points) avg_energy += std::norm(p);
    avg_energy /= static_cast<double>(m);

    // operating point implied by the gap: SNR = gamma * (2^b - 1)
    const double snr = std::pow(10.0, gap_db / 10.0) * (std::exp2(b) - 1.0);
    const double noise_per_dim = std::sqrt(avg_energy / snr / 2.0);

    std::mt19937_64 rng(seed);
    std::size_t errors = 0;
    for (std::size_t s = 0; s < symbols; ++s) {
        const auto tx = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(m));
        const std::size_t tx_idx = std::min(tx, m - 1);
        // one Box-Muller pair per symbol
        const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const std::complex<double> noise(r * std::cos(2.0 * M_PI * u2) * noise_per_dim,
                                         r * std::sin(2.0 * M_PI * u2) * noise_per_dim);
        if (slicer.detect(points[tx_idx] + noise) != static_cast<int>(tx_idx)) ++errors;
    }
    return static_cast<double>(errors) / static_cast<double>(symbols);
}

std::vector<double> random_subset_gains(std::mt19937_64& rng, std::size_t lc) {
    std::vector<double> gains(lc);
    for (auto& g : gains) {
        const double db = -80.0 + 60.0 * uniform01(rng);
        g = std::pow(10.0, db / 10.0);
    }
    return gains;
}

}  // namespace lpdmt
