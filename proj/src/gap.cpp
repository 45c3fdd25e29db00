#include "lpdmt/gap.hpp"

#include <cmath>
#include <stdexcept>

namespace lpdmt {

double q_function(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("q_function: x must be finite");
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

namespace {

double gaussian_pdf(double x) {
    static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * M_PI);
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

}  // namespace

double q_inverse(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("q_inverse: p must be in (0,1)");
    if (p > 0.5) return -q_inverse(1.0 - p);
    if (p == 0.5) return 0.0;

    // bracket [lo, hi] with Q(lo) > p > Q(hi)
    double lo = 0.0, hi = 1.0;
    while (q_function(hi) > p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e3) break;  // Q underflows long before this
    }

    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double fx = q_function(x) - p;
        if (fx > 0.0)
            lo = x;
        else
            hi = x;
        const double deriv = gaussian_pdf(x);
        double next = deriv > 0.0 ? x + fx / deriv : x;  // Q' = -pdf
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::fabs(next - x);
        x = next;
        if (step < 1e-13 * std::max(1.0, std::fabs(x))) break;
    }
    return x;
}

double gap_at_ber(double p) {
    if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("gap_at_ber: p must be in (0, 0.5)");
    const double x = q_inverse(p / 2.0);
    return x * x / 3.0;
}

void GapConfig::validate() const {
    if (!(target_ber > 0.0 && target_ber < 0.5))
        throw std::invalid_argument("coding.target_ber must be in (0, 0.5)");
    if (!std::isfinite(gamma_m_db)) throw std::invalid_argument("coding.gamma_m_db must be finite");
    if (!std::isfinite(gamma_tc_db)) throw std::invalid_argument("coding.gamma_tc_db must be finite");
    if (rs_n < 1 || rs_k < 1) throw std::invalid_argument("coding.rs_n/rs_k must be >= 1");
    if (rs_k > rs_n) throw std::invalid_argument("coding.rs_k must be <= rs_n");
    if (b_min < 1) throw std::invalid_argument("coding.b_min must be >= 1");
    if (b_max < b_min) throw std::invalid_argument("coding.b_max must be >= b_min");
}

double post_rs_ber(double p_in, int rs_n, int rs_t) {
    if (!(p_in > 0.0 && p_in < 1.0)) throw std::invalid_argument("post_rs_ber: p_in must be in (0,1)");
    if (rs_n < 1 || rs_t < 0 || rs_t > rs_n) throw std::invalid_argument("post_rs_ber: bad RS parameters");

    // byte error rate from iid bit errors, 1-(1-p)^8 evaluated stably
    const double ps = -std::expm1(8.0 * std::log1p(-p_in));
    if (ps >= 1.0) return 0.5;

    const double log_ps = std::log(ps);
    const double log_qs = std::log1p(-ps);
    const double n = static_cast<double>(rs_n);

    // mean fraction of wrong bytes after bounded-distance decoding:
    // (1/n) * sum_{j>t} j * C(n,j) ps^j (1-ps)^(n-j), terms in log space
    double acc = 0.0;
    for (int j = rs_t + 1; j <= rs_n; ++j) {
        const double log_c = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
        const double log_term = log_c + j * log_ps + (rs_n - j) * log_qs;
        if (log_term > -745.0) acc += j * std::exp(log_term);
    }
    return 0.5 * acc / n;
}

double rs_input_ber(const GapConfig& cfg) {
    cfg.validate();
    const int t = cfg.rs_t();
    if (t == 0) return cfg.target_ber;  // no correction: demodulator must deliver the target

    double lo = cfg.target_ber, hi = 0.5 - 1e-12;
    if (post_rs_ber(hi, cfg.rs_n, t) < cfg.target_ber)
        throw std::runtime_error("rs_input_ber: no solution in (target_ber, 0.5)");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (post_rs_ber(mid, cfg.rs_n, t) > cfg.target_ber)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double gamma_rs_db(const GapConfig& cfg) {
    const double gap_target = gap_at_ber(cfg.target_ber);
    const double gap_input = gap_at_ber(rs_input_ber(cfg));
    return 10.0 * std::log10(gap_target) - 10.0 * std::log10(gap_input);
}

double gamma_loss_db(double b, const GapConfig& cfg) {
    if (!(b >= 1.0)) throw std::invalid_argument("gamma_loss_db: b must be >= 1");
    const double rate = static_cast<double>(cfg.rs_n) / static_cast<double>(cfg.rs_k);
    return 10.0 * std::log10((std::exp2(b * rate) - 1.0) / (std::exp2(b) - 1.0));
}

double GapTable::db(int b) const {
    if (b < b_min || b > b_max) throw std::out_of_range("GapTable: modulation order outside table");
    return gamma_db[static_cast<std::size_t>(b - b_min)];
}

double GapTable::linear(int b) const {
    if (b < b_min || b > b_max) throw std::out_of_range("GapTable: modulation order outside table");
    return gamma_linear[static_cast<std::size_t>(b - b_min)];
}

GapTable build_gap_table(const GapConfig& cfg) {
    cfg.validate();
    GapTable table;
    table.b_min = cfg.b_min;
    table.b_max = cfg.b_max;
    table.gamma_init_linear = 1.0;

    const double uncoded_db = 10.0 * std::log10(gap_at_ber(cfg.target_ber)) + cfg.gamma_m_db;
    const double g_rs = cfg.coded ? gamma_rs_db(cfg) : 0.0;

    for (int b = cfg.b_min; b <= cfg.b_max; ++b) {
        double db;
        if (cfg.coded) {
            const double g_c = cfg.gamma_tc_db + g_rs - gamma_loss_db(b, cfg);
            db = 9.8 + cfg.gamma_m_db - g_c;
        } else {
            db = uncoded_db;
        }
        table.gamma_db.push_back(db);
        table.gamma_linear.push_back(std::pow(10.0, db / 10.0));
    }
    return table;
}

}  // namespace lpdmt
