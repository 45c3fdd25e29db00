#pragma once

#include <vector>

namespace lpdmt {

/// Gaussian tail probability Q(x).
double q_function(double x);

/// Inverse of q_function on (0,1); safeguarded bisection + Newton,
/// converged to ~1e-12 in x.
double q_inverse(double p);

/// Normalized-SNR gap (linear) that a square-QAM constellation needs to hit
/// bit error probability p: (1/3) * Qinv(p/2)^2. Domain (0, 0.5).
double gap_at_ber(double p);

/// Coding / gap-table configuration. rs_t is derived from (rs_n - rs_k).
struct GapConfig {
    double target_ber = 1e-7;
    double gamma_m_db = 0.0;   // system margin
    double gamma_tc_db = 4.2;  // trellis coding gain
    int rs_n = 240;            // RS codeword bytes
    int rs_k = 224;            // RS payload bytes
    int b_min = 2;
    int b_max = 10;
    bool coded = true;

    int rs_t() const { return (rs_n - rs_k) / 2; }
    void validate() const;
};

/// Post-decoding bit error rate of a bounded-distance RS(n, n-2t) decoder fed
/// with independent bit errors at rate p_in: byte error rate 1-(1-p_in)^8,
/// binomial tail of >t byte errors per codeword, half the bits of a wrong
/// byte counted as errors.
double post_rs_ber(double p_in, int rs_n, int rs_t);

/// Demodulator output BER the RS decoder can accept while still delivering
/// cfg.target_ber, solved by bisection on (target_ber, 0.5). rs_t = 0 is a
/// passthrough (returns target_ber).
double rs_input_ber(const GapConfig& cfg);

/// RS coding gain in dB: gap(target_ber) - gap(rs_input_ber).
double gamma_rs_db(const GapConfig& cfg);

/// Rate-expansion penalty in dB for carrying b payload bits through a
/// rate-k/n code, under the (2^b - 1) QAM energy law.
double gamma_loss_db(double b, const GapConfig& cfg);

/// Per-modulation-order SNR gaps for the loading loop.
struct GapTable {
    int b_min = 2;
    int b_max = 10;
    std::vector<double> gamma_db;      // index b - b_min
    std::vector<double> gamma_linear;  // 10^(db/10)
    double gamma_init_linear = 1.0;    // starting gap for the rate estimate

    double db(int b) const;
    double linear(int b) const;
};

/// Coded mode: gamma_db[b] = 9.8 + gamma_m - (gamma_tc + gamma_rs - gamma_loss(b)).
/// Uncoded mode: constant gap_at_ber(target_ber) in dB plus the margin.
GapTable build_gap_table(const GapConfig& cfg);

}  // namespace lpdmt
