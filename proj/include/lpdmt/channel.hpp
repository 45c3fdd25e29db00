#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lpdmt {

/// One propagation path of the multipath power-line channel model:
/// signed gain and cable length in meters (delay is length / velocity).
struct PathParams {
    double g = 0.0;
    double d = 0.0;  // meters, > 0
};

/// Multipath channel model H(f) = sum_i g_i * exp(-(a0 + a1*f^k)*d_i)
///                                      * exp(-j*2*pi*f*d_i/v_p).
struct ChannelModel {
    std::vector<PathParams> paths;
    double a0 = 0.0;     // attenuation offset, 1/m
    double a1 = 0.0;     // attenuation slope, s^k/m
    double k = 1.0;      // frequency exponent
    double v_p = 1.5e8;  // propagation velocity, m/s

    void validate() const;  // throws std::invalid_argument
};

/// Uniform subcarrier grid; subcarrier i (0-based) sits at f_start + i*spacing.
struct FrequencyGrid {
    double f_start_hz = 500e3;
    double spacing_hz = 19043.0;
    std::size_t n = 1024;

    double frequency(std::size_t i) const { return f_start_hz + static_cast<double>(i) * spacing_hz; }
    void validate() const;
};

/// Per-subcarrier power gains |h_n|^2, optionally with the underlying
/// complex response (same length when present).
struct ChannelResponse {
    std::vector<double> gains;
    std::vector<std::complex<double>> complex_response;
};

/// Evaluate the model on the grid. Gains are squared magnitudes of the
/// complex response; deterministic for identical inputs.
ChannelResponse frequency_response(const ChannelModel& model, const FrequencyGrid& grid);

/// Arithmetic mean of the power gains (linear).
double average_gain(const ChannelResponse& resp);
double average_gain_db(const ChannelResponse& resp);

/// Rescale all gains by one constant so the average gain hits the target;
/// spectral shape is untouched. Rejects all-zero responses.
ChannelResponse scale_to_gain(const ChannelResponse& resp, double target_g_db);

/// Bundled 15-path 110 m reference model (Zimmermann multipath parameters).
ChannelModel zimmermann15();

}  // namespace lpdmt
