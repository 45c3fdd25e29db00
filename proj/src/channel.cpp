#include "lpdmt/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace lpdmt {

void ChannelModel::validate() const {
    if (paths.empty()) throw std::invalid_argument("channel model: path list is empty");
    for (const auto& p : paths) {
        if (!std::isfinite(p.g) || !std::isfinite(p.d))
            throw std::invalid_argument("channel model: non-finite path parameter");
        if (p.g == 0.0) throw std::invalid_argument("channel model: path gain g must be nonzero");
        if (p.d <= 0.0) throw std::invalid_argument("channel model: path length d must be > 0");
    }
    if (!std::isfinite(a0) || !std::isfinite(a1) || !std::isfinite(k) || !std::isfinite(v_p))
        throw std::invalid_argument("channel model: non-finite attenuation parameter");
    if (a1 < 0.0) throw std::invalid_argument("channel model: a1 must be >= 0");
    if (k <= 0.0) throw std::invalid_argument("channel model: k must be > 0");
    if (v_p <= 0.0) throw std::invalid_argument("channel model: v_p must be > 0");
}

void FrequencyGrid::validate() const {
    if (!(spacing_hz > 0.0)) throw std::invalid_argument("grid: spacing must be > 0");
    if (n < 1) throw std::invalid_argument("grid: subcarrier count must be >= 1");
    if (!(f_start_hz >= 0.0)) throw std::invalid_argument("grid: f_start must be >= 0");
}

ChannelResponse frequency_response(const ChannelModel& model, const FrequencyGrid& grid) {
    model.validate();
    grid.validate();

    ChannelResponse resp;
    resp.gains.resize(grid.n);
    resp.complex_response.resize(grid.n);

    for (std::size_t i = 0; i < grid.n; ++i) {
        const double f = grid.frequency(i);
        std::complex<double> h{0.0, 0.0};
        for (const auto& p : model.paths) {
            const double att = std::exp(-(model.a0 + model.a1 * std::pow(f, model.k)) * p.d);
            const double phase = -2.0 * M_PI * f * (p.d / model.v_p);
            h += p.g * att * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        resp.complex_response[i] = h;
        resp.gains[i] = std::norm(h);
    }
    return resp;
}

double average_gain(const ChannelResponse& resp) {
    if (resp.gains.empty()) throw std::invalid_argument("average_gain: empty response");
    double acc = 0.0;
    for (double g : resp.gains) acc += g;
    return acc / static_cast<double>(resp.gains.size());
}

double average_gain_db(const ChannelResponse& resp) { return 10.0 * std::log10(average_gain(resp)); }

ChannelResponse scale_to_gain(const ChannelResponse& resp, double target_g_db) {
    const double g = average_gain(resp);
    if (!(g > 0.0)) throw std::invalid_argument("scale_to_gain: response has zero average gain");
    const double c = std::pow(10.0, target_g_db / 10.0) / g;

    ChannelResponse out;
    out.gains.reserve(resp.gains.size());
    for (double v : resp.gains) out.gains.push_back(v * c);
    if (!resp.complex_response.empty()) {
        const double amp = std::sqrt(c);
        out.complex_response.reserve(resp.complex_response.size());
        for (const auto& h : resp.complex_response) out.complex_response.push_back(h * amp);
    }
    return out;
}

ChannelModel zimmermann15() {
    ChannelModel m;
    m.a0 = 0.0;
    m.a1 = 2.5e-9;
    m.k = 1.0;
    m.v_p = 1.5e8;
    m.paths = {
        {0.029, 90.0},   {0.043, 102.0},  {0.103, 113.0},  {-0.058, 143.0}, {-0.045, 148.0},
        {-0.040, 200.0}, {0.038, 260.0},  {-0.038, 322.0}, {0.071, 411.0},  {-0.035, 490.0},
        {0.065, 567.0},  {-0.055, 740.0}, {0.042, 960.0},  {-0.059, 1130.0}, {0.049, 1250.0},
    };
    return m;
}

}  // namespace lpdmt
