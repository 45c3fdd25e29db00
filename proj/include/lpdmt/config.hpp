#pragma once

#include <optional>
#include <string>

#include "lpdmt/channel.hpp"
#include "lpdmt/gap.hpp"
#include "lpdmt/loader.hpp"

namespace lpdmt {

struct SweepSpec {
    double start_db = -80.0;
    double stop_db = -40.0;
    double step_db = 1.0;

    void validate() const;
    std::size_t points() const;
};

/// Full simulation configuration (sections: grid, channel, coding, loading,
/// sweep). channel_model is either a bundled model name or a file path.
struct SimConfig {
    FrequencyGrid grid;
    std::string channel_model = "zimmermann15";
    std::optional<ChannelModel> inline_channel;  // wins over channel_model when set
    std::size_t lc = 32;
    double psd_dbm_hz = -40.0;
    double noise_dbm_hz = -110.0;
    Strategy strategy = Strategy::adjacent;
    GapConfig coding;
    SweepSpec sweep;

    /// es = psd * spacing, n0 = noise psd * spacing (linear mW scale).
    LoadParams load_params() const;
    ChannelModel resolve_channel() const;
    void validate() const;
};

SimConfig default_config();

/// Load a config file; .json goes through the JSON parser, anything else
/// through the TOML reader. Unknown keys are rejected with the key name.
SimConfig load_config(const std::string& path);

/// Channel model file with keys a0, a1, k, v_p, paths = [{g, d}, ...].
ChannelModel load_channel_model(const std::string& path);

Strategy parse_strategy(const std::string& name);
std::string strategy_name(Strategy s);

}  // namespace lpdmt
