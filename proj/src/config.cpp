#include "lpdmt/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lpdmt/toml_lite.hpp"

namespace lpdmt {

using nlohmann::json;

void SweepSpec::validate() const {
    if (!std::isfinite(start_db) || !std::isfinite(stop_db))
        throw std::invalid_argument("sweep.start_db/stop_db must be finite");
    if (!(step_db > 0.0)) throw std::invalid_argument("sweep.step_db must be > 0");
    if (stop_db < start_db) throw std::invalid_argument("sweep.stop_db must be >= sweep.start_db");
}

std::size_t SweepSpec::points() const {
    validate();
    return static_cast<std::size_t>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
}

LoadParams SimConfig::load_params() const {
    LoadParams p;
    p.lc = lc;
    p.es = std::pow(10.0, psd_dbm_hz / 10.0) * grid.spacing_hz;
    p.n0 = std::pow(10.0, noise_dbm_hz / 10.0) * grid.spacing_hz;
    p.b_min = coding.b_min;
    p.b_max = coding.b_max;
    return p;
}

ChannelModel SimConfig::resolve_channel() const {
    if (inline_channel) return *inline_channel;
    if (channel_model == "zimmermann15") return zimmermann15();
    return load_channel_model(channel_model);
}

void SimConfig::validate() const {
    grid.validate();
    coding.validate();
    sweep.validate();
    if (lc < 1) throw std::invalid_argument("loading.lc must be >= 1");
    if (lc > grid.n) throw std::invalid_argument("loading.lc exceeds grid.n");
    if (!std::isfinite(psd_dbm_hz)) throw std::invalid_argument("loading.psd_dbm_hz must be finite");
    if (!std::isfinite(noise_dbm_hz)) throw std::invalid_argument("loading.noise_dbm_hz must be finite");
    if (channel_model.empty()) throw std::invalid_argument("channel.model must be non-empty");
}

SimConfig default_config() { return SimConfig{}; }

Strategy parse_strategy(const std::string& name) {
    if (name == "adjacent") return Strategy::adjacent;
    if (name == "interleaved") return Strategy::interleaved;
    throw std::invalid_argument("loading.strategy must be 'adjacent' or 'interleaved', got '" + name + "'");
}

std::string strategy_name(Strategy s) {
    return s == Strategy::adjacent ? "adjacent" : "interleaved";
}

namespace {

json read_structured_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    if (is_json) {
        try {
            return json::parse(buf.str());
        } catch (const json::parse_error& e) {
            throw std::runtime_error("cannot parse " + path + ": " + e.what());
        }
    }
    try {
        return parse_toml_lite(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error("cannot parse " + path + ": " + e.what());
    }
}

double as_number(const json& v, const std::string& field) {
    if (!v.is_number()) throw std::invalid_argument("config field " + field + " must be a number");
    return v.get<double>();
}

long as_integer(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw std::invalid_argument("config field " + field + " must be an integer");
    return v.get<long>();
}

void check_keys(const json& obj, const std::string& section, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.count(key))
            throw std::invalid_argument("unknown config key '" + section + (section.empty() ? "" : ".") +
                                        key + "'");
    }
}

ChannelModel channel_model_from_json(const json& obj, const std::string& section) {
    check_keys(obj, section, {"a0", "a1", "k", "v_p", "paths"});
    ChannelModel m;
    m.v_p = 1.5e8;
    if (obj.contains("a0")) m.a0 = as_number(obj["a0"], section + ".a0");
    if (obj.contains("a1")) m.a1 = as_number(obj["a1"], section + ".a1");
    if (obj.contains("k")) m.k = as_number(obj["k"], section + ".k");
    if (obj.contains("v_p")) m.v_p = as_number(obj["v_p"], section + ".v_p");
    if (!obj.contains("paths") || !obj["paths"].is_array())
        throw std::invalid_argument("config field " + section + ".paths must be an array of {g, d}");
    for (const auto& entry : obj["paths"]) {
        if (!entry.is_object() || !entry.contains("g") || !entry.contains("d"))
            throw std::invalid_argument("config field " + section + ".paths entries must be {g, d}");
        check_keys(entry, section + ".paths[]", {"g", "d"});
        m.paths.push_back({as_number(entry["g"], section + ".paths[].g"),
                           as_number(entry["d"], section + ".paths[].d")});
    }
    m.validate();
    return m;
}

}  // namespace

ChannelModel load_channel_model(const std::string& path) {
    return channel_model_from_json(read_structured_file(path), "");
}

SimConfig load_config(const std::string& path) {
    const json root = read_structured_file(path);
    if (!root.is_object()) throw std::invalid_argument("config root must be a table/object");
    check_keys(root, "", {"grid", "channel", "coding", "loading", "sweep"});

    SimConfig cfg;

    if (root.contains("grid")) {
        const auto& g = root["grid"];
        check_keys(g, "grid", {"f_start_hz", "spacing_hz", "n"});
        if (g.contains("f_start_hz")) cfg.grid.f_start_hz = as_number(g["f_start_hz"], "grid.f_start_hz");
        if (g.contains("spacing_hz")) cfg.grid.spacing_hz = as_number(g["spacing_hz"], "grid.spacing_hz");
        if (g.contains("n")) cfg.grid.n = static_cast<std::size_t>(as_integer(g["n"], "grid.n"));
    }

    if (root.contains("channel")) {
        const auto& ch = root["channel"];
        if (ch.contains("paths")) {
            cfg.inline_channel = channel_model_from_json(ch, "channel");
        } else {
            check_keys(ch, "channel", {"model", "file"});
            if (ch.contains("model")) cfg.channel_model = ch["model"].get<std::string>();
            if (ch.contains("file")) cfg.channel_model = ch["file"].get<std::string>();
        }
    }

    if (root.contains("coding")) {
        const auto& c = root["coding"];
        check_keys(c, "coding",
                   {"target_ber", "gamma_m_db", "gamma_tc_db", "rs_n", "rs_k", "b_min", "b_max", "coded"});
        if (c.contains("target_ber")) cfg.coding.target_ber = as_number(c["target_ber"], "coding.target_ber");
        if (c.contains("gamma_m_db")) cfg.coding.gamma_m_db = as_number(c["gamma_m_db"], "coding.gamma_m_db");
        if (c.contains("gamma_tc_db"))
            cfg.coding.gamma_tc_db = as_number(c["gamma_tc_db"], "coding.gamma_tc_db");
        if (c.contains("rs_n")) cfg.coding.rs_n = static_cast<int>(as_integer(c["rs_n"], "coding.rs_n"));
        if (c.contains("rs_k")) cfg.coding.rs_k = static_cast<int>(as_integer(c["rs_k"], "coding.rs_k"));
        if (c.contains("b_min")) cfg.coding.b_min = static_cast<int>(as_integer(c["b_min"], "coding.b_min"));
        if (c.contains("b_max")) cfg.coding.b_max = static_cast<int>(as_integer(c["b_max"], "coding.b_max"));
        if (c.contains("coded")) {
            if (!c["coded"].is_boolean()) throw std::invalid_argument("config field coding.coded must be a boolean");
            cfg.coding.coded = c["coded"].get<bool>();
        }
    }

    if (root.contains("loading")) {
        const auto& l = root["loading"];
        check_keys(l, "loading", {"lc", "psd_dbm_hz", "noise_dbm_hz", "strategy"});
        if (l.contains("lc")) cfg.lc = static_cast<std::size_t>(as_integer(l["lc"], "loading.lc"));
        if (l.contains("psd_dbm_hz")) cfg.psd_dbm_hz = as_number(l["psd_dbm_hz"], "loading.psd_dbm_hz");
        if (l.contains("noise_dbm_hz"))
            cfg.noise_dbm_hz = as_number(l["noise_dbm_hz"], "loading.noise_dbm_hz");
        if (l.contains("strategy")) cfg.strategy = parse_strategy(l["strategy"].get<std::string>());
    }

    if (root.contains("sweep")) {
        const auto& s = root["sweep"];
        check_keys(s, "sweep", {"start_db", "stop_db", "step_db"});
        if (s.contains("start_db")) cfg.sweep.start_db = as_number(s["start_db"], "sweep.start_db");
        if (s.contains("stop_db")) cfg.sweep.stop_db = as_number(s["stop_db"], "sweep.stop_db");
        if (s.contains("step_db")) cfg.sweep.step_db = as_number(s["step_db"], "sweep.step_db");
    }

    cfg.validate();
    return cfg;
}

}  // namespace lpdmt
