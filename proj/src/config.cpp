#include "quadent/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace quadent {

namespace {

using nlohmann::json;

// Walks one JSON object, remembering which keys were consumed so leftovers
// can be reported.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        }
    }

    [[nodiscard]] std::string key_path(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    const json* find(const std::string& key) {
        seen_.insert(key);
        const auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) {
                throw ConfigError(key_path(key), "expected a number");
            }
            out = v->get<double>();
        }
    }

    void integer(const std::string& key, int& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) {
                throw ConfigError(key_path(key), "expected an integer");
            }
            out = v->get<int>();
        }
    }

    void unsigned64(const std::string& key, std::uint64_t& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
                throw ConfigError(key_path(key), "expected a non-negative integer");
            }
            out = v->get<std::uint64_t>();
        }
    }

    std::optional<Section> child(const std::string& key) {
        if (const json* v = find(key)) {
            return Section(*v, key_path(key));
        }
        return std::nullopt;
    }

    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.contains(key)) {
                throw ConfigError(key_path(key), "unknown key");
            }
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

// Runs a module's own validate(), reattributing its message to a config key.
template <typename F>
void check(const std::string& key, F&& validate) {
    try {
        validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key, e.what());
    }
}

}  // namespace

SqueezerSpec RunConfig::resolved_source() const {
    if (source) {
        check("source", [&] { source->validate(); });
        return *source;
    }
    CalibrationTargets t = calibration;
    t.eta = efficiency;
    try {
        return calibrate_source(t);
    } catch (const InfeasibleError& e) {
        throw ConfigError("source.calibration", e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError("source.calibration", e.what());
    }
}

std::vector<double> RunConfig::loss_points() const {
    const AxisRange axis{loss_grid.start, loss_grid.stop, loss_grid.points};
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(loss_grid.points));
    for (int i = 0; i < loss_grid.points; ++i) {
        out.push_back(axis.at(i));
    }
    return out;
}

RunConfig parse_config(const nlohmann::json& doc) {
    RunConfig cfg;
    Section root(doc, "");

    if (auto src = root.child("source")) {
        if (src->has("calibration")) {
            auto cal = src->child("calibration");
            cal->number("duan_target", cfg.calibration.duan_target);
            cal->number("epr_target", cfg.calibration.epr_target);
            cal->finish();
            if (src->has("squeezed_variance") || src->has("anti_variance")) {
                throw ConfigError("source", "give either calibration or explicit variances, not both");
            }
        } else {
            if (!src->has("squeezed_variance")) {
                throw ConfigError("source.squeezed_variance", "required for an explicit source");
            }
            SqueezerSpec spec{};
            src->number("squeezed_variance", spec.squeezed);
            spec.anti = 1.0 / spec.squeezed;
            src->number("anti_variance", spec.anti);
            cfg.source = spec;
        }
        src->finish();
    }

    root.number("efficiency", cfg.efficiency);

    if (auto sp = root.child("spectrum")) {
        sp->number("s0", cfg.spectrum.s0);
        sp->number("f_opa_hz", cfg.spectrum.f_opa);
        sp->number("relax_amp", cfg.spectrum.relax_amp);
        sp->number("f_relax_hz", cfg.spectrum.f_relax);
        sp->number("relax_width_hz", cfg.spectrum.relax_width);
        sp->number("eta", cfg.spectrum.eta);
        sp->finish();
    }

    if (auto est = root.child("estimator")) {
        est->integer("traces", cfg.estimator.traces);
        est->integer("points_per_trace", cfg.estimator.points_per_trace);
        est->unsigned64("seed", cfg.estimator.seed);
        est->number("darknoise_rel", cfg.estimator.darknoise_rel);
        if (const json* mode = est->find("gain_mode")) {
            const std::string value = mode->is_string() ? mode->get<std::string>() : "";
            if (value == "unbiased") {
                cfg.estimator.gain_mode = GainMode::unbiased;
            } else if (value == "dark_biased") {
                cfg.estimator.gain_mode = GainMode::dark_biased;
            } else {
                throw ConfigError(est->key_path("gain_mode"),
                                  "expected \"unbiased\" or \"dark_biased\"");
            }
        }
        est->finish();
    }

    if (auto grids = root.child("grids")) {
        if (auto loss = grids->child("loss")) {
            loss->number("start", cfg.loss_grid.start);
            loss->number("stop", cfg.loss_grid.stop);
            loss->integer("points", cfg.loss_grid.points);
            loss->number("base_efficiency", cfg.loss_grid.base_efficiency);
            loss->finish();
        }
        if (auto freq = grids->child("frequency")) {
            freq->number("start_hz", cfg.frequency_grid.f_start);
            freq->number("stop_hz", cfg.frequency_grid.f_stop);
            freq->integer("points", cfg.frequency_grid.points);
            freq->finish();
        }
        if (auto contour = grids->child("contour")) {
            contour->number("n_min_start", cfg.contour_grid.n_min.start);
            contour->number("n_min_stop", cfg.contour_grid.n_min.stop);
            contour->number("n_excess_start", cfg.contour_grid.n_excess.start);
            contour->number("n_excess_stop", cfg.contour_grid.n_excess.stop);
            int resolution = cfg.contour_grid.n_min.points;
            contour->integer("resolution", resolution);
            cfg.contour_grid.n_min.points = resolution;
            cfg.contour_grid.n_excess.points = resolution;
            contour->finish();
        }
        grids->finish();
    }

    if (const json* budgets = root.find("budgets")) {
        if (!budgets->is_array() || budgets->empty()) {
            throw ConfigError("budgets", "expected a non-empty array of photon numbers");
        }
        cfg.budgets.clear();
        for (std::size_t i = 0; i < budgets->size(); ++i) {
            const json& b = (*budgets)[i];
            if (!b.is_number()) {
                throw ConfigError("budgets[" + std::to_string(i) + "]", "expected a number");
            }
            cfg.budgets.push_back({b.get<double>()});
        }
    }
    root.finish();

    if (!(cfg.efficiency > 0.0 && cfg.efficiency <= 1.0)) {
        throw ConfigError("efficiency", "must lie in (0, 1]");
    }
    check("spectrum", [&] { cfg.spectrum.validate(); });
    check("estimator", [&] { cfg.estimator.validate(); });
    if (!(cfg.loss_grid.start >= 0.0 && cfg.loss_grid.start <= cfg.loss_grid.stop &&
          cfg.loss_grid.stop < 1.0)) {
        throw ConfigError("grids.loss", "need 0 <= start <= stop < 1");
    }
    if (cfg.loss_grid.points < 2) {
        throw ConfigError("grids.loss.points", "must be at least 2");
    }
    if (!(cfg.loss_grid.base_efficiency > 0.0 && cfg.loss_grid.base_efficiency <= 1.0)) {
        throw ConfigError("grids.loss.base_efficiency", "must lie in (0, 1]");
    }
    check("grids.frequency", [&] { cfg.frequency_grid.validate(); });
    check("grids.contour", [&] { cfg.contour_grid.validate(); });
    for (std::size_t i = 0; i < cfg.budgets.size(); ++i) {
        check("budgets[" + std::to_string(i) + "]", [&] { cfg.budgets[i].validate(); });
    }
    (void)cfg.resolved_source();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

nlohmann::json to_json(const RunConfig& c) {
    json source;
    if (c.source) {
        source = {{"squeezed_variance", c.source->squeezed}, {"anti_variance", c.source->anti}};
    } else {
        source = {{"calibration",
                   {{"duan_target", c.calibration.duan_target},
                    {"epr_target", c.calibration.epr_target}}}};
    }
    json budgets = json::array();
    for (const auto& b : c.budgets) {
        budgets.push_back(b.n_max);
    }
    return {
        {"source", source},
        {"efficiency", c.efficiency},
        {"spectrum",
         {{"s0", c.spectrum.s0},
          {"f_opa_hz", c.spectrum.f_opa},
          {"relax_amp", c.spectrum.relax_amp},
          {"f_relax_hz", c.spectrum.f_relax},
          {"relax_width_hz", c.spectrum.relax_width},
          {"eta", c.spectrum.eta}}},
        {"estimator",
         {{"traces", c.estimator.traces},
          {"points_per_trace", c.estimator.points_per_trace},
          {"seed", c.estimator.seed},
          {"darknoise_rel", c.estimator.darknoise_rel},
          {"gain_mode",
           c.estimator.gain_mode == GainMode::unbiased ? "unbiased" : "dark_biased"}}},
        {"grids",
         {{"loss",
           {{"start", c.loss_grid.start},
            {"stop", c.loss_grid.stop},
            {"points", c.loss_grid.points},
            {"base_efficiency", c.loss_grid.base_efficiency}}},
          {"frequency",
           {{"start_hz", c.frequency_grid.f_start},
            {"stop_hz", c.frequency_grid.f_stop},
            {"points", c.frequency_grid.points}}},
          {"contour",
           {{"n_min_start", c.contour_grid.n_min.start},
            {"n_min_stop", c.contour_grid.n_min.stop},
            {"n_excess_start", c.contour_grid.n_excess.start},
            {"n_excess_stop", c.contour_grid.n_excess.stop},
            {"resolution", c.contour_grid.n_min.points}}}}},
        {"budgets", budgets},
    };
}

std::string config_hash(const RunConfig& config) {
    const std::string text = to_json(config).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace quadent
