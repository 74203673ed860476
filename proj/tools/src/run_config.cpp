#include "floqcool_cli/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "floqcool/error.hpp"
#include "json.hpp"

namespace floqcool::cli {

namespace {

using json = nlohmann::ordered_json;

// Typed, strict view of one JSON object.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) fail(path_, "expected an object");
    }

    void allow(std::initializer_list<std::string_view> keys) const {
        for (const auto& item : node_.items()) {
            if (std::find(keys.begin(), keys.end(), item.key()) == keys.end()) {
                fail(key_path(item.key()), "unknown key");
            }
        }
    }

    const json* find(std::string_view key) const {
        const auto it = node_.find(std::string(key));
        return it == node_.end() ? nullptr : &*it;
    }

    void number(std::string_view key, double& out) const {
        if (const json* v = find(key)) {
            if (!v->is_number()) fail(key_path(key), "expected a number");
            out = v->get<double>();
        }
    }

    template <class Int>
    void integer(std::string_view key, Int& out) const {
        if (const json* v = find(key)) {
            if (!v->is_number_integer()) fail(key_path(key), "expected an integer");
            const auto x = v->get<long long>();
            if (x < static_cast<long long>(std::numeric_limits<Int>::min()) ||
                x > static_cast<long long>(std::numeric_limits<Int>::max())) {
                fail(key_path(key), "integer out of range");
            }
            out = static_cast<Int>(x);
        }
    }

    void string(std::string_view key, std::string& out) const {
        if (const json* v = find(key)) {
            if (!v->is_string()) fail(key_path(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void strings(std::string_view key, std::vector<std::string>& out) const {
        if (const json* v = find(key)) {
            if (!v->is_array()) fail(key_path(key), "expected an array of strings");
            std::vector<std::string> tmp;
            for (const auto& e : *v) {
                if (!e.is_string()) fail(key_path(key), "expected an array of strings");
                tmp.push_back(e.get<std::string>());
            }
            out = std::move(tmp);
        }
    }

    std::string key_path(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    [[noreturn]] static void fail(const std::string& path, const std::string& what) {
        throw ConfigError((path.empty() ? std::string("<root>") : path) + ": " + what);
    }

private:
    const json& node_;
    std::string path_;
};

void apply_json(const json& doc, RunConfig& c) {
    const Section root(doc, "");
    root.allow({"figure", "drive", "bath", "density", "sweep", "solver", "master", "output",
                "threads"});

    if (const json* f = root.find("figure")) {
        if (f->is_null()) {
            c.figure.reset();
        } else if (f->is_string()) {
            try {
                apply_figure(c, f->get<std::string>());
            } catch (const InvalidArgument& e) {
                Section::fail("figure", e.what());
            }
        } else {
            Section::fail("figure", "expected a string or null");
        }
    }
    if (const json* v = root.find("drive")) {
        const Section s(*v, "drive");
        s.allow({"omega0", "omega1"});
        s.number("omega0", c.drive.omega0);
        s.number("omega1", c.drive.omega1);
    }
    if (const json* v = root.find("bath")) {
        const Section s(*v, "bath");
        s.allow({"beta"});
        s.number("beta", c.bath.beta);
    }
    if (const json* v = root.find("density")) {
        const Section s(*v, "density");
        s.allow({"kind", "amplitude", "center", "width"});
        s.string("kind", c.density.kind);
        s.number("amplitude", c.density.amplitude);
        s.number("center", c.density.center);
        s.number("width", c.density.width);
    }
    if (const json* v = root.find("sweep")) {
        const Section s(*v, "sweep");
        s.allow({"start", "stop", "step", "columns"});
        s.number("start", c.sweep.start);
        s.number("stop", c.sweep.stop);
        s.number("step", c.sweep.step);
        s.strings("columns", c.sweep.columns);
    }
    if (const json* v = root.find("solver")) {
        const Section s(*v, "solver");
        s.allow({"tolerance", "stability_margin", "max_L", "tail_threshold"});
        s.number("tolerance", c.solver.tolerance);
        s.number("stability_margin", c.solver.stability_margin);
        s.integer("max_L", c.solver.max_L);
        s.number("tail_threshold", c.solver.tail_threshold);
    }
    if (const json* v = root.find("master")) {
        const Section s(*v, "master");
        s.allow({"n_max", "rate_scale", "snapshots", "tolerance"});
        s.integer("n_max", c.master.n_max);
        s.number("rate_scale", c.master.rate_scale);
        s.integer("snapshots", c.master.snapshots);
        s.number("tolerance", c.master.tolerance);
    }
    if (const json* v = root.find("output")) {
        const Section s(*v, "output");
        s.allow({"path", "format"});
        s.string("path", c.output.path);
        s.string("format", c.output.format);
    }
    root.integer("threads", c.threads);
}

}  // namespace

void apply_figure(RunConfig& config, std::string_view name) {
    const SweepConfig preset = figure_preset(name);
    config.figure = std::string(name);
    config.drive = preset.drive;
    config.bath = preset.bath;
    config.density.width = preset.width;
    config.sweep.start = preset.start;
    config.sweep.stop = preset.stop;
    config.sweep.step = preset.step;
}

RunConfig parse_run_config(std::string_view text, RunConfig base) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    apply_json(doc, base);
    return base;
}

RunConfig load_run_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), std::move(base));
}

std::string dump_run_config(const RunConfig& c) {
    json doc;
    doc["figure"] = c.figure ? json(*c.figure) : json(nullptr);
    doc["drive"] = {{"omega0", c.drive.omega0}, {"omega1", c.drive.omega1}};
    doc["bath"] = {{"beta", c.bath.beta}};
    doc["density"] = {{"kind", c.density.kind},
                      {"amplitude", c.density.amplitude},
                      {"center", c.density.center},
                      {"width", c.density.width}};
    doc["sweep"] = {{"start", c.sweep.start},
                    {"stop", c.sweep.stop},
                    {"step", c.sweep.step},
                    {"columns", c.sweep.columns}};
    doc["solver"] = {{"tolerance", c.solver.tolerance},
                     {"stability_margin", c.solver.stability_margin},
                     {"max_L", c.solver.max_L},
                     {"tail_threshold", c.solver.tail_threshold}};
    doc["master"] = {{"n_max", c.master.n_max},
                     {"rate_scale", c.master.rate_scale},
                     {"snapshots", c.master.snapshots},
                     {"tolerance", c.master.tolerance}};
    doc["output"] = {{"path", c.output.path}, {"format", c.output.format}};
    doc["threads"] = c.threads;
    return doc.dump(2) + "\n";
}

void validate(const RunConfig& c) {
    try {
        to_sweep_config(c).validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (c.density.kind != "gaussian") {
        throw ConfigError("density.kind: only \"gaussian\" is supported");
    }
    if (!(c.density.center >= 0.0) || !std::isfinite(c.density.center)) {
        throw ConfigError("density.center: must be non-negative and finite");
    }
    if (c.master.n_max != 0 && c.master.n_max < 2) {
        throw ConfigError("master.n_max: must be 0 (automatic) or >= 2");
    }
    if (!(c.master.rate_scale > 0.0) || !std::isfinite(c.master.rate_scale)) {
        throw ConfigError("master.rate_scale: must be positive and finite");
    }
    if (c.master.snapshots < 2) throw ConfigError("master.snapshots: must be >= 2");
    if (!(c.master.tolerance > 0.0 && c.master.tolerance <= 1e-4)) {
        throw ConfigError("master.tolerance: must lie in (0, 1e-4]");
    }
    if (c.solver.max_L < 8) throw ConfigError("solver.max_L: must be >= 8");
    if (!(c.solver.tolerance > 0.0 && c.solver.tolerance <= 1e-6)) {
        throw ConfigError("solver.tolerance: must lie in (0, 1e-6]");
    }
    if (!(c.solver.stability_margin > 0.0 && c.solver.stability_margin <= 1e-3)) {
        throw ConfigError("solver.stability_margin: must lie in (0, 1e-3]");
    }
    if (!(c.solver.tail_threshold > 0.0 && c.solver.tail_threshold < 1.0)) {
        throw ConfigError("solver.tail_threshold: must lie in (0, 1)");
    }
    if (c.output.format != "csv") throw ConfigError("output.format: only \"csv\" is supported");
    if (c.output.path.empty()) throw ConfigError("output.path: must not be empty");
}

SweepConfig to_sweep_config(const RunConfig& c) {
    SweepConfig s;
    s.drive = c.drive;
    s.bath = c.bath;
    s.amplitude = c.density.amplitude;
    s.width = c.density.width;
    s.start = c.sweep.start;
    s.stop = c.sweep.stop;
    s.step = c.sweep.step;
    s.n_max = c.master.n_max;
    s.columns = c.sweep.columns;
    s.solver = c.solver;
    s.threads = c.threads;
    return s;
}

}  // namespace floqcool::cli
