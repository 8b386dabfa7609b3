// Copyright 2026 The kzmagic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kzmagic/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kzmagic/errors.hpp"

namespace kzmagic {

namespace {

using json = nlohmann::json;

void reject_unknown(const json &obj, const std::set<std::string> &allowed, const std::string &where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (const auto &item : obj.items()) {
        if (!allowed.count(item.key())) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

double number(const json &v, const std::string &name) {
    if (!v.is_number()) throw ConfigError(name + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(name + " must be finite");
    return x;
}

int integer(const json &v, const std::string &name) {
    if (!v.is_number_integer()) throw ConfigError(name + " must be an integer");
    return v.get<int>();
}

std::string text(const json &v, const std::string &name) {
    if (!v.is_string()) throw ConfigError(name + " must be a string");
    return v.get<std::string>();
}

std::vector<double> number_list(const json &v, const std::string &name) {
    if (!v.is_array()) throw ConfigError(name + " must be an array");
    std::vector<double> out;
    for (const json &x : v) out.push_back(number(x, name));
    return out;
}

ModelSpec parse_model(const json &m) {
    reject_unknown(m, {"kind", "gamma", "beta"}, "model");
    if (!m.contains("kind")) throw ConfigError("model.kind is required");
    const std::string kind = text(m["kind"], "model.kind");
    if (kind == "tfim") {
        if (m.contains("gamma") || m.contains("beta")) throw ConfigError("model.gamma/beta are not used by tfim");
        return ModelSpec::tfim();
    }
    if (kind == "lrkm") {
        if (!m.contains("gamma") || !m.contains("beta")) throw ConfigError("lrkm needs model.gamma and model.beta");
        return ModelSpec::lrkm(number(m["gamma"], "model.gamma"), number(m["beta"], "model.beta"));
    }
    throw ConfigError("model.kind must be 'tfim' or 'lrkm' (got '" + kind + "')");
}

}  // namespace

SweepOptions RunConfig::sweep_options() const {
    SweepOptions s;
    s.alphas = alphas;
    s.cumulant_orders = cumulant_orders;
    s.backend = backend;
    s.evolve.tolerance = tolerance;
    s.g_start = g_start;
    s.g_end = g_end;
    s.zero_threshold = histogram.zero_threshold;
    return s;
}

void validate(const RunConfig &cfg) {
    build_momentum_grid(cfg.L);
    if (cfg.tau_q.empty()) throw ConfigError("tau_q must not be empty");
    for (double t : cfg.tau_q) {
        if (!(t > 0.0)) throw ConfigError("tau_q entries must be positive");
    }
    for (double a : cfg.alphas) {
        if (!(a > 0.0)) throw ConfigError("alphas entries must be positive");
    }
    for (int q : cfg.cumulant_orders) {
        if (q < 1 || q > 4) throw ConfigError("cumulant_orders entries must lie in 1..4");
    }
    if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    if (!(cfg.histogram.bin_width > 0.0)) throw ConfigError("histogram.bin_width must be positive");
    if (!(cfg.histogram.zero_threshold > 0.0 && cfg.histogram.zero_threshold <= 1e-6)) {
        throw ConfigError("histogram.zero_threshold must lie in (0, 1e-6]");
    }
    if (!(cfg.collapse.alpha > 0.0)) throw ConfigError("collapse.alpha must be positive");
    if (!(cfg.collapse.s_hi > cfg.collapse.s_lo)) throw ConfigError("collapse.s_window must be increasing");
    if (cfg.collapse.samples < 2) throw ConfigError("collapse.samples must be >= 2");
    if (cfg.output.directory.empty()) throw ConfigError("output.directory must not be empty");
    for (double t : cfg.tau_q) make_ramp(cfg.model, t, cfg.sweep_options());
}

RunConfig parse_run_config(const std::string &json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root,
                   {"model", "L", "g_start", "g_end", "tau_q", "alphas", "cumulant_orders", "backend", "tolerance", "fit",
                    "sample_times", "histogram", "collapse", "output"},
                   "config");
    RunConfig cfg;
    if (!root.contains("model")) throw ConfigError("model is required");
    cfg.model = parse_model(root["model"]);
    if (root.contains("L")) cfg.L = integer(root["L"], "L");
    if (root.contains("g_start")) cfg.g_start = number(root["g_start"], "g_start");
    if (root.contains("g_end")) cfg.g_end = number(root["g_end"], "g_end");
    if (root.contains("tau_q")) cfg.tau_q = number_list(root["tau_q"], "tau_q");
    if (root.contains("alphas")) cfg.alphas = number_list(root["alphas"], "alphas");
    if (root.contains("cumulant_orders")) {
        cfg.cumulant_orders.clear();
        if (!root["cumulant_orders"].is_array()) throw ConfigError("cumulant_orders must be an array");
        for (const json &q : root["cumulant_orders"]) cfg.cumulant_orders.push_back(integer(q, "cumulant_orders"));
    }
    if (root.contains("backend")) cfg.backend = parse_backend(text(root["backend"], "backend"));
    if (root.contains("tolerance")) cfg.tolerance = number(root["tolerance"], "tolerance");
    if (root.contains("fit")) {
        if (!root["fit"].is_boolean()) throw ConfigError("fit must be true or false");
        cfg.fit = root["fit"].get<bool>();
    }
    if (root.contains("sample_times")) cfg.sample_times = number_list(root["sample_times"], "sample_times");
    if (root.contains("histogram")) {
        const json &h = root["histogram"];
        reject_unknown(h, {"bin_width", "zero_threshold"}, "histogram");
        if (h.contains("bin_width")) cfg.histogram.bin_width = number(h["bin_width"], "histogram.bin_width");
        if (h.contains("zero_threshold")) {
            cfg.histogram.zero_threshold = number(h["zero_threshold"], "histogram.zero_threshold");
        }
    }
    if (root.contains("collapse")) {
        const json &c = root["collapse"];
        reject_unknown(c, {"alpha", "s_window", "samples", "amplitude_exponent"}, "collapse");
        if (c.contains("alpha")) cfg.collapse.alpha = number(c["alpha"], "collapse.alpha");
        if (c.contains("s_window")) {
            const std::vector<double> w = number_list(c["s_window"], "collapse.s_window");
            if (w.size() != 2) throw ConfigError("collapse.s_window must have two entries");
            cfg.collapse.s_lo = w[0];
            cfg.collapse.s_hi = w[1];
        }
        if (c.contains("samples")) cfg.collapse.samples = integer(c["samples"], "collapse.samples");
        if (c.contains("amplitude_exponent")) {
            cfg.collapse.amplitude_exponent = number(c["amplitude_exponent"], "collapse.amplitude_exponent");
        }
    }
    if (root.contains("output")) {
        const json &o = root["output"];
        reject_unknown(o, {"directory", "formats"}, "output");
        if (o.contains("directory")) cfg.output.directory = text(o["directory"], "output.directory");
        if (o.contains("formats")) {
            if (!o["formats"].is_array()) throw ConfigError("output.formats must be an array");
            cfg.output.csv = cfg.output.jsonl = cfg.output.svg = false;
            for (const json &f : o["formats"]) {
                const std::string name = text(f, "output.formats");
                if (name == "csv") {
                    cfg.output.csv = true;
                } else if (name == "jsonl") {
                    cfg.output.jsonl = true;
                } else if (name == "svg") {
                    cfg.output.svg = true;
                } else {
                    throw ConfigError("output.formats entries must be csv, jsonl or svg (got '" + name + "')");
                }
            }
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig load_run_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::vector<double> parse_number_list(const std::string &text_value, const std::string &what) {
    std::vector<double> out;
    std::stringstream ss(text_value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception &) {
            throw ConfigError(what + ": '" + item + "' is not a number");
        }
        if (used != item.size() || !std::isfinite(x)) throw ConfigError(what + ": '" + item + "' is not a number");
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError(what + " must not be empty");
    return out;
}

}  // namespace kzmagic
