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

#include "kzmagic/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kzmagic/config.hpp"
#include "kzmagic/errors.hpp"
#include "kzmagic/io.hpp"
#include "kzmagic/parallel.hpp"

namespace kzmagic {

namespace {

using json = nlohmann::json;

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::string backend;
    std::string tau_q;
    std::string alpha;
};

std::string out_path(const RunConfig &cfg, const std::string &name) {
    return (std::filesystem::path(cfg.output.directory) / name).string();
}

void write_json(const RunConfig &cfg, const std::string &name, const json &doc) {
    atomic_write_file(out_path(cfg, name), doc.dump(2) + "\n");
}

json model_json(const RunConfig &cfg) {
    json m{{"kind", to_string(cfg.model.kind)}, {"g_critical", cfg.model.g_critical}};
    if (!cfg.model.is_tfim()) {
        m["gamma"] = cfg.model.gamma;
        m["beta"] = cfg.model.beta;
    }
    return m;
}

json fit_json(const PowerLawFit &f) {
    return {{"exponent", f.exponent},
            {"stderr_exponent", f.stderr_exponent},
            {"log_amplitude", f.log_amplitude},
            {"window", {f.x_min, f.x_max}},
            {"n_points", f.n_points}};
}

json trimmed_json(const TrimmedPowerLawFit &f) {
    return {{"fit", fit_json(f.fit)}, {"full_window", fit_json(f.full)}, {"trimmed", f.trimmed}};
}

int cmd_validate_model(const RunConfig &cfg) {
    const MomentumGrid grid = build_momentum_grid(cfg.L);
    const SmallKCalibration cal = calibrate_small_k(cfg.model, cfg.L);
    const double gap = mode_coefficients(cfg.model, grid.k.front(), cfg.model.g_critical, cfg.L).energy;
    std::printf("model        %s\n", cfg.model.describe().c_str());
    std::printf("L            %d (%zu modes)\n", cfg.L, grid.size());
    std::printf("g_c          %g\n", cfg.model.g_critical);
    std::printf("gap(k_min)   %.6g at g_c\n", gap);
    std::printf("beta_eff     %.6f\n", cal.beta_eff);
    std::printf("C_beta       %.6f\n", cal.c_beta);
    std::printf("gamma_eff    %.6f\n", cal.gamma_eff);
    std::printf("delta        %.6f (predicted exponent)\n", predicted_exponent(cfg.model));
    write_json(cfg, "calibration.json",
               {{"model", model_json(cfg)},
                {"L", cfg.L},
                {"beta_eff", cal.beta_eff},
                {"c_beta", cal.c_beta},
                {"gamma_eff", cal.gamma_eff},
                {"a_at_kmin", cal.gap_at_kmin},
                {"gap_at_kmin", gap},
                {"n_points", cal.n_points},
                {"predicted_exponent", predicted_exponent(cfg.model)}});
    return kExitOk;
}

int cmd_evolve(const RunConfig &cfg) {
    const SweepOptions opts = cfg.sweep_options();
    const ModeTable table(cfg.model, build_momentum_grid(cfg.L));
    std::ostringstream csv;
    csv << "tau_q,time,g,alpha,delta_sre,defect_density,max_norm_drift\n";
    json summary = json::array();
    for (double tau : cfg.tau_q) {
        RampProtocol ramp = make_ramp(cfg.model, tau, opts);
        std::vector<StateSnapshot> snaps;
        if (cfg.backend == Backend::KZM) {
            if (!cfg.sample_times.empty()) throw ConfigError("sample_times need the ode backend");
            snaps.push_back(simulate_ramp(table, ramp, opts));
        } else {
            ramp.sample_times = cfg.sample_times;
            ramp.validate(cfg.model);
            RampResult run = evolve_all(table, ramp, opts.evolve, opts.threads);
            snaps = std::move(run.samples);
            snaps.push_back(std::move(run.final_state));
        }
        for (const StateSnapshot &s : snaps) {
            const StateSnapshot ref = ground_state_snapshot(table, s.g, s.time);
            const double n = defect_density(s, table);
            const double drift = max_norm_drift(s);
            json row{{"tau_q", tau}, {"time", s.time}, {"g", s.g}, {"defect_density", n}, {"max_norm_drift", drift}};
            for (double a : cfg.alphas) {
                const double d = relative_sre(s, ref, a);
                row["delta_sre"][format_number(a)] = d;
                csv << format_number(tau) << ',' << format_number(s.time) << ',' << format_number(s.g) << ','
                    << format_number(a) << ',' << format_number(d) << ',' << format_number(n) << ','
                    << format_number(drift) << '\n';
            }
            summary.push_back(row);
        }
    }
    if (cfg.output.csv) atomic_write_file(out_path(cfg, "evolve.csv"), csv.str());
    write_json(cfg, "evolve.json", {{"model", model_json(cfg)}, {"L", cfg.L}, {"snapshots", summary}});
    std::printf("wrote %zu snapshot(s) to %s\n", summary.size(), cfg.output.directory.c_str());
    return kExitOk;
}

int cmd_sweep(const RunConfig &cfg) {
    if (cfg.fit && cfg.tau_q.size() < 4) throw ConfigError("need >= 4 points for fit (tau_q has " +
                                                           std::to_string(cfg.tau_q.size()) + ")");
    const std::vector<SweepRecord> records = run_tauq_sweep(cfg.model, cfg.L, cfg.tau_q, cfg.sweep_options());

    std::ostringstream csv, jsonl;
    csv << "tau_q,alpha,delta_sre,q,delta_kappa,defect_density\n";
    std::vector<double> taus, defects;
    for (const SweepRecord &r : records) {
        const std::string tau = format_number(r.tau_Q);
        const std::string n = format_number(r.defect_density);
        for (const auto &[a, v] : r.delta_sre) csv << tau << ',' << format_number(a) << ',' << format_number(v) << ",,," << n << '\n';
        for (const auto &[q, v] : r.delta_kappa) csv << tau << ",,," << q << ',' << format_number(v) << ',' << n << '\n';
        json line{{"tau_q", r.tau_Q}, {"defect_density", r.defect_density}, {"max_norm_drift", r.max_norm_drift}};
        for (const auto &[a, v] : r.delta_sre) line["delta_sre"][format_number(a)] = v;
        for (const auto &[q, v] : r.delta_kappa) line["delta_kappa"][std::to_string(q)] = v;
        jsonl << line.dump() << '\n';
        taus.push_back(r.tau_Q);
        defects.push_back(r.defect_density);
    }
    if (cfg.output.csv) atomic_write_file(out_path(cfg, "sweep.csv"), csv.str());
    if (cfg.output.jsonl) atomic_write_file(out_path(cfg, "sweep.jsonl"), jsonl.str());

    std::vector<PlotSeries> series;
    if (cfg.fit) {
        json fits{{"model", model_json(cfg)},
                  {"L", cfg.L},
                  {"backend", to_string(cfg.backend)},
                  {"predicted_exponent", -predicted_exponent(cfg.model)}};
        for (double a : cfg.alphas) {
            std::vector<double> y;
            for (const SweepRecord &r : records) y.push_back(r.delta_sre.at(a));
            const TrimmedPowerLawFit f = fit_power_law_trimmed(taus, y);
            fits["delta_sre"][format_number(a)] = trimmed_json(f);
            std::printf("Delta M_%-6s exponent %+.4f +- %.4f%s\n", format_number(a).c_str(), f.fit.exponent,
                        f.fit.stderr_exponent, f.trimmed ? " (two smallest tau_Q dropped)" : "");
            series.push_back({"dM alpha=" + format_number(a), taus, y});
        }
        for (int q : cfg.cumulant_orders) {
            std::vector<double> y;
            for (const SweepRecord &r : records) y.push_back(std::abs(r.delta_kappa.at(q)));
            const TrimmedPowerLawFit f = fit_power_law_trimmed(taus, y);
            fits["delta_kappa"][std::to_string(q)] = trimmed_json(f);
            std::printf("|Delta kappa_%d| exponent %+.4f +- %.4f\n", q, f.fit.exponent, f.fit.stderr_exponent);
        }
        const TrimmedPowerLawFit fd = fit_power_law_trimmed(taus, defects);
        fits["defect_density"] = trimmed_json(fd);
        std::printf("defect density exponent %+.4f +- %.4f\n", fd.fit.exponent, fd.fit.stderr_exponent);
        write_json(cfg, "fits.json", fits);
    }
    if (cfg.output.svg) {
        if (series.empty()) {
            for (double a : cfg.alphas) {
                std::vector<double> y;
                for (const SweepRecord &r : records) y.push_back(r.delta_sre.at(a));
                series.push_back({"dM alpha=" + format_number(a), taus, y});
            }
        }
        series.push_back({"defect density", taus, defects});
        atomic_write_file(out_path(cfg, "sweep.svg"),
                          render_svg({"relative SRE vs tau_Q", "tau_Q", "value", true, true, true}, series));
    }
    return kExitOk;
}

int cmd_alpha_sweep(const RunConfig &cfg) {
    const double tau = cfg.tau_q.front();
    const AlphaSweepResult res = run_alpha_sweep(cfg.model, cfg.L, tau, cfg.alphas, cfg.sweep_options());
    std::ostringstream csv;
    csv << "alpha,delta_sre\n";
    for (std::size_t i = 0; i < res.alphas.size(); ++i) {
        csv << format_number(res.alphas[i]) << ',' << format_number(res.delta_sre[i]) << '\n';
    }
    if (cfg.output.csv) atomic_write_file(out_path(cfg, "alpha_sweep.csv"), csv.str());
    json doc{{"model", model_json(cfg)}, {"L", cfg.L}, {"tau_q", tau}, {"backend", to_string(cfg.backend)}};
    if (res.asymptotics) {
        const AlphaAsymptotics &a = *res.asymptotics;
        doc["small_alpha_limit"] = a.small_alpha_limit;
        doc["small_alpha_measured"] = a.small_alpha_measured;
        doc["large_alpha_slope"] = a.large_alpha_slope;
        doc["large_alpha_slope_stderr"] = a.large_alpha_slope_stderr;
        doc["predicted_slope"] = a.predicted_slope;
        std::printf("small-alpha: measured %.4f, predicted %.4f\n", a.small_alpha_measured, a.small_alpha_limit);
        std::printf("large-alpha slope: %.4f +- %.4f (predicted %.4f)\n", a.large_alpha_slope,
                    a.large_alpha_slope_stderr, a.predicted_slope);
    } else {
        doc["asymptotics"] = nullptr;
        doc["note"] = res.asymptotics_note;
        std::printf("asymptotics skipped: %s\n", res.asymptotics_note.c_str());
    }
    write_json(cfg, "asymptotics.json", doc);
    if (cfg.output.svg) {
        atomic_write_file(out_path(cfg, "alpha_sweep.svg"),
                          render_svg({"relative SRE vs alpha", "alpha", "Delta M_alpha", true, true, true},
                                     {{"tau_Q=" + format_number(tau), res.alphas, res.delta_sre}}));
    }
    return kExitOk;
}

int cmd_spectrum(const RunConfig &cfg) {
    const double tau = cfg.tau_q.front();
    const SweepOptions opts = cfg.sweep_options();
    const ModeTable table(cfg.model, build_momentum_grid(cfg.L));
    const RampProtocol ramp = make_ramp(cfg.model, tau, opts);
    const StateSnapshot state = simulate_ramp(table, ramp, opts);
    const StateSnapshot reference = ground_state_snapshot(table, ramp.g_end, ramp.t_end());
    const double thr = cfg.histogram.zero_threshold;

    const LogHistogram hist = build_log_histogram(state, cfg.histogram.bin_width, thr);
    const CumulantSet exact = exact_log_cumulants(state, 4, thr);
    const CumulantSet binned = histogram_moments(hist, 4);
    const CumulantSet delta = delta_log_cumulants(state, reference, 4, thr);
    const GaussianityMetrics gm = gaussianity_metrics(hist);
    const double lognormal = lognormal_cdf_distance(hist, exact(1), exact(2));

    std::ostringstream csv;
    write_histogram_csv(csv, hist);
    atomic_write_file(out_path(cfg, "hist.csv"), csv.str());
    write_json(cfg, "cumulants.json",
               {{"model", model_json(cfg)},
                {"L", cfg.L},
                {"tau_q", tau},
                {"backend", to_string(cfg.backend)},
                {"exact", exact.kappa},
                {"histogram", binned.kappa},
                {"delta_vs_ground_state", delta.kappa},
                {"log_base", "e"}});
    write_json(cfg, "diagnostics.json",
               {{"bin_width", hist.bin_width},
                {"bins", hist.size()},
                {"total_mass", hist.total_mass()},
                {"excluded_zero_fraction", hist.excluded_zero_fraction},
                {"skewness", gm.skewness},
                {"excess_kurtosis", gm.excess_kurtosis},
                {"gaussian_sup_cdf_distance", gm.sup_cdf_distance},
                {"lognormal_sup_cdf_distance", lognormal}});
    std::printf("kappa_1..4   %.6f %.6f %.6f %.6f\n", exact(1), exact(2), exact(3), exact(4));
    std::printf("skewness     %.4f\nkurtosis     %.4f\nlognormal    %.4f (sup CDF distance)\n", gm.skewness,
                gm.excess_kurtosis, lognormal);
    if (cfg.output.svg) {
        std::vector<double> x, y, g;
        const double sd = std::sqrt(exact(2));
        for (std::size_t i = 0; i < hist.size(); ++i) {
            const double c = hist.bin_center(i);
            x.push_back(c);
            y.push_back(hist.mass[i] / hist.bin_width);
            const double z = (c - exact(1)) / sd;
            g.push_back(std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI)));
        }
        atomic_write_file(out_path(cfg, "hist.svg"),
                          render_svg({"log Pauli spectrum", "ln|<P>|", "density", false, false, false},
                                     {{"histogram", x, y}, {"gaussian", x, g}}));
    }
    return kExitOk;
}

int cmd_collapse(const RunConfig &cfg) {
    CollapseOptions co;
    co.alpha = cfg.collapse.alpha;
    co.s_lo = cfg.collapse.s_lo;
    co.s_hi = cfg.collapse.s_hi;
    co.samples = cfg.collapse.samples;
    co.amplitude_exponent = cfg.collapse.amplitude_exponent;
    co.s_sample_lo = std::min(co.s_lo, -3.0);
    co.s_sample_hi = std::max(co.s_hi, 3.0);
    const CollapseResult res = run_collapse(cfg.model, cfg.L, cfg.tau_q, cfg.sweep_options(), co);

    std::ostringstream csv;
    csv << "tau_q,s,delta_sre,scaled_delta_sre\n";
    std::vector<PlotSeries> series;
    for (const Trace &tr : res.traces) {
        const double scale = std::pow(tr.tau_Q, res.amplitude_exponent);
        PlotSeries ps{"tau_Q=" + format_number(tr.tau_Q), tr.s, {}};
        for (std::size_t i = 0; i < tr.s.size(); ++i) {
            csv << format_number(tr.tau_Q) << ',' << format_number(tr.s[i]) << ',' << format_number(tr.value[i]) << ','
                << format_number(scale * tr.value[i]) << '\n';
            ps.y.push_back(scale * tr.value[i]);
        }
        series.push_back(std::move(ps));
    }
    if (cfg.output.csv) atomic_write_file(out_path(cfg, "collapse.csv"), csv.str());
    write_json(cfg, "collapse.json",
               {{"model", model_json(cfg)},
                {"L", cfg.L},
                {"alpha", co.alpha},
                {"s_window", {co.s_lo, co.s_hi}},
                {"amplitude_exponent", res.amplitude_exponent},
                {"metric", res.metric}});
    std::printf("collapse metric %.4f on s in [%g, %g]\n", res.metric, co.s_lo, co.s_hi);
    if (cfg.output.svg) {
        atomic_write_file(out_path(cfg, "collapse.svg"),
                          render_svg({"relative SRE vs (t - t_c)/t_hat", "s", "scaled Delta M", false, false, false},
                                     series));
    }
    return kExitOk;
}

RunConfig resolve_config(const Overrides &o) {
    RunConfig cfg = load_run_config(o.config_path);
    if (!o.out_dir.empty()) cfg.output.directory = o.out_dir;
    if (!o.backend.empty()) cfg.backend = parse_backend(o.backend);
    if (!o.tau_q.empty()) cfg.tau_q = parse_number_list(o.tau_q, "--tau-q");
    if (!o.alpha.empty()) cfg.alphas = parse_number_list(o.alpha, "--alpha");
    validate(cfg);
    return cfg;
}

}  // namespace

int run_cli(int argc, char **argv) {
    CLI::App app{"kzmagic: Kibble-Zurek ramps, stabilizer Renyi entropies and Pauli spectra of free-fermion chains"};
    app.require_subcommand(1);
    Overrides o;
    struct Command {
        const char *name;
        const char *help;
        int (*run)(const RunConfig &);
    };
    const Command commands[] = {
        {"validate-model", "Report the small-k calibration of the configured model", cmd_validate_model},
        {"evolve", "Evolve through the ramp and report observables at the sample times", cmd_evolve},
        {"sweep", "Sweep tau_Q and fit power laws", cmd_sweep},
        {"alpha-sweep", "Relative SRE versus Renyi index at the first tau_Q", cmd_alpha_sweep},
        {"spectrum", "Log-Pauli-spectrum histogram, cumulants and Gaussianity diagnostics", cmd_spectrum},
        {"collapse", "Time traces around the critical crossing and their collapse metric", cmd_collapse},
    };
    for (const Command &c : commands) {
        CLI::App *sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", o.config_path, "JSON run configuration")->required();
        sub->add_option("--out", o.out_dir, "Output directory (overrides output.directory)");
        sub->add_option("--backend", o.backend, "ode or kzm");
        sub->add_option("--tau-q", o.tau_q, "Comma-separated tau_Q list");
        sub->add_option("--alpha", o.alpha, "Comma-separated Renyi indices");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    try {
        const RunConfig cfg = resolve_config(o);
        for (const Command &c : commands) {
            if (app.got_subcommand(c.name)) return c.run(cfg);
        }
        return kExitUsage;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumericalError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumericalError;
    }
}

}  // namespace kzmagic
