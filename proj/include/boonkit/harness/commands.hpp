#pragma once

// Subcommand bodies behind the CLI. Each takes the merged key=value config
// plus two streams: `out` for machine-readable results (deterministic under
// config+seed) and `log` for progress notes, which is where wall-clock times
// go. Exit codes: 0 success, 1 verification or training failure, 2 usage or
// configuration error (the CLI maps ConfigError to 2).

#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "boonkit/harness/config.hpp"
#include "boonkit/harness/report.hpp"
#include "boonkit/harness/verify.hpp"
#include "boonkit/nn/checkpoint.hpp"
#include "boonkit/nn/train.hpp"
#include "boonkit/pde/io.hpp"

namespace boon {

namespace harnessdetail {

inline void require_input_path(const std::string& path, const std::string& what) {
    if (!std::filesystem::exists(path))
        throw ConfigError(what + " not found: " + path);
}

inline void require_output_path(const std::string& path, const std::string& what) {
    if (path.empty())
        throw ConfigError(what + " path is empty");
    const std::filesystem::path parent = std::filesystem::path(path).parent_path();
    if (!parent.empty() && !std::filesystem::is_directory(parent))
        throw ConfigError(what + " directory does not exist: " + parent.string());
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t comma = s.find(',', start);
        const std::string part = s.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!part.empty())
            parts.push_back(part);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return parts;
}

inline double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline BcKind bc_kind_from_name(const std::string& name) {
    if (name == "dirichlet")
        return BcKind::dirichlet;
    if (name == "neumann")
        return BcKind::neumann;
    if (name == "periodic")
        return BcKind::periodic;
    throw ConfigError("unknown bc '" + name + "' (expected dirichlet, neumann, or periodic)");
}

inline Side side_from_name(const std::string& name) {
    if (name == "left")
        return Side::left;
    if (name == "right")
        return Side::right;
    if (name == "both")
        return Side::both;
    throw ConfigError("unknown side '" + name + "' (expected left, right, or both)");
}

inline const char* bc_kind_name(BcKind k) {
    switch (k) {
    case BcKind::dirichlet: return "dirichlet";
    case BcKind::neumann: return "neumann";
    case BcKind::periodic: return "periodic";
    }
    return "unknown";
}

inline const char* side_name(Side s) {
    switch (s) {
    case Side::left: return "left";
    case Side::right: return "right";
    case Side::both: return "both";
    }
    return "unknown";
}

// Discrete consistency residual of one sample's target stack, judged only
// from data the file itself carries: end values against the step input for
// the viscous front, endpoint agreement for the periodic solver, stencil
// fluxes against the closed-form ramp for the heat rod, plate-amplitude
// overshoot for the oscillating plate, face fluxes for the membrane. The lid
// cavity has no trace-level identity in vorticity form; it reports 0 when the
// stack is finite.
inline double sample_residual(const Dataset& ds, std::size_t s) {
    const ProblemSpec& spec = ds.spec;
    const std::size_t pts = spec.grid.points();
    const double* in = ds.inputs.data() + s * pts;
    double worst = 0.0;
    for (std::size_t j = 0; j < spec.m; ++j) {
        const double* out = ds.outputs.data() + (s * spec.m + j) * pts;
        const double t = spec.output_time(j);
        double r = 0.0;
        switch (spec.problem) {
        case Problem::burgers_riemann:
            r = std::max(std::abs(out[0] - in[0]), std::abs(out[pts - 1] - in[pts - 1]));
            break;
        case Problem::burgers_periodic:
            r = std::abs(out[0] - out[pts - 1]);
            break;
        case Problem::heat_1d: {
            const FDStencil sl = fd_coefficients(2, spec.grid.dx(), Side::left);
            const FDStencil sr = fd_coefficients(2, spec.grid.dx(), Side::right);
            const double right = spec.u_mag * std::sin(std::numbers::pi * t);
            r = std::max(std::abs(sl.apply(out, pts)), std::abs(sr.apply(out, pts) - right));
            break;
        }
        case Problem::stokes_second: {
            for (std::size_t i = 0; i < pts; ++i)
                r = std::max(r, std::abs(out[i]) - spec.u_mag);
            r = std::max(r, 0.0);
            break;
        }
        case Problem::wave_2d: {
            const std::size_t nx = spec.grid.n[0], ny = spec.grid.n[1];
            const FDStencil sl = fd_coefficients(2, spec.grid.dx(0), Side::left);
            const FDStencil sr = fd_coefficients(2, spec.grid.dx(0), Side::right);
            std::vector<double> line(std::max(nx, ny));
            for (std::size_t iy = 0; iy < ny; ++iy) {
                for (std::size_t ix = 0; ix < nx; ++ix)
                    line[ix] = out[spec.grid.flat(ix, iy)];
                r = std::max({r, std::abs(sl.apply(line.data(), nx)), std::abs(sr.apply(line.data(), nx))});
            }
            for (std::size_t ix = 0; ix < nx; ++ix) {
                for (std::size_t iy = 0; iy < ny; ++iy)
                    line[iy] = out[spec.grid.flat(ix, iy)];
                r = std::max({r, std::abs(sl.apply(line.data(), ny)), std::abs(sr.apply(line.data(), ny))});
            }
            break;
        }
        case Problem::lid_cavity: {
            for (std::size_t i = 0; i < pts; ++i)
                if (!std::isfinite(out[i]))
                    r = std::numeric_limits<double>::infinity();
            break;
        }
        default:
            throw std::invalid_argument("sample_residual: unknown problem tag");
        }
        worst = std::max(worst, r);
    }
    return worst;
}

} // namespace harnessdetail

inline int cmd_verify(const ConfigMap& cfg, std::ostream& out, std::ostream& log,
                      const VerifyOracles& oracles = {}) {
    namespace hd = harnessdetail;
    cfg.restrict_keys({"filter", "out"});
    const std::string filter = cfg.get("filter", "");
    const std::string report_path = cfg.get("out", "");
    if (!report_path.empty())
        hd::require_output_path(report_path, "report");

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<SuiteResult> results = run_verify(filter, oracles);
    if (results.empty())
        throw ConfigError("filter '" + filter + "' matches no suite");

    Json report;
    report["filter"] = filter;
    report["suites"] = Json::array();
    std::string failed;
    for (const SuiteResult& r : results) {
        if (r.pass) {
            out << "ok " << r.name << "\n";
        } else {
            out << "FAIL " << r.name << ": " << r.detail << "\n";
            failed = r.name;
        }
        report["suites"].push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    report["failed"] = failed.empty() ? Json() : Json(failed);
    out << report.dump() << "\n";
    if (!report_path.empty())
        write_text_file(report_path, report.dump(2) + "\n");
    log << "verify: " << results.size() << " suite(s) in " << hd::elapsed_s(t0) << " s\n";
    return failed.empty() ? 0 : 1;
}

inline int cmd_datagen(const ConfigMap& cfg, std::ostream& out, std::ostream& log) {
    namespace hd = harnessdetail;
    cfg.restrict_keys({"problem", "resolution", "n_data", "n_t", "m", "t_final", "seed", "nu",
                       "k_cond", "re", "u_mag", "c_wave", "out"});
    const std::string path = cfg.require("out");
    hd::require_output_path(path, "dataset");

    Problem problem;
    try {
        problem = problem_from_name(cfg.require("problem"));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const std::size_t resolution = cfg.get_u64("resolution", 64);
    ProblemSpec spec = default_spec(problem, resolution, cfg.get_u64("n_t", 1) > 1,
                                    cfg.get_u64("seed", 0));
    spec.n_t = cfg.get_u64("n_t", spec.n_t);
    spec.m = cfg.get_u64("m", spec.m);
    spec.t_final = cfg.get_f64("t_final", spec.t_final);
    spec.nu = cfg.get_f64("nu", spec.nu);
    spec.k_cond = cfg.get_f64("k_cond", spec.k_cond);
    spec.re = cfg.get_f64("re", spec.re);
    spec.u_mag = cfg.get_f64("u_mag", spec.u_mag);
    spec.c_wave = cfg.get_f64("c_wave", spec.c_wave);
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const std::size_t n_data = cfg.get_u64(
        "n_data", table_defaults(spec.is_2d() ? 3 : (spec.m > 1 ? 2 : 1)).n_data);
    if (n_data == 0)
        throw ConfigError("n_data must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    Dataset ds = build_dataset(spec, n_data);
    write_dataset(ds, path);

    double mean = 0.0, worst = 0.0;
    std::size_t worst_s = 0;
    for (std::size_t s = 0; s < n_data; ++s) {
        const double r = hd::sample_residual(ds, s);
        mean += r / static_cast<double>(n_data);
        if (r > worst) {
            worst = r;
            worst_s = s;
        }
    }
    out << "dataset: " << problem_name(spec.problem) << " n_data=" << n_data
        << " train=" << ds.train_idx.size() << " test=" << ds.test_idx.size()
        << " points=" << spec.grid.points() << " m=" << spec.m << " seed=" << spec.seed << "\n";
    if (n_data <= 20)
        for (std::size_t s = 0; s < n_data; ++s)
            out << "sample " << s << " residual " << format_full(hd::sample_residual(ds, s)) << "\n";
    out << "sample residuals: mean=" << format_full(mean) << " max=" << format_full(worst)
        << " (sample " << worst_s << ")\n";
    log << "datagen: wrote " << path << " in " << hd::elapsed_s(t0) << " s\n";
    return 0;
}

inline int cmd_train(const ConfigMap& cfg, std::ostream& out, std::ostream& log) {
    namespace hd = harnessdetail;
    cfg.restrict_keys({"dataset", "out", "metrics", "summary", "epochs", "lr", "decay_interval",
                       "decay_factor", "batch", "seed", "baseline", "mollifier", "modes",
                       "channels", "bc", "side", "stencil_order", "alpha", "beta"});
    const std::string data_path = cfg.require("dataset");
    hd::require_input_path(data_path, "dataset");
    const std::string ckpt_path = cfg.require("out");
    hd::require_output_path(ckpt_path, "checkpoint");
    const std::string csv_path = cfg.get("metrics", ckpt_path + ".metrics.csv");
    hd::require_output_path(csv_path, "metrics");
    const std::string summary_path = cfg.get("summary", ckpt_path + ".summary.json");
    hd::require_output_path(summary_path, "summary");

    Dataset data = read_dataset(data_path);
    if (data.spec.grid.dims != 1)
        throw ConfigError("train supports 1D datasets; " + data_path + " is 2D");

    TrainConfig tc = default_train_config(data);
    tc.epochs = cfg.get_u64("epochs", tc.epochs);
    tc.lr = cfg.get_f64("lr", tc.lr);
    tc.decay_interval = cfg.get_u64("decay_interval", tc.decay_interval);
    tc.decay_factor = cfg.get_f64("decay_factor", tc.decay_factor);
    tc.batch = cfg.get_u64("batch", tc.batch);
    tc.seed = cfg.get_u64("seed", 0);
    tc.baseline = cfg.get_bool("baseline", false);
    tc.mollifier = cfg.get_bool("mollifier", false);
    tc.shape.modes = cfg.get_u64("modes", tc.shape.modes);
    tc.shape.channels = cfg.get_u64("channels", tc.shape.channels);
    if (cfg.has("bc"))
        tc.bc.kind = hd::bc_kind_from_name(cfg.get("bc", ""));
    if (cfg.has("side"))
        tc.bc.side = hd::side_from_name(cfg.get("side", ""));
    tc.bc.stencil_order = static_cast<int>(
        cfg.get_u64("stencil_order", static_cast<std::uint64_t>(tc.bc.stencil_order)));
    tc.bc.weights.alpha = cfg.get_f64("alpha", tc.bc.weights.alpha);
    tc.bc.weights.beta = cfg.get_f64("beta", tc.bc.weights.beta);
    if (tc.epochs == 0 || tc.batch == 0)
        throw ConfigError("epochs and batch must be positive");
    if (2 * tc.shape.modes > data.spec.grid.points())
        throw ConfigError("resolution must be at least twice the mode count");

    const auto t0 = std::chrono::steady_clock::now();
    TrainResult res;
    try {
        res = train_operator(tc, data);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    CsvTable csv({"epoch", "train_rel_l2", "test_rel_l2", "boundary_l2", "lr"});
    for (const EpochMetrics& em : res.history)
        csv.add_row({std::to_string(em.epoch), format_full(em.train_rel_l2),
                     format_full(em.test_rel_l2), format_full(em.boundary_l2), format_full(em.lr)});
    write_text_file(csv_path, csv.to_string());
    write_checkpoint(ckpt_path, res.params, &res.adam);

    Json summary;
    summary["dataset"] = data_path;
    summary["problem"] = problem_name(data.spec.problem);
    summary["seed"] = tc.seed;
    summary["epochs_run"] = res.history.size();
    summary["diverged"] = res.diverged;
    summary["config"] = {{"epochs", tc.epochs},
                         {"lr", tc.lr},
                         {"decay_interval", tc.decay_interval},
                         {"decay_factor", tc.decay_factor},
                         {"batch", tc.batch},
                         {"baseline", tc.baseline},
                         {"mollifier", tc.mollifier},
                         {"modes", tc.shape.modes},
                         {"channels", tc.shape.channels},
                         {"out_channels", tc.shape.out_channels},
                         {"bc", hd::bc_kind_name(tc.bc.kind)},
                         {"side", hd::side_name(tc.bc.side)},
                         {"stencil_order", tc.bc.stencil_order}};
    if (!res.history.empty()) {
        const EpochMetrics& last = res.history.back();
        summary["final"] = {{"train_rel_l2", last.train_rel_l2},
                            {"test_rel_l2", last.test_rel_l2},
                            {"boundary_l2", last.boundary_l2}};
        out << "final: " << metric_pair(last.test_rel_l2, last.boundary_l2) << "\n";
    }
    write_text_file(summary_path, summary.dump(2) + "\n");
    log << "train: " << res.history.size() << " epoch(s) in " << hd::elapsed_s(t0) << " s\n";
    if (res.diverged) {
        out << "training diverged\n";
        return 1;
    }
    return 0;
}

inline int cmd_eval(const ConfigMap& cfg, std::ostream& out, std::ostream& log) {
    namespace hd = harnessdetail;
    cfg.restrict_keys({"checkpoint", "dataset", "split", "out"});
    const std::vector<std::string> ckpts = hd::split_list(cfg.require("checkpoint"));
    const std::vector<std::string> datasets = hd::split_list(cfg.require("dataset"));
    if (ckpts.empty() || datasets.empty())
        throw ConfigError("need at least one checkpoint and one dataset");
    const std::string split = cfg.get("split", "test");
    if (split != "train" && split != "test" && split != "all")
        throw ConfigError("unknown split '" + split + "' (expected train, test, or all)");
    const std::string report_path = cfg.get("out", "");
    if (!report_path.empty())
        hd::require_output_path(report_path, "report");
    for (const std::string& p : ckpts)
        hd::require_input_path(p, "checkpoint");
    for (const std::string& p : datasets)
        hd::require_input_path(p, "dataset");

    const auto t0 = std::chrono::steady_clock::now();
    Json report = Json::array();
    for (const std::string& dpath : datasets) {
        Dataset data = read_dataset(dpath);
        std::vector<std::uint32_t> idx;
        if (split == "train")
            idx = data.train_idx;
        else if (split == "test")
            idx = data.test_idx;
        if (idx.empty()) {
            idx.resize(data.n_samples);
            for (std::size_t s = 0; s < data.n_samples; ++s)
                idx[s] = static_cast<std::uint32_t>(s);
        }
        for (const std::string& cpath : ckpts) {
            Checkpoint ck = read_checkpoint(cpath);
            EvalMetrics m = evaluate_operator(ck.params, data, idx);
            out << cpath << " @ " << dpath << " [" << split
                << "]: " << metric_pair(m.rel_l2, m.boundary_l2) << "\n";
            report.push_back({{"checkpoint", cpath},
                              {"dataset", dpath},
                              {"split", split},
                              {"rel_l2", m.rel_l2},
                              {"boundary_l2", m.boundary_l2}});
        }
    }
    if (!report_path.empty())
        write_text_file(report_path, report.dump(2) + "\n");
    log << "eval: " << report.size() << " pair(s) in " << hd::elapsed_s(t0) << " s\n";
    return 0;
}

inline int cmd_bounds(const ConfigMap& cfg, std::ostream& out, std::ostream& log) {
    namespace hd = harnessdetail;
    cfg.restrict_keys({"trials", "seed", "out"});
    const std::size_t trials = cfg.get_u64("trials", 1000);
    if (trials == 0)
        throw ConfigError("trials must be positive");
    const std::uint64_t seed = cfg.get_u64("seed", 0);
    const std::string report_path = cfg.get("out", "");
    if (!report_path.empty())
        hd::require_output_path(report_path, "report");

    const auto t0 = std::chrono::steady_clock::now();
    double periodic_max = 0.0, dirichlet_max = 0.0, neumann_slack_max = 0.0;
    std::size_t neumann_violations = 0;
    Rng rng(seed, 7000);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 8 + static_cast<std::size_t>(rng.next_u64() % 25);
        Grid g = Grid::line(n);
        DenseKernel K = DenseKernel::random(g, rng);
        std::vector<double> u0(n);
        for (double& x : u0)
            x = rng.uniform(-1.0, 1.0);
        const double alpha_t = rng.uniform(-2.0, 2.0);
        const double a = rng.uniform(0.0, 1.0);
        const PeriodicWeights w{a, 1.0 - a};
        const auto u = bcdetail::dense_apply(K.matrix(), n, u0);

        const auto up = bcdetail::dense_apply(dense_periodic(K.matrix(), n, w), n, u0);
        periodic_max = std::max(periodic_max, std::abs(l2_diff(u, up) - bound_periodic(u, w)));

        const auto ud = bcdetail::dense_apply(dense_dirichlet(K.matrix(), n, alpha_t, u0[0]), n, u0);
        const double d_direct = l2_diff(u, ud);
        const double d_pred = bound_dirichlet(K.matrix(), n, u0, alpha_t);
        dirichlet_max = std::max(dirichlet_max, std::abs(d_direct - d_pred) / (1.0 + d_pred));

        const FDStencil st = fd_coefficients(2, g.dx(), Side::left);
        const auto un = bcdetail::dense_apply(dense_neumann(K.matrix(), n, alpha_t, u0[0], st), n, u0);
        const double n_direct = l2_diff(u, un);
        const double n_pred = bound_neumann(K.matrix(), n, u0, alpha_t, st);
        if (n_direct > n_pred + 1e-8 * (1.0 + n_pred))
            ++neumann_violations;
        neumann_slack_max = std::max(neumann_slack_max, std::abs(n_pred - n_direct) / (1.0 + n_pred));
    }

    out << "periodic equality: max residual " << format_full(periodic_max) << " over " << trials
        << " trials\n";
    out << "dirichlet equality: max residual " << format_full(dirichlet_max) << " over " << trials
        << " trials\n";
    out << "neumann inequality: " << neumann_violations << " violation(s), max slack "
        << format_full(neumann_slack_max) << "\n";

    const bool pass = periodic_max <= 1e-8 && dirichlet_max <= 1e-8 && neumann_violations == 0;
    if (!report_path.empty()) {
        Json report;
        report["trials"] = trials;
        report["seed"] = seed;
        report["periodic_max_residual"] = periodic_max;
        report["dirichlet_max_residual"] = dirichlet_max;
        report["neumann_violations"] = neumann_violations;
        report["neumann_max_slack"] = neumann_slack_max;
        report["pass"] = pass;
        write_text_file(report_path, report.dump(2) + "\n");
    }
    log << "bounds: " << trials << " trials in " << hd::elapsed_s(t0) << " s\n";
    return pass ? 0 : 1;
}

} // namespace boon
