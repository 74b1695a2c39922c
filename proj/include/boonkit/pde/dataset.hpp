#pragma once

// Dataset assembly: one canonical sampler per problem family, deterministic
// under (spec, seed). Inputs are discretized initial conditions, outputs the
// solution at the last m of n_t uniform time steps. Sample s always draws
// from its own seed stream, so results are byte-identical no matter how many
// worker threads run.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "boonkit/bc/metrics.hpp"
#include "boonkit/core/field.hpp"
#include "boonkit/core/rng.hpp"
#include "boonkit/pde/burgers_fd.hpp"
#include "boonkit/pde/exact.hpp"
#include "boonkit/pde/grf.hpp"
#include "boonkit/pde/lid_cavity.hpp"

namespace boon {

enum class Problem : std::uint32_t {
    stokes_second = 1,
    burgers_riemann = 2,
    burgers_periodic = 3,
    heat_1d = 4,
    wave_2d = 5,
    lid_cavity = 6,
};

inline const char* problem_name(Problem p) {
    switch (p) {
    case Problem::stokes_second: return "stokes_second";
    case Problem::burgers_riemann: return "burgers_riemann";
    case Problem::burgers_periodic: return "burgers_periodic";
    case Problem::heat_1d: return "heat_1d";
    case Problem::wave_2d: return "wave_2d";
    case Problem::lid_cavity: return "lid_cavity";
    }
    throw std::invalid_argument("problem_name: unknown problem tag");
}

inline Problem problem_from_name(const std::string& name) {
    for (auto p : {Problem::stokes_second, Problem::burgers_riemann, Problem::burgers_periodic,
                   Problem::heat_1d, Problem::wave_2d, Problem::lid_cavity})
        if (name == problem_name(p))
            return p;
    throw std::invalid_argument("problem_from_name: unknown problem '" + name + "'");
}

struct ProblemSpec {
    Problem problem = Problem::heat_1d;
    Grid grid = Grid::line(64);
    std::size_t n_t = 1;
    std::size_t m = 1;
    double t_final = 1.0;
    std::uint64_t seed = 0;
    double nu = 0.1;      // viscosity (plate flow, both Burgers variants)
    double k_cond = 0.01; // heat conductivity
    double re = 100.0;    // cavity Reynolds number
    double u_mag = 2.0;   // velocity/forcing magnitude where applicable
    double c_wave = 1.0;  // membrane wave speed

    bool is_2d() const { return problem == Problem::wave_2d || problem == Problem::lid_cavity; }

    void validate() const {
        grid.validate();
        if (m == 0 || n_t == 0 || m > n_t)
            throw std::invalid_argument("ProblemSpec: need 1 <= m <= n_t");
        if (!(t_final > 0.0))
            throw std::invalid_argument("ProblemSpec: t_final must be positive");
        if (is_2d()) {
            if (grid.dims != 2 || grid.n[0] != grid.n[1])
                throw std::invalid_argument("ProblemSpec: this problem needs a square 2D grid");
        } else if (grid.dims != 1) {
            throw std::invalid_argument("ProblemSpec: this problem needs a 1D grid");
        }
        switch (problem) {
        case Problem::stokes_second:
        case Problem::burgers_riemann:
        case Problem::burgers_periodic:
            if (!(nu > 0.0))
                throw std::invalid_argument("ProblemSpec: nu must be positive");
            break;
        case Problem::heat_1d:
            if (!(k_cond > 0.0))
                throw std::invalid_argument("ProblemSpec: k_cond must be positive");
            break;
        case Problem::lid_cavity:
            if (!(re > 0.0))
                throw std::invalid_argument("ProblemSpec: re must be positive");
            break;
        case Problem::wave_2d:
            break;
        default:
            throw std::invalid_argument("ProblemSpec: unknown problem tag");
        }
    }

    // Output times: the last m steps of the n_t-step ladder ending at t_final.
    double output_time(std::size_t j) const {
        return t_final * static_cast<double>(n_t - m + 1 + j) / static_cast<double>(n_t);
    }
};

struct Dataset {
    ProblemSpec spec;
    std::size_t n_samples = 0;
    std::vector<double> inputs;           // n_samples x points
    std::vector<double> outputs;          // n_samples x m x points
    std::vector<std::uint32_t> train_idx; // disjoint from test_idx
    std::vector<std::uint32_t> test_idx;
};

// Paper-style sizes by task dimensionality (space plus time): single-step 1D
// problems use 600 samples split 500/100 with one output step; multi-step 1D
// uses 1200 split 1000/200 with 200 steps keeping 25; 2D-space problems keep
// 25 of 30 steps.
struct TableDefaults {
    std::size_t n_data, n_train, n_test, n_t, m;
};

inline TableDefaults table_defaults(std::size_t dims_with_time) {
    switch (dims_with_time) {
    case 1: return {600, 500, 100, 1, 1};
    case 2: return {1200, 1000, 200, 200, 25};
    case 3: return {1200, 1000, 200, 30, 25};
    default: throw std::invalid_argument("table_defaults: dims must be 1, 2, or 3");
    }
}

inline ProblemSpec default_spec(Problem p, std::size_t resolution, bool multi_step,
                                std::uint64_t seed = 0) {
    ProblemSpec spec;
    spec.problem = p;
    spec.seed = seed;
    const bool two_d = (p == Problem::wave_2d || p == Problem::lid_cavity);
    TableDefaults td = table_defaults(two_d ? 3 : (multi_step ? 2 : 1));
    spec.n_t = td.n_t;
    spec.m = td.m;
    spec.grid = two_d ? Grid::square(resolution, resolution) : Grid::line(resolution);
    switch (p) {
    case Problem::stokes_second: spec.t_final = 2.0; spec.u_mag = 2.0; spec.nu = 0.1; break;
    case Problem::burgers_riemann: spec.t_final = 1.2; spec.nu = 0.1; break;
    case Problem::burgers_periodic: spec.t_final = 1.0; spec.nu = 0.1; break;
    case Problem::heat_1d: spec.t_final = 2.0; spec.u_mag = 5.0; spec.k_cond = 0.01; break;
    case Problem::wave_2d: spec.t_final = 2.0; spec.c_wave = 1.0; break;
    case Problem::lid_cavity: spec.t_final = 2.0; spec.re = 100.0; break;
    default: throw std::invalid_argument("default_spec: unknown problem tag");
    }
    return spec;
}

// The boundary family each problem trains against.
inline BoundarySpec problem_bc(const ProblemSpec& spec) {
    BoundarySpec bc;
    switch (spec.problem) {
    case Problem::stokes_second:
        bc.kind = BcKind::dirichlet;
        bc.side = Side::left;
        break;
    case Problem::burgers_riemann:
    case Problem::lid_cavity:
        bc.kind = BcKind::dirichlet;
        bc.side = Side::both;
        break;
    case Problem::burgers_periodic:
        bc.kind = BcKind::periodic;
        bc.side = Side::both;
        break;
    case Problem::heat_1d:
    case Problem::wave_2d:
        bc.kind = BcKind::neumann;
        bc.side = Side::both;
        break;
    default:
        throw std::invalid_argument("problem_bc: unknown problem tag");
    }
    return bc;
}

namespace pdedetail {

inline void generate_sample(const ProblemSpec& spec, std::size_t s, double* input,
                            double* output) {
    const std::size_t pts = spec.grid.points();
    Rng rng(spec.seed, s);
    switch (spec.problem) {
    case Problem::stokes_second: {
        const double omega = rng.uniform(3.0, 4.0);
        const double k = std::sqrt(omega / (2.0 * spec.nu));
        for (std::size_t i = 0; i < pts; ++i) {
            const double y = spec.grid.coord(0, i);
            input[i] = spec.u_mag * std::exp(-k * y) * std::cos(k * y);
        }
        for (std::size_t j = 0; j < spec.m; ++j) {
            const double t = spec.output_time(j);
            for (std::size_t i = 0; i < pts; ++i)
                output[j * pts + i] = stokes_exact(spec.grid.coord(0, i), t, spec.u_mag, omega, spec.nu);
        }
        break;
    }
    case Problem::burgers_riemann: {
        const double uL = 0.8 + 0.01 * rng.gaussian();
        const double uR = 0.0;
        for (std::size_t i = 0; i < pts; ++i) {
            const double x = spec.grid.coord(0, i);
            input[i] = (x <= 0.5) ? uL : uR;
        }
        for (std::size_t j = 0; j < spec.m; ++j) {
            const double t = spec.output_time(j);
            for (std::size_t i = 0; i < pts; ++i)
                output[j * pts + i] = burgers_riemann_exact(spec.grid.coord(0, i), t, uL, uR, spec.nu);
        }
        break;
    }
    case Problem::burgers_periodic: {
        Field u0 = grf_sample(spec.grid, spec.seed, s);
        for (std::size_t i = 0; i < pts; ++i)
            input[i] = u0.v[i];
        Field sol = burgers_periodic_fd_solve(u0, spec.nu, spec.n_t, spec.t_final);
        for (std::size_t j = 0; j < spec.m; ++j) {
            const std::size_t src = spec.n_t - spec.m + j;
            for (std::size_t i = 0; i < pts; ++i)
                output[j * pts + i] = sol.at(src, i);
        }
        break;
    }
    case Problem::heat_1d: {
        const double omega = rng.uniform(2.01, 3.99);
        for (std::size_t i = 0; i < pts; ++i)
            input[i] = std::cos(omega * std::numbers::pi * spec.grid.coord(0, i));
        const std::size_t terms = heat_terms(spec.k_cond, omega, spec.output_time(0));
        for (std::size_t j = 0; j < spec.m; ++j) {
            const double t = spec.output_time(j);
            for (std::size_t i = 0; i < pts; ++i)
                output[j * pts + i] =
                    heat_exact(spec.grid.coord(0, i), t, spec.k_cond, spec.u_mag, omega, terms);
        }
        break;
    }
    case Problem::wave_2d: {
        const double amp = rng.uniform(3.0, 4.0);
        for (std::size_t ix = 0; ix < spec.grid.n[0]; ++ix)
            for (std::size_t iy = 0; iy < spec.grid.n[1]; ++iy)
                input[spec.grid.flat(ix, iy)] =
                    wave_exact(spec.grid.coord(0, ix), spec.grid.coord(1, iy), 0.0, spec.c_wave, amp);
        for (std::size_t j = 0; j < spec.m; ++j) {
            const double t = spec.output_time(j);
            for (std::size_t ix = 0; ix < spec.grid.n[0]; ++ix)
                for (std::size_t iy = 0; iy < spec.grid.n[1]; ++iy)
                    output[j * pts + spec.grid.flat(ix, iy)] =
                        wave_exact(spec.grid.coord(0, ix), spec.grid.coord(1, iy), t, spec.c_wave, amp);
        }
        break;
    }
    case Problem::lid_cavity: {
        const double lid_u = rng.uniform(1.0, 1.5);
        Field w0 = lid_cavity_initial_vorticity(spec.grid.n[0], lid_u);
        for (std::size_t i = 0; i < pts; ++i)
            input[i] = w0.v[i];
        LidCavityResult r = lid_cavity_solve(spec.grid.n[0], spec.re, lid_u, spec.n_t, spec.t_final);
        for (std::size_t j = 0; j < spec.m; ++j) {
            const std::size_t src = spec.n_t - spec.m + j;
            for (std::size_t i = 0; i < pts; ++i)
                output[j * pts + i] = r.vorticity.at(src, i);
        }
        break;
    }
    default:
        throw std::invalid_argument("generate_sample: unknown problem tag");
    }
}

inline std::size_t workers_from_env() {
    if (const char* env = std::getenv("BOONKIT_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && n > 0 && n <= 256)
            return static_cast<std::size_t>(n);
        throw std::invalid_argument("BOONKIT_THREADS must be an integer in [1,256]");
    }
    return 1;
}

} // namespace pdedetail

inline Dataset build_dataset(const ProblemSpec& spec, std::size_t n_data) {
    spec.validate();
    if (n_data == 0)
        throw std::invalid_argument("build_dataset: n_data must be positive");
    const std::size_t pts = spec.grid.points();

    Dataset ds;
    ds.spec = spec;
    ds.n_samples = n_data;
    ds.inputs.assign(n_data * pts, 0.0);
    ds.outputs.assign(n_data * spec.m * pts, 0.0);

    const std::size_t workers = std::min(pdedetail::workers_from_env(), n_data);
    auto run = [&](std::size_t w) {
        for (std::size_t s = w; s < n_data; s += workers)
            pdedetail::generate_sample(spec, s, ds.inputs.data() + s * pts,
                                       ds.outputs.data() + s * spec.m * pts);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
        for (auto& t : pool)
            t.join();
    }

    const std::size_t n_train = n_data * 5 / 6;
    for (std::size_t s = 0; s < n_data; ++s)
        (s < n_train ? ds.train_idx : ds.test_idx).push_back(static_cast<std::uint32_t>(s));
    return ds;
}

} // namespace boon
