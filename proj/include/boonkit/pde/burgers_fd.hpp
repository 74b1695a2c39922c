#pragma once

// Reference solver for u_t + (u^2/2)_x = nu u_xx with periodic wrap.
// Conservative local Lax-Friedrichs (Rusanov) flux plus explicit central
// diffusion; forward Euler substeps sized by the combined advective/diffusive
// CFL limit with safety factor 0.4. First order; accuracy comes from
// resolution, robustness from the conservative form.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "boonkit/core/field.hpp"

namespace boon {

struct BurgersFdOptions {
    double cfl_safety = 0.4;
    // A caller-forced substep width. Zero means "pick automatically"; a
    // positive value exceeding the stability limit is rejected.
    double dt = 0.0;
    std::size_t max_substeps = 50'000'000;
};

namespace pdedetail {

inline double burgers_stable_dt(const std::vector<double>& u, double dx, double nu,
                                double safety) {
    double umax = 0.0;
    for (double v : u)
        umax = std::max(umax, std::abs(v));
    double limit = dx * dx / (2.0 * std::max(nu, 1e-300));
    if (umax > 0.0)
        limit = std::min(limit, dx / umax);
    return safety * limit;
}

// One conservative Euler step on the n unique points (index modulo n).
inline void burgers_step(std::vector<double>& u, std::vector<double>& flux, double dx,
                         double nu, double dt) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = (i + 1) % n;
        const double a = std::max(std::abs(u[i]), std::abs(u[r]));
        flux[i] = 0.25 * (u[i] * u[i] + u[r] * u[r]) - 0.5 * a * (u[r] - u[i]);
    }
    const double lam = dt / dx;
    const double mu = nu * dt / (dx * dx);
    double prev = u[n - 1];
    const double first = u[0];
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = (i + n - 1) % n;
        const std::size_t r = (i + 1) % n;
        const double here = u[i];
        const double right = (r == 0) ? first : u[r];
        u[i] = here - lam * (flux[i] - flux[l]) + mu * (right - 2.0 * here + prev);
        prev = here;
    }
}

} // namespace pdedetail

// Returns N_t snapshots as channels, at times j * t_final / N_t for
// j = 1..N_t, on the same endpoint-duplicated grid as u0.
inline Field burgers_periodic_fd_solve(const Field& u0, double nu, std::size_t n_t,
                                       double t_final, const BurgersFdOptions& opt = {}) {
    if (u0.grid.dims != 1 || u0.channels != 1)
        throw std::invalid_argument("burgers_periodic_fd_solve: expected a single-channel 1D field");
    if (!(nu >= 0.0) || n_t == 0 || !(t_final > 0.0))
        throw std::invalid_argument("burgers_periodic_fd_solve: bad nu/n_t/t_final");
    if (!u0.finite())
        throw std::invalid_argument("burgers_periodic_fd_solve: non-finite initial data");
    const std::size_t n = u0.grid.n[0];
    if (std::abs(u0.v[0] - u0.v[n - 1]) > 1e-12)
        throw std::invalid_argument("burgers_periodic_fd_solve: u0 is not periodic");

    const double dx = u0.grid.dx();
    std::vector<double> u(u0.v.begin(), u0.v.end() - 1); // unique points
    std::vector<double> flux(u.size());
    Field out(u0.grid, n_t);

    const double dt_out = t_final / static_cast<double>(n_t);
    std::size_t total_steps = 0;
    for (std::size_t j = 0; j < n_t; ++j) {
        double remaining = dt_out;
        while (remaining > 1e-15 * t_final) {
            const double stable = pdedetail::burgers_stable_dt(u, dx, nu, opt.cfl_safety);
            double dt = std::min(stable, remaining);
            if (opt.dt > 0.0) {
                if (opt.dt > stable) {
                    std::ostringstream msg;
                    msg << "burgers_periodic_fd_solve: CFL violation, dt=" << opt.dt
                        << " exceeds stable dt=" << stable;
                    throw std::invalid_argument(msg.str());
                }
                dt = std::min(opt.dt, remaining);
            }
            if (++total_steps > opt.max_substeps)
                throw std::runtime_error("burgers_periodic_fd_solve: substep budget exhausted");
            pdedetail::burgers_step(u, flux, dx, nu, dt);
            remaining -= dt;
        }
        for (std::size_t i = 0; i < u.size(); ++i)
            out.at(j, i) = u[i];
        out.at(j, n - 1) = u[0];
    }
    if (!out.finite())
        throw std::runtime_error("burgers_periodic_fd_solve: solution blew up");
    return out;
}

} // namespace boon
