#pragma once

// Lid-driven cavity reference solver on [0,1]^2. Chorin projection on a MAC
// staggered grid with Nc = N-1 cells per side: u on vertical faces, v on
// horizontal faces, pressure at cell centers, vorticity reported on the N x N
// corner nodes. Advection uses second-order Adams-Bashforth (Euler first
// step), diffusion Crank-Nicolson via conjugate-gradient solves, and the
// pressure Poisson equation is diagonalized by the type-II cosine transform
// (mirrored-ghost Neumann walls). A red-black SOR Poisson solver is kept as
// an independent cross-check of the transform path.
//
// Wall handling: no-slip values live on fixed face unknowns where a face lies
// on a wall; tangential wall values enter through mirrored ghosts
// (q_ghost = -q_in for a still wall, q_ghost = 2U - q_in under the lid).
// Vorticity w = dv/dx - du/dy uses the same ghost convention, which equals
// differencing bilinearly averaged corner velocities at the half step.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "boonkit/core/dct.hpp"
#include "boonkit/core/field.hpp"

namespace boon {

struct LidCavityResult {
    Field vorticity;                  // N_t channels on the N x N node grid
    std::vector<double> max_divergence; // per output step, max over its substeps
    // Final-time face velocities, exposed for boundary verification.
    std::vector<double> u_faces; // (Nc+1) x Nc, index i*Nc + j
    std::vector<double> v_faces; // Nc x (Nc+1), index i*(Nc+1) + j
    std::size_t cells = 0;
};

namespace pdedetail {

struct MacGrid {
    std::size_t nc;
    double h;
    std::size_t iu(std::size_t i, std::size_t j) const { return i * nc + j; }
    std::size_t iv(std::size_t i, std::size_t j) const { return i * (nc + 1) + j; }
    std::size_t ic(std::size_t i, std::size_t j) const { return i * nc + j; }
};

// Homogeneous part of the u-momentum Laplacian: walls at i=0, i=nc are fixed
// zero unknowns, y-ghosts are mirrored (still wall and lid alike contribute
// -3 on the diagonal; the lid's constant lands in the right-hand side).
inline void laplacian_u(const MacGrid& g, const std::vector<double>& x, std::vector<double>& out) {
    const std::size_t nc = g.nc;
    const double inv_h2 = 1.0 / (g.h * g.h);
    for (std::size_t j = 0; j < nc; ++j)
        out[g.iu(0, j)] = out[g.iu(nc, j)] = 0.0;
    for (std::size_t i = 1; i < nc; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            const double here = x[g.iu(i, j)];
            double acc = x[g.iu(i - 1, j)] + x[g.iu(i + 1, j)] - 2.0 * here;
            if (j == 0)
                acc += x[g.iu(i, 1)] - 3.0 * here; // mirrored ghost below
            else if (j == nc - 1)
                acc += x[g.iu(i, j - 1)] - 3.0 * here; // lid ghost 2U-here; U part in rhs
            else
                acc += x[g.iu(i, j - 1)] + x[g.iu(i, j + 1)] - 2.0 * here;
            out[g.iu(i, j)] = acc * inv_h2;
        }
    }
}

inline void laplacian_v(const MacGrid& g, const std::vector<double>& x, std::vector<double>& out) {
    const std::size_t nc = g.nc;
    const double inv_h2 = 1.0 / (g.h * g.h);
    for (std::size_t i = 0; i < nc; ++i)
        out[g.iv(i, 0)] = out[g.iv(i, nc)] = 0.0;
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 1; j < nc; ++j) {
            const double here = x[g.iv(i, j)];
            double acc = x[g.iv(i, j - 1)] + x[g.iv(i, j + 1)] - 2.0 * here;
            if (i == 0)
                acc += x[g.iv(1, j)] - 3.0 * here;
            else if (i == nc - 1)
                acc += x[g.iv(i - 1, j)] - 3.0 * here;
            else
                acc += x[g.iv(i - 1, j)] + x[g.iv(i + 1, j)] - 2.0 * here;
            out[g.iv(i, j)] = acc * inv_h2;
        }
    }
}

// CG for (I - kappa L) x = b on the face arrays; fixed wall unknowns stay 0
// because b and every iterate vanish there.
template <typename ApplyL>
inline void solve_helmholtz(const ApplyL& lap, double kappa, const std::vector<double>& b,
                            std::vector<double>& x, std::vector<double>& scratch) {
    const std::size_t n = b.size();
    std::vector<double> r(n), p(n);
    lap(x, scratch);
    double rr = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        r[k] = b[k] - (x[k] - kappa * scratch[k]);
        p[k] = r[k];
        rr += r[k] * r[k];
    }
    double bb = 0.0;
    for (double v : b)
        bb += v * v;
    const double tol2 = 1e-28 * std::max(bb, 1.0);
    for (std::size_t iter = 0; iter < 500 && rr > tol2; ++iter) {
        lap(p, scratch);
        double pap = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            scratch[k] = p[k] - kappa * scratch[k];
            pap += p[k] * scratch[k];
        }
        const double alpha = rr / pap;
        double rr_next = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            x[k] += alpha * p[k];
            r[k] -= alpha * scratch[k];
            rr_next += r[k] * r[k];
        }
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t k = 0; k < n; ++k)
            p[k] = r[k] + beta * p[k];
    }
}

// Solves L phi = rhs with mirrored-ghost Neumann walls by a 2D DCT-II; the
// (0,0) mode is gauged to zero. Throws if the verified residual exceeds tol.
inline std::vector<double> poisson_dct(const MacGrid& g, std::vector<double> rhs, double tol) {
    const std::size_t nc = g.nc;
    double mean = 0.0;
    for (double v : rhs)
        mean += v;
    mean /= static_cast<double>(nc * nc);
    for (double& v : rhs)
        v -= mean; // compatibility gauge

    std::vector<double> row(nc);
    std::vector<std::vector<double>> hat(nc, std::vector<double>(nc));
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nc; ++j)
            row[j] = rhs[g.ic(i, j)];
        hat[i] = dct2(row);
    }
    std::vector<double> col(nc);
    for (std::size_t j = 0; j < nc; ++j) {
        for (std::size_t i = 0; i < nc; ++i)
            col[i] = hat[i][j];
        col = dct2(col);
        for (std::size_t i = 0; i < nc; ++i)
            hat[i][j] = col[i];
    }

    const double inv_h2 = 1.0 / (g.h * g.h);
    auto lambda = [&](std::size_t k) {
        return (2.0 * std::cos(std::numbers::pi * double(k) / double(nc)) - 2.0) * inv_h2;
    };
    for (std::size_t ki = 0; ki < nc; ++ki)
        for (std::size_t kj = 0; kj < nc; ++kj)
            hat[ki][kj] = (ki == 0 && kj == 0) ? 0.0 : hat[ki][kj] / (lambda(ki) + lambda(kj));

    for (std::size_t j = 0; j < nc; ++j) {
        for (std::size_t i = 0; i < nc; ++i)
            col[i] = hat[i][j];
        col = idct2(col);
        for (std::size_t i = 0; i < nc; ++i)
            hat[i][j] = col[i];
    }
    std::vector<double> phi(nc * nc);
    for (std::size_t i = 0; i < nc; ++i) {
        row = idct2(hat[i]);
        for (std::size_t j = 0; j < nc; ++j)
            phi[g.ic(i, j)] = row[j];
    }

    // Verify against the actual stencil; mismatch means a transform bug.
    double worst = 0.0, scale = 1.0;
    for (double v : rhs)
        scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < nc; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            auto at = [&](long a, long b) {
                a = std::clamp<long>(a, 0, long(nc) - 1);
                b = std::clamp<long>(b, 0, long(nc) - 1);
                return phi[g.ic(std::size_t(a), std::size_t(b))];
            };
            double lap = (at(long(i) - 1, long(j)) + at(long(i) + 1, long(j)) +
                          at(long(i), long(j) - 1) + at(long(i), long(j) + 1) -
                          4.0 * phi[g.ic(i, j)]) * inv_h2;
            worst = std::max(worst, std::abs(lap - rhs[g.ic(i, j)]));
        }
    }
    if (worst > tol * scale) {
        std::ostringstream msg;
        msg << "poisson_dct: residual " << worst << " exceeds tol " << tol * scale;
        throw std::runtime_error(msg.str());
    }
    return phi;
}

// Red-black SOR fallback for the same system; used to cross-check poisson_dct.
// Throws with the residual history when the sweep budget runs out.
inline std::vector<double> poisson_sor(const MacGrid& g, std::vector<double> rhs, double tol,
                                       std::size_t max_sweeps = 20000) {
    const std::size_t nc = g.nc;
    double mean = 0.0;
    for (double v : rhs)
        mean += v;
    mean /= static_cast<double>(nc * nc);
    for (double& v : rhs)
        v -= mean;

    const double h2 = g.h * g.h;
    const double omega = 2.0 / (1.0 + std::sin(std::numbers::pi / double(nc)));
    std::vector<double> phi(nc * nc, 0.0);
    std::vector<double> history;
    double scale = 1.0;
    for (double v : rhs)
        scale = std::max(scale, std::abs(v));

    auto sweep_color = [&](int color) {
        for (std::size_t i = 0; i < nc; ++i) {
            for (std::size_t j = 0; j < nc; ++j) {
                if (int((i + j) % 2) != color)
                    continue;
                double diag = 0.0, off = 0.0;
                auto add = [&](long a, long b) {
                    if (a < 0 || b < 0 || a >= long(nc) || b >= long(nc)) {
                        diag += 1.0; // mirrored ghost folds onto the center
                    } else {
                        off += phi[g.ic(std::size_t(a), std::size_t(b))];
                    }
                };
                add(long(i) - 1, long(j));
                add(long(i) + 1, long(j));
                add(long(i), long(j) - 1);
                add(long(i), long(j) + 1);
                const double denom = 4.0 - diag;
                const double gs = (off - h2 * rhs[g.ic(i, j)]) / denom;
                phi[g.ic(i, j)] += omega * (gs - phi[g.ic(i, j)]);
            }
        }
    };
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        sweep_color(0);
        sweep_color(1);
        if (sweep % 10 == 9 || sweep + 1 == max_sweeps) {
            double worst = 0.0;
            for (std::size_t i = 0; i < nc; ++i) {
                for (std::size_t j = 0; j < nc; ++j) {
                    auto at = [&](long a, long b) {
                        a = std::clamp<long>(a, 0, long(nc) - 1);
                        b = std::clamp<long>(b, 0, long(nc) - 1);
                        return phi[g.ic(std::size_t(a), std::size_t(b))];
                    };
                    double lap = (at(long(i) - 1, long(j)) + at(long(i) + 1, long(j)) +
                                  at(long(i), long(j) - 1) + at(long(i), long(j) + 1) -
                                  4.0 * phi[g.ic(i, j)]) / h2;
                    worst = std::max(worst, std::abs(lap - rhs[g.ic(i, j)]));
                }
            }
            history.push_back(worst);
            if (worst <= tol * scale) {
                double gauge = 0.0;
                for (double v : phi)
                    gauge += v;
                gauge /= double(nc * nc);
                for (double& v : phi)
                    v -= gauge;
                return phi;
            }
        }
    }
    std::ostringstream msg;
    msg << "poisson_sor: no convergence after " << max_sweeps << " sweeps; residual history:";
    for (std::size_t k = 0; k < history.size(); k += std::max<std::size_t>(1, history.size() / 8))
        msg << " " << history[k];
    msg << " (last " << history.back() << ")";
    throw std::runtime_error(msg.str());
}

} // namespace pdedetail

inline LidCavityResult lid_cavity_solve(std::size_t n_points, double re, double lid_u,
                                        std::size_t n_t, double t_final) {
    if (n_points < 5 || n_points > 257)
        throw std::invalid_argument("lid_cavity_solve: resolution out of range");
    if (!(re > 0.0) || !(t_final > 0.0) || n_t == 0)
        throw std::invalid_argument("lid_cavity_solve: bad Re/N_t/t_final");

    using pdedetail::MacGrid;
    const std::size_t nc = n_points - 1;
    MacGrid g{nc, 1.0 / static_cast<double>(nc)};
    const double h = g.h;

    std::vector<double> u((nc + 1) * nc, 0.0), v(nc * (nc + 1), 0.0);
    std::vector<double> adv_u(u.size(), 0.0), adv_v(v.size(), 0.0);
    std::vector<double> adv_u_prev(u.size(), 0.0), adv_v_prev(v.size(), 0.0);
    std::vector<double> rhs_u(u.size()), rhs_v(v.size());
    std::vector<double> lap_scratch(std::max(u.size(), v.size()));
    std::vector<double> div(nc * nc);

    // Ghost row values for u above/below the strip of interior rows.
    auto u_ghost_top = [&](double inner) { return 2.0 * lid_u - inner; };

    auto compute_advection = [&]() {
        // u du/dx + vbar du/dy at u-points
        for (std::size_t i = 1; i < nc; ++i) {
            for (std::size_t j = 0; j < nc; ++j) {
                const double here = u[g.iu(i, j)];
                const double dudx = (u[g.iu(i + 1, j)] - u[g.iu(i - 1, j)]) / (2.0 * h);
                const double below = (j == 0) ? -here : u[g.iu(i, j - 1)];
                const double above = (j == nc - 1) ? u_ghost_top(here) : u[g.iu(i, j + 1)];
                const double dudy = (above - below) / (2.0 * h);
                const double vbar = 0.25 * (v[g.iv(i - 1, j)] + v[g.iv(i - 1, j + 1)] +
                                            v[g.iv(i, j)] + v[g.iv(i, j + 1)]);
                adv_u[g.iu(i, j)] = here * dudx + vbar * dudy;
            }
        }
        // ubar dv/dx + v dv/dy at v-points
        for (std::size_t i = 0; i < nc; ++i) {
            for (std::size_t j = 1; j < nc; ++j) {
                const double here = v[g.iv(i, j)];
                const double dvdy = (v[g.iv(i, j + 1)] - v[g.iv(i, j - 1)]) / (2.0 * h);
                const double left = (i == 0) ? -here : v[g.iv(i - 1, j)];
                const double right = (i == nc - 1) ? -here : v[g.iv(i + 1, j)];
                const double dvdx = (right - left) / (2.0 * h);
                const double ubar = 0.25 * (u[g.iu(i, j - 1)] + u[g.iu(i, j)] +
                                            u[g.iu(i + 1, j - 1)] + u[g.iu(i + 1, j)]);
                adv_v[g.iv(i, j)] = ubar * dvdx + here * dvdy;
            }
        }
    };

    LidCavityResult result;
    result.cells = nc;
    result.vorticity = Field(Grid::square(n_points, n_points), n_t);
    result.max_divergence.assign(n_t, 0.0);

    bool have_prev = false;
    const double dt_out = t_final / static_cast<double>(n_t);

    for (std::size_t snap = 0; snap < n_t; ++snap) {
        double remaining = dt_out;
        while (remaining > 1e-14 * t_final) {
            double umax = lid_u;
            for (double q : u)
                umax = std::max(umax, std::abs(q));
            for (double q : v)
                umax = std::max(umax, std::abs(q));
            double dt = std::min(0.25 * h / umax, remaining);

            compute_advection();
            const double kappa = dt / (2.0 * re);

            auto lap_u = [&](const std::vector<double>& x, std::vector<double>& out) {
                pdedetail::laplacian_u(g, x, out);
            };
            auto lap_v = [&](const std::vector<double>& x, std::vector<double>& out) {
                pdedetail::laplacian_v(g, x, out);
            };

            // rhs = u + dt*adv_terms + kappa*(L u + 2 g_bc); lid constant 2U/h^2
            pdedetail::laplacian_u(g, u, rhs_u);
            for (std::size_t i = 1; i < nc; ++i) {
                for (std::size_t j = 0; j < nc; ++j) {
                    const std::size_t k = g.iu(i, j);
                    double a = have_prev ? (1.5 * adv_u[k] - 0.5 * adv_u_prev[k]) : adv_u[k];
                    double bc = (j == nc - 1) ? 2.0 * lid_u / (h * h) : 0.0;
                    rhs_u[k] = u[k] - dt * a + kappa * (rhs_u[k] + 2.0 * bc);
                }
            }
            for (std::size_t j = 0; j < nc; ++j)
                rhs_u[g.iu(0, j)] = rhs_u[g.iu(nc, j)] = 0.0;

            pdedetail::laplacian_v(g, v, rhs_v);
            for (std::size_t i = 0; i < nc; ++i) {
                for (std::size_t j = 1; j < nc; ++j) {
                    const std::size_t k = g.iv(i, j);
                    double a = have_prev ? (1.5 * adv_v[k] - 0.5 * adv_v_prev[k]) : adv_v[k];
                    rhs_v[k] = v[k] - dt * a + kappa * rhs_v[k];
                }
                rhs_v[g.iv(i, 0)] = rhs_v[g.iv(i, nc)] = 0.0;
            }

            pdedetail::solve_helmholtz(lap_u, kappa, rhs_u, u, lap_scratch);
            pdedetail::solve_helmholtz(lap_v, kappa, rhs_v, v, lap_scratch);

            // Projection
            for (std::size_t i = 0; i < nc; ++i)
                for (std::size_t j = 0; j < nc; ++j)
                    div[g.ic(i, j)] = (u[g.iu(i + 1, j)] - u[g.iu(i, j)] +
                                       v[g.iv(i, j + 1)] - v[g.iv(i, j)]) / h;
            std::vector<double> rhs_p(div);
            for (double& q : rhs_p)
                q /= dt;
            std::vector<double> phi = pdedetail::poisson_dct(g, rhs_p, 1e-9);

            for (std::size_t i = 1; i < nc; ++i)
                for (std::size_t j = 0; j < nc; ++j)
                    u[g.iu(i, j)] -= dt * (phi[g.ic(i, j)] - phi[g.ic(i - 1, j)]) / h;
            for (std::size_t i = 0; i < nc; ++i)
                for (std::size_t j = 1; j < nc; ++j)
                    v[g.iv(i, j)] -= dt * (phi[g.ic(i, j)] - phi[g.ic(i, j - 1)]) / h;

            double worst_div = 0.0;
            for (std::size_t i = 0; i < nc; ++i)
                for (std::size_t j = 0; j < nc; ++j)
                    worst_div = std::max(worst_div,
                                         std::abs(u[g.iu(i + 1, j)] - u[g.iu(i, j)] +
                                                  v[g.iv(i, j + 1)] - v[g.iv(i, j)]) / h);
            result.max_divergence[snap] = std::max(result.max_divergence[snap], worst_div);

            adv_u_prev = adv_u;
            adv_v_prev = adv_v;
            have_prev = true;
            remaining -= dt;
        }

        // Vorticity on nodes with mirrored/lid ghosts.
        for (std::size_t i = 0; i <= nc; ++i) {
            for (std::size_t j = 0; j <= nc; ++j) {
                double dvdx;
                if (i == 0)
                    dvdx = 2.0 * v[g.iv(0, j)] / h;
                else if (i == nc)
                    dvdx = -2.0 * v[g.iv(nc - 1, j)] / h;
                else
                    dvdx = (v[g.iv(i, j)] - v[g.iv(i - 1, j)]) / h;
                double dudy;
                if (j == 0)
                    dudy = 2.0 * u[g.iu(i, 0)] / h;
                else if (j == nc)
                    dudy = (2.0 * lid_u - 2.0 * u[g.iu(i, nc - 1)]) / h;
                else
                    dudy = (u[g.iu(i, j)] - u[g.iu(i, j - 1)]) / h;
                result.vorticity.at(snap, result.vorticity.grid.flat(i, j)) = dvdx - dudy;
            }
        }
    }

    if (!result.vorticity.finite())
        throw std::runtime_error("lid_cavity_solve: solution blew up");
    result.u_faces = u;
    result.v_faces = v;
    return result;
}

// Discrete vorticity of the impulsive start (rest fluid, lid already moving):
// zero away from the lid, -2U/h on the top node row. Used as the dataset input.
inline Field lid_cavity_initial_vorticity(std::size_t n_points, double lid_u) {
    if (n_points < 5)
        throw std::invalid_argument("lid_cavity_initial_vorticity: resolution too small");
    const std::size_t nc = n_points - 1;
    const double h = 1.0 / static_cast<double>(nc);
    Field w(Grid::square(n_points, n_points), 1);
    for (std::size_t i = 0; i <= nc; ++i)
        w.v[w.grid.flat(i, nc)] = -2.0 * lid_u / h;
    return w;
}

} // namespace boon
