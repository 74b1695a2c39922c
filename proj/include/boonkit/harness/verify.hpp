#pragma once

// Self-check suites behind the `verify` subcommand: fast corrections against
// the dense transfer-matrix oracles, bound identities against directly
// computed norms, the reverse-mode gradient against finite differences, and
// the exact solutions against their PDEs. The dense oracles are injectable so
// the runner itself can be tested: swapping in a corrupted oracle must fail
// the matching suite, by name.

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "boonkit/bc/bounds.hpp"
#include "boonkit/bc/oracle.hpp"
#include "boonkit/core/kernel.hpp"
#include "boonkit/nn/loss.hpp"
#include "boonkit/nn/operator.hpp"
#include "boonkit/pde/exact.hpp"

namespace boon {

struct VerifyOracles {
    std::function<std::vector<double>(const std::vector<double>&, std::size_t, double, double, Side)>
        dirichlet = [](const std::vector<double>& k, std::size_t n, double alpha_t, double u0_b,
                       Side side) { return dense_dirichlet(k, n, alpha_t, u0_b, side); };
    std::function<std::vector<double>(const std::vector<double>&, std::size_t, double, double,
                                      const FDStencil&)>
        neumann = [](const std::vector<double>& k, std::size_t n, double alpha_t, double u0_b,
                     const FDStencil& st) { return dense_neumann(k, n, alpha_t, u0_b, st); };
    std::function<std::vector<double>(const std::vector<double>&, std::size_t, PeriodicWeights)>
        periodic = [](const std::vector<double>& k, std::size_t n, PeriodicWeights w) {
            return dense_periodic(k, n, w);
        };
};

struct VerifySuite {
    std::string name;
    std::function<std::string()> run; // empty string = pass, otherwise failure detail
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace harnessdetail {

inline std::string check_tol(const std::string& where, double got, double tol) {
    if (got <= tol)
        return "";
    std::ostringstream os;
    os << where << ": residual " << got << " exceeds " << tol;
    return os.str();
}

} // namespace harnessdetail

// The standard suite set. Each suite returns its first failure as text.
inline std::vector<VerifySuite> verify_suites(const VerifyOracles& oracles = {}) {
    namespace hd = harnessdetail;
    std::vector<VerifySuite> suites;

    suites.push_back({"lemma.dirichlet.equivalence", [oracles] {
        Rng rng(8101);
        for (std::size_t n : {8u, 16u, 32u})
            for (int trial = 0; trial < 10; ++trial) {
                Grid g = Grid::line(n);
                DenseKernel K = DenseKernel::random(g, rng);
                Field u0(g, 1);
                for (double& x : u0.v)
                    x = rng.uniform(-1.0, 1.0);
                double alpha_t = rng.uniform(-2.0, 2.0);
                for (Side side : {Side::left, Side::right}) {
                    std::size_t b = side == Side::left ? 0 : n - 1;
                    Field fast = correct_dirichlet(K, u0, alpha_t, side);
                    auto want = bcdetail::dense_apply(
                        oracles.dirichlet(K.matrix(), n, alpha_t, u0.v[b], side), n, u0.v);
                    std::ostringstream os;
                    os << "n=" << n << " trial=" << trial
                       << " side=" << (side == Side::left ? "left" : "right");
                    std::string err = hd::check_tol(
                        os.str(), l2_diff(fast.v, want) / std::max(l2_norm(want), 1e-12), 1e-10);
                    if (!err.empty())
                        return err;
                }
                // two-sided form, same dense arbiter family
                double ar = rng.uniform(-2.0, 2.0);
                Field both = correct_dirichlet_both(K, u0, alpha_t, ar);
                auto wb = bcdetail::dense_apply(
                    dense_dirichlet_both(K.matrix(), n, alpha_t, u0.v[0], ar, u0.v[n - 1]), n, u0.v);
                std::string err = hd::check_tol("two-sided n=" + std::to_string(n),
                                                l2_diff(both.v, wb) / std::max(l2_norm(wb), 1e-12), 1e-10);
                if (!err.empty())
                    return err;
            }
        return std::string();
    }});

    suites.push_back({"lemma.neumann.equivalence", [oracles] {
        Rng rng(8102);
        for (std::size_t n : {8u, 16u, 32u})
            for (int order : {1, 2})
                for (int trial = 0; trial < 10; ++trial) {
                    Grid g = Grid::line(n);
                    DenseKernel K = DenseKernel::random(g, rng);
                    Field u0(g, 1);
                    for (double& x : u0.v)
                        x = rng.uniform(-1.0, 1.0);
                    double alpha_t = rng.uniform(-2.0, 2.0);
                    for (Side side : {Side::left, Side::right}) {
                        std::size_t b = side == Side::left ? 0 : n - 1;
                        FDStencil st = fd_coefficients(order, g.dx(), side);
                        Field fast = correct_neumann(K, u0, alpha_t, st);
                        auto want = bcdetail::dense_apply(
                            oracles.neumann(K.matrix(), n, alpha_t, u0.v[b], st), n, u0.v);
                        std::ostringstream os;
                        os << "n=" << n << " order=" << order << " trial=" << trial;
                        std::string err = hd::check_tol(
                            os.str(), l2_diff(fast.v, want) / std::max(l2_norm(want), 1e-12), 1e-10);
                        if (!err.empty())
                            return err;
                    }
                }
        return std::string();
    }});

    suites.push_back({"lemma.periodic.equivalence", [oracles] {
        Rng rng(8103);
        for (std::size_t n : {8u, 16u, 32u})
            for (int trial = 0; trial < 10; ++trial) {
                Grid g = Grid::line(n);
                DenseKernel K = DenseKernel::random(g, rng);
                Field u0(g, 1);
                for (double& x : u0.v)
                    x = rng.uniform(-1.0, 1.0);
                double a = rng.uniform(0.0, 1.0);
                PeriodicWeights w{a, 1.0 - a};
                Field fast = correct_periodic(K, u0, w);
                auto want = bcdetail::dense_apply(oracles.periodic(K.matrix(), n, w), n, u0.v);
                std::ostringstream os;
                os << "n=" << n << " trial=" << trial;
                std::string err = hd::check_tol(
                    os.str(), l2_diff(fast.v, want) / std::max(l2_norm(want), 1e-12), 1e-10);
                if (!err.empty())
                    return err;
            }
        return std::string();
    }});

    suites.push_back({"bounds.periodic.equality", [] {
        Rng rng(8201);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t n = 8 + static_cast<std::size_t>(rng.next_u64() % 25);
            Grid g = Grid::line(n);
            DenseKernel K = DenseKernel::random(g, rng);
            std::vector<double> u0(n);
            for (double& x : u0)
                x = rng.uniform(-1.0, 1.0);
            double a = rng.uniform(0.0, 1.0);
            PeriodicWeights w{a, 1.0 - a};
            auto u = bcdetail::dense_apply(K.matrix(), n, u0);
            auto ub = bcdetail::dense_apply(dense_periodic(K.matrix(), n, w), n, u0);
            std::string err = hd::check_tol("trial " + std::to_string(trial),
                                            std::abs(l2_diff(u, ub) - bound_periodic(u, w)), 1e-8);
            if (!err.empty())
                return err;
        }
        return std::string();
    }});

    suites.push_back({"bounds.dirichlet.equality", [] {
        Rng rng(8202);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t n = 8 + static_cast<std::size_t>(rng.next_u64() % 25);
            Grid g = Grid::line(n);
            DenseKernel K = DenseKernel::random(g, rng);
            std::vector<double> u0(n);
            for (double& x : u0)
                x = rng.uniform(-1.0, 1.0);
            double alpha_t = rng.uniform(-2.0, 2.0);
            auto u = bcdetail::dense_apply(K.matrix(), n, u0);
            auto ub = bcdetail::dense_apply(dense_dirichlet(K.matrix(), n, alpha_t, u0[0]), n, u0);
            double direct = l2_diff(u, ub);
            double predicted = bound_dirichlet(K.matrix(), n, u0, alpha_t);
            std::string err = hd::check_tol("trial " + std::to_string(trial),
                                            std::abs(direct - predicted) / (1.0 + predicted), 1e-8);
            if (!err.empty())
                return err;
        }
        return std::string();
    }});

    suites.push_back({"bounds.neumann.inequality", [] {
        Rng rng(8203);
        for (int trial = 0; trial < 200; ++trial) {
            std::size_t n = 8 + static_cast<std::size_t>(rng.next_u64() % 25);
            Grid g = Grid::line(n);
            DenseKernel K = DenseKernel::random(g, rng);
            std::vector<double> u0(n);
            for (double& x : u0)
                x = rng.uniform(-1.0, 1.0);
            double alpha_t = rng.uniform(-2.0, 2.0);
            FDStencil st = fd_coefficients(2, g.dx(), Side::left);
            auto u = bcdetail::dense_apply(K.matrix(), n, u0);
            auto ub = bcdetail::dense_apply(dense_neumann(K.matrix(), n, alpha_t, u0[0], st), n, u0);
            double direct = l2_diff(u, ub);
            double predicted = bound_neumann(K.matrix(), n, u0, alpha_t, st);
            if (direct > predicted + 1e-8 * (1.0 + predicted)) {
                std::ostringstream os;
                os << "trial " << trial << ": correction size " << direct
                   << " exceeds the bound " << predicted;
                return os.str();
            }
        }
        return std::string();
    }});

    suites.push_back({"gradient.finite_difference", [] {
        const BoundarySpec wirings[] = {
            {BcKind::dirichlet, Side::both, 2, {}},
            {BcKind::neumann, Side::both, 2, {}},
            {BcKind::periodic, Side::both, 2, {0.5, 0.5}},
        };
        const char* names[] = {"dirichlet", "neumann", "periodic"};
        const std::size_t n = 16;
        Grid g = Grid::line(n);
        for (int w = 0; w < 3; ++w) {
            const BoundarySpec& bc = wirings[w];
            OperatorShape sh{5, 3, 2};
            OperatorParams P = OperatorParams::create(sh, bc, 91);
            Rng rng(92);
            Field u0(g, 1), target(g, 2);
            for (double& x : u0.v)
                x = rng.uniform(-1.0, 1.0);
            for (double& x : target.v)
                x = rng.uniform(-1.0, 1.0);
            BoundaryData bd;
            if (bc.kind != BcKind::periodic) {
                bd.left = {0.4, -0.2};
                bd.right = {-0.7, 0.9};
            }
            ModelTape T;
            Field pred = model_forward(P, u0, bd, &T);
            LossGrad lg = relative_l2_loss_grad(pred, target);
            std::vector<double> grad = model_backward(P, T, lg.grad);
            const double eps = 1e-6;
            for (std::size_t i = 0; i < P.theta.size(); ++i) {
                const double keep = P.theta[i];
                P.theta[i] = keep + eps;
                double lp = relative_l2_loss_grad(model_forward(P, u0, bd), target).value;
                P.theta[i] = keep - eps;
                double lm = relative_l2_loss_grad(model_forward(P, u0, bd), target).value;
                P.theta[i] = keep;
                double fd = (lp - lm) / (2.0 * eps);
                double err = std::abs(grad[i] - fd) / std::max({std::abs(grad[i]), std::abs(fd), 1e-4});
                if (err > 1e-5) {
                    std::ostringstream os;
                    os << names[w] << " wiring, parameter " << i << ": relative error " << err;
                    return os.str();
                }
            }
        }
        return std::string();
    }});

    suites.push_back({"residual.heat", [] {
        const double k = 0.01, U = 5.0, omega = 2.7, h = 1e-4;
        std::size_t terms = heat_terms(k, omega, 0.1);
        Rng rng(8301);
        for (int trial = 0; trial < 20; ++trial) {
            double x = rng.uniform(0.05, 0.95);
            double t = rng.uniform(0.1, 2.0);
            auto u = [&](double xx, double tt) { return heat_exact(xx, tt, k, U, omega, terms); };
            double ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
            double uxx = (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
            double f = U * std::numbers::pi * x * x * 0.5 * std::cos(std::numbers::pi * t);
            std::string err = hd::check_tol("trial " + std::to_string(trial),
                                            std::abs(ut - k * uxx - f), 1e-4 * U);
            if (!err.empty())
                return err;
        }
        return std::string();
    }});

    suites.push_back({"residual.stokes", [] {
        const double U = 2.0, omega = 8.0, nu = 0.3, h = 1e-4;
        Rng rng(8302);
        for (int trial = 0; trial < 20; ++trial) {
            double y = rng.uniform(0.05, 0.95);
            double t = rng.uniform(0.1, 2.0);
            auto u = [&](double yy, double tt) { return stokes_exact(yy, tt, U, omega, nu); };
            double ut = (u(y, t + h) - u(y, t - h)) / (2.0 * h);
            double uyy = (u(y + h, t) - 2.0 * u(y, t) + u(y - h, t)) / (h * h);
            std::string err = hd::check_tol("trial " + std::to_string(trial),
                                            std::abs(ut - nu * uyy), 1e-4 * U);
            if (!err.empty())
                return err;
        }
        return std::string();
    }});

    suites.push_back({"residual.burgers_riemann", [] {
        const double uL = 1.2, uR = 0.2, nu = 0.08, h = 1e-4;
        Rng rng(8303);
        for (int trial = 0; trial < 20; ++trial) {
            double x = rng.uniform(0.2, 0.8);
            double t = rng.uniform(0.1, 0.6);
            auto u = [&](double xx, double tt) { return burgers_riemann_exact(xx, tt, uL, uR, nu); };
            double ut = (u(x, t + h) - u(x, t - h)) / (2.0 * h);
            double ux = (u(x + h, t) - u(x - h, t)) / (2.0 * h);
            double uxx = (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
            std::string err = hd::check_tol("trial " + std::to_string(trial),
                                            std::abs(ut + u(x, t) * ux - nu * uxx), 1e-4 * uL);
            if (!err.empty())
                return err;
        }
        return std::string();
    }});

    suites.push_back({"residual.wave", [] {
        const double c = 1.0, k = 3.7, h = 1e-4;
        Rng rng(8304);
        for (int trial = 0; trial < 20; ++trial) {
            double x = rng.uniform(0.05, 0.95);
            double y = rng.uniform(0.05, 0.95);
            double t = rng.uniform(0.1, 1.9);
            auto w = [&](double xx, double yy, double tt) { return wave_exact(xx, yy, tt, c, k); };
            double utt = (w(x, y, t + h) - 2.0 * w(x, y, t) + w(x, y, t - h)) / (h * h);
            double lap = (w(x + h, y, t) - 2.0 * w(x, y, t) + w(x - h, y, t)) / (h * h) +
                         (w(x, y + h, t) - 2.0 * w(x, y, t) + w(x, y - h, t)) / (h * h);
            std::string err = hd::check_tol("trial " + std::to_string(trial),
                                            std::abs(utt - c * c * lap), 1e-3 * k);
            if (!err.empty())
                return err;
        }
        return std::string();
    }});

    return suites;
}

// Runs the suites whose names contain `filter` (all when empty), stopping at
// the first failure.
inline std::vector<SuiteResult> run_verify(const std::string& filter = "",
                                           const VerifyOracles& oracles = {}) {
    std::vector<SuiteResult> results;
    for (const VerifySuite& s : verify_suites(oracles)) {
        if (!filter.empty() && s.name.find(filter) == std::string::npos)
            continue;
        std::string detail = s.run();
        results.push_back({s.name, detail.empty(), detail});
        if (!detail.empty())
            break;
    }
    return results;
}

} // namespace boon
