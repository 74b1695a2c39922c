#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>
#include <numbers>

#include "boonkit/core/rng.hpp"
#include "boonkit/pde/exact.hpp"
#include "helpers.hpp"

using namespace boon;

namespace {

constexpr double kPi = std::numbers::pi;

double d_dt(const std::function<double(double, double)>& f, double x, double t, double h) {
    return (f(x, t + h) - f(x, t - h)) / (2.0 * h);
}

double d2_dx2(const std::function<double(double, double)>& f, double x, double t, double h) {
    return (f(x + h, t) - 2.0 * f(x, t) + f(x - h, t)) / (h * h);
}

double d_dx(const std::function<double(double, double)>& f, double x, double t, double h) {
    return (f(x + h, t) - f(x - h, t)) / (2.0 * h);
}

} // namespace

TEST_CASE("oscillating plate solution matches its boundary and initial data", "[exact]") {
    const double U = 2.0, omega = 3.5, nu = 0.1;
    const double k = std::sqrt(omega / (2.0 * nu));
    for (double t : {0.0, 0.3, 1.0, 2.0})
        CHECK(stokes_exact(0.0, t, U, omega, nu) == Catch::Approx(U * std::cos(omega * t)).margin(1e-14));
    for (double y : {0.0, 0.25, 0.7, 1.0})
        CHECK(stokes_exact(y, 0.0, U, omega, nu) ==
              Catch::Approx(U * std::exp(-k * y) * std::cos(k * y)).margin(1e-14));
    CHECK_THROWS_AS(stokes_exact(0.1, 0.1, U, omega, 0.0), std::invalid_argument);
}

TEST_CASE("oscillating plate solution solves the diffusion equation", "[exact]") {
    const double U = 2.0, nu = 0.02;
    Rng rng(501);
    auto u = [&](double y, double t) { return stokes_exact(y, t, U, 3.2, nu); };
    const double h = 1e-4;
    for (int trial = 0; trial < 50; ++trial) {
        double y = rng.uniform(0.05, 0.95);
        double t = rng.uniform(0.05, 1.95);
        double residual = d_dt(u, y, t, h) - nu * d2_dx2(u, y, t, h);
        CHECK(std::abs(residual) < 1e-4 * U);
    }
}

TEST_CASE("traveling front hits its plateau values and midpoint", "[exact]") {
    const double uL = 0.8, uR = 0.0, nu = 0.1;
    const double s = 0.5 * (uL + uR);
    for (double t : {0.0, 0.4, 1.0})
        CHECK(burgers_riemann_exact(0.5 + s * t, t, uL, uR, nu) ==
              Catch::Approx(0.5 * (uL + uR)).margin(1e-14));
    CHECK(burgers_riemann_exact(80.0, 0.5, uL, uR, nu) == Catch::Approx(uR).margin(1e-12));
    CHECK(burgers_riemann_exact(-80.0, 0.5, uL, uR, nu) == Catch::Approx(uL).margin(1e-12));
    CHECK_THROWS_AS(burgers_riemann_exact(0.5, 0.5, uL, uR, -1.0), std::invalid_argument);
}

TEST_CASE("traveling front solves the viscous conservation law", "[exact]") {
    const double uL = 0.9, uR = 0.1, nu = 0.05;
    Rng rng(502);
    auto u = [&](double x, double t) { return burgers_riemann_exact(x, t, uL, uR, nu); };
    auto flux = [&](double x, double t) {
        double v = u(x, t);
        return 0.5 * v * v;
    };
    const double h = 1e-4;
    for (int trial = 0; trial < 50; ++trial) {
        double x = rng.uniform(0.05, 0.95);
        double t = rng.uniform(0.0, 1.2);
        double residual = d_dt(u, x, t, h) + d_dx(flux, x, t, h) - nu * d2_dx2(u, x, t, h);
        CHECK(std::abs(residual) < 1e-4 * uL);
    }
}

TEST_CASE("heat series satisfies the forced heat equation", "[exact]") {
    const double k = 0.01, U = 5.0, omega = 2.7;
    std::size_t terms = heat_terms(k, omega, 0.1);
    auto u = [&](double x, double t) { return heat_exact(x, t, k, U, omega, terms); };
    Rng rng(503);
    const double h = 1e-4;
    for (int trial = 0; trial < 40; ++trial) {
        double x = rng.uniform(0.05, 0.95);
        double t = rng.uniform(0.1, 2.0);
        double f = U * kPi * x * x * 0.5 * std::cos(kPi * t);
        double residual = d_dt(u, x, t, h) - k * d2_dx2(u, x, t, h) - f;
        CHECK(std::abs(residual) < 1e-4 * U);
    }
}

TEST_CASE("heat series reproduces both flux boundary conditions", "[exact]") {
    const double k = 0.01, U = 5.0, omega = 3.3;
    std::size_t terms = heat_terms(k, omega, 0.1);
    auto u = [&](double x, double t) { return heat_exact(x, t, k, U, omega, terms); };
    // One-sided second-order stencils, h small enough that the O(h^2) error
    // dominates the series truncation but stays well under tolerance.
    const double h = 1e-3;
    for (double t : {0.1, 0.5, 1.0, 1.7}) {
        double left = (-3.0 * u(0.0, t) + 4.0 * u(h, t) - u(2.0 * h, t)) / (2.0 * h);
        double right = (3.0 * u(1.0, t) - 4.0 * u(1.0 - h, t) + u(1.0 - 2.0 * h, t)) / (2.0 * h);
        CHECK(std::abs(left) < 1e-4 * U);
        CHECK(std::abs(right - U * std::sin(kPi * t)) < 1e-4 * U);
    }
}

TEST_CASE("heat series converges to its initial profile as terms grow", "[exact]") {
    const double k = 0.01, U = 5.0, omega = 3.14;
    auto rms_error = [&](std::size_t terms) {
        double acc = 0.0;
        int count = 0;
        for (double x = 0.0; x <= 1.0 + 1e-12; x += 0.01) {
            double diff = heat_exact(x, 0.0, k, U, omega, terms) - std::cos(omega * kPi * x);
            acc += diff * diff;
            ++count;
        }
        return std::sqrt(acc / count);
    };
    double coarse = rms_error(200);
    double fine = rms_error(2000);
    CHECK(fine < coarse);
    CHECK(fine < 2e-3);
    CHECK(heat_terms(k, omega, 0.0) == 2000);
    CHECK(heat_terms(k, omega, 0.1) < 2000);
    CHECK_THROWS_AS(heat_exact(0.5, 0.1, k, U, omega, 0), std::invalid_argument);
}

TEST_CASE("resonant frequency selects the unit coefficient branch", "[exact]") {
    CHECK(pdedetail::heat_coefficient(3.0, 3) == 1.0);
    CHECK(pdedetail::heat_coefficient(3.0 + 1e-13, 3) == 1.0);
    // The generic branch approaches the resonant value continuously.
    CHECK(pdedetail::heat_coefficient(3.0 + 1e-6, 3) == Catch::Approx(1.0).margin(1e-5));
    CHECK(pdedetail::heat_coefficient(2.5, 3) != 1.0);
}

TEST_CASE("membrane mode matches its initial data and zero-flux walls", "[exact]") {
    const double c = 1.0, k = 3.4;
    for (double x : {0.0, 0.3, 1.0})
        for (double y : {0.0, 0.6, 1.0})
            CHECK(wave_exact(x, y, 0.0, c, k) ==
                  Catch::Approx(k * std::cos(kPi * x) * std::cos(kPi * y)).margin(1e-14));
    const double h = 1e-4;
    for (double t : {0.2, 1.0, 1.9}) {
        for (double w : {0.15, 0.5, 0.85}) {
            double dx0 = (-3.0 * wave_exact(0.0, w, t, c, k) + 4.0 * wave_exact(h, w, t, c, k) -
                          wave_exact(2.0 * h, w, t, c, k)) /
                         (2.0 * h);
            double dy1 = (3.0 * wave_exact(w, 1.0, t, c, k) - 4.0 * wave_exact(w, 1.0 - h, t, c, k) +
                          wave_exact(w, 1.0 - 2.0 * h, t, c, k)) /
                         (2.0 * h);
            CHECK(std::abs(dx0) < 1e-6 * k);
            CHECK(std::abs(dy1) < 1e-6 * k);
        }
    }
}

TEST_CASE("membrane mode satisfies the wave equation", "[exact]") {
    const double c = 1.0, k = 3.7;
    Rng rng(504);
    const double h = 1e-4;
    for (int trial = 0; trial < 40; ++trial) {
        double x = rng.uniform(0.05, 0.95);
        double y = rng.uniform(0.05, 0.95);
        double t = rng.uniform(0.1, 1.9);
        auto ut = [&](double tt, double) { return wave_exact(x, y, tt, c, k); };
        auto ux = [&](double xx, double) { return wave_exact(xx, y, t, c, k); };
        auto uy = [&](double yy, double) { return wave_exact(x, yy, t, c, k); };
        double utt = d2_dx2(ut, t, 0.0, h);
        double lap = d2_dx2(ux, x, t, h) + d2_dx2(uy, y, t, h);
        CHECK(std::abs(utt - c * c * lap) < 1e-3 * k);
    }
}
