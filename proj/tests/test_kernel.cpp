#include <catch2/catch_amalgamated.hpp>

#include "boonkit/core/kernel.hpp"
#include "helpers.hpp"

using namespace boon;

namespace {

// frozen 4x4 instance and its expected product, computed by hand from the
// row-times-vector definition
const std::vector<double> kSmallMatrix = {
    2.0, 0.0, 1.0, 0.0,
    0.0, 1.0, 0.0, -1.0,
    1.0, 1.0, 1.0, 1.0,
    0.5, 0.0, 0.0, 2.0,
};
const std::vector<double> kSmallIn = {1.0, 2.0, 3.0, 4.0};
const std::vector<double> kSmallOut = {5.0, -2.0, 10.0, 8.5};

} // namespace

TEST_CASE("dense kernel matches the triple-loop product", "[kernel]") {
    Grid g = Grid::line(4);
    DenseKernel k(g, kSmallMatrix);
    Field x(g, 1);
    x.v = kSmallIn;
    Field y = k.apply(x);
    CHECK(testutil::max_abs_diff(y.v, kSmallOut) == 0.0);

    Rng rng(21);
    Grid g8 = Grid::line(8);
    DenseKernel kr = DenseKernel::random(g8, rng);
    Field xr(g8, 1);
    xr.v = testutil::random_vec(rng, 8);
    Field yr = kr.apply(xr);
    for (std::size_t i = 0; i < 8; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 8; ++j)
            acc += kr.entry(i, j) * xr.v[j];
        CHECK(yr.v[i] == Catch::Approx(acc).margin(1e-13));
    }
}

TEST_CASE("kernel apply is linear and leaves the input untouched", "[kernel]") {
    Rng rng(22);
    Grid g = Grid::line(16);
    DenseKernel k = DenseKernel::random(g, rng);
    Field x(g, 1), y(g, 1);
    x.v = testutil::random_vec(rng, 16);
    y.v = testutil::random_vec(rng, 16);
    std::vector<double> x_copy = x.v;
    double a = 0.7, b = -1.3;

    Field combo(g, 1);
    for (std::size_t i = 0; i < 16; ++i)
        combo.v[i] = a * x.v[i] + b * y.v[i];
    Field lhs = k.apply(combo);
    Field kx = k.apply(x), ky = k.apply(y);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(lhs.v[i] == Catch::Approx(a * kx.v[i] + b * ky.v[i]).margin(1e-12));
    CHECK(x.v == x_copy);
}

TEST_CASE("call counter is monotone and exact", "[kernel]") {
    Rng rng(23);
    Grid g = Grid::line(8);
    DenseKernel k = DenseKernel::random(g, rng);
    Field x(g, 1);
    x.v = testutil::random_vec(rng, 8);
    CHECK(k.calls() == 0);
    k.apply(x);
    k.apply(x);
    k.apply(x);
    CHECK(k.calls() == 3);
}

TEST_CASE("kernel input validation", "[kernel]") {
    Rng rng(24);
    Grid g = Grid::line(8);
    DenseKernel k = DenseKernel::random(g, rng);
    Field wrong(Grid::line(16), 1);
    CHECK_THROWS_AS(k.apply(wrong), std::invalid_argument);
    Field bad(g, 1);
    bad.v[3] = std::nan("");
    CHECK_THROWS_AS(k.apply(bad), std::invalid_argument);
    CHECK_THROWS_AS(DenseKernel(g, std::vector<double>(63, 0.0)), std::invalid_argument);
}

TEST_CASE("spectral kernel matches its impulse-materialized dense form", "[kernel]") {
    Rng rng(25);
    Grid g = Grid::line(32);
    SpectralKernel k(g, 5, 1, 1);
    k.init_random(rng);
    std::vector<double> dense = testutil::materialize(k, g);

    Field x(g, 1);
    x.v = testutil::random_vec(rng, 32);
    Field y = k.apply(x);
    for (std::size_t i = 0; i < 32; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < 32; ++j)
            acc += dense[i * 32 + j] * x.v[j];
        CHECK(y.v[i] == Catch::Approx(acc).margin(1e-10));
    }
}

TEST_CASE("full-band unit multipliers give the identity map", "[kernel]") {
    Grid g = Grid::line(32);
    std::size_t bins = boon::rfft_bins(32);
    SpectralKernel k(g, bins, 1, 1);
    for (auto& w : k.weights())
        w = cdouble(1.0, 0.0);
    Rng rng(26);
    Field x(g, 1);
    x.v = testutil::random_vec(rng, 32);
    Field y = k.apply(x);
    CHECK(testutil::max_abs_diff(y.v, x.v) < 1e-12);
}

TEST_CASE("spectral kernel validates modes and channels", "[kernel]") {
    Grid g = Grid::line(16);
    CHECK_THROWS_AS(SpectralKernel(g, 10, 1, 1), std::invalid_argument); // bins = 9
    CHECK_THROWS_AS(SpectralKernel(g, 0, 1, 1), std::invalid_argument);
    SpectralKernel k(g, 4, 2, 3);
    Field x(g, 1); // needs 2 channels
    CHECK_THROWS_AS(k.apply(x), std::invalid_argument);
}

TEST_CASE("grid and field basics", "[core]") {
    Grid g = Grid::line(5, 0.0, 1.0);
    CHECK(g.dx() == Catch::Approx(0.25));
    CHECK(g.coord(0, 4) == 1.0);
    CHECK_THROWS_AS(Grid::line(3), std::invalid_argument);
    CHECK_THROWS_AS(Grid::line(8, 1.0, 1.0), std::invalid_argument);

    Grid sq = Grid::square(4, 6);
    CHECK(sq.points() == 24);
    CHECK(sq.flat(1, 2) == 8);

    Field f(sq, 3);
    CHECK(f.v.size() == 72);
    f.at(2, 5) = 1.5;
    CHECK(f.channel(2)[5] == 1.5);
    CHECK(f.finite());
    f.at(0, 0) = std::numeric_limits<double>::infinity();
    CHECK(!f.finite());
}
