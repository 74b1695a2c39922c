// Minimal tour of the correction API: take one random spectral kernel, apply
// each boundary wiring to the same input, and show what lands on the ends.
// Also prints the kernel-apply counter so the constant per-call cost of each
// wiring is visible.

#include <cstdio>

#include "boonkit/bc/correct.hpp"
#include "boonkit/bc/stencil.hpp"
#include "boonkit/core/kernel.hpp"
#include "boonkit/core/rng.hpp"

using namespace boon;

int main() {
    const std::size_t n = 16;
    Grid g = Grid::line(n);
    Rng rng(7);
    SpectralKernel K(g, 4, 1, 1);
    K.init_random(rng);

    Field u0(g, 1);
    for (double& x : u0.v)
        x = rng.uniform(-1.0, 1.0);

    std::uint64_t c0 = K.calls();
    Field plain = K.apply(u0);
    std::printf("plain apply:        u[0]=%+.6f  u[n-1]=%+.6f  (%llu applies)\n", plain.v[0],
                plain.v[n - 1], static_cast<unsigned long long>(K.calls() - c0));

    c0 = K.calls();
    Field dir = correct_dirichlet(K, u0, 0.25, Side::left);
    std::printf("dirichlet left .25: u[0]=%+.6f  u[n-1]=%+.6f  (%llu applies)\n", dir.v[0],
                dir.v[n - 1], static_cast<unsigned long long>(K.calls() - c0));

    FDStencil st = fd_coefficients(2, g.dx(), Side::left);
    c0 = K.calls();
    Field neu = correct_neumann(K, u0, 0.0, st);
    std::printf("neumann left 0:     flux=%+.3e           (%llu applies)\n",
                st.apply(neu.v.data(), n), static_cast<unsigned long long>(K.calls() - c0));

    c0 = K.calls();
    Field per = correct_periodic(K, u0);
    std::printf("periodic:           u[0]-u[n-1]=%+.3e    (%llu applies)\n",
                per.v[0] - per.v[n - 1], static_cast<unsigned long long>(K.calls() - c0));
    return 0;
}
