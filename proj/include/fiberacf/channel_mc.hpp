#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "fiberacf/params.hpp"

namespace fiberacf {

// Deterministic per-trial substream generator (splitmix64). Hand-rolled
// Box-Muller keeps results identical across platforms and thread counts.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next()
    {
        uint64_t x = (state += 0x9e3779b97f4a7c15ULL);
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    // uniform in (0, 1]
    double uniform() { return (next() >> 11) * 0x1.0p-53 + 0x1.0p-53; }

    std::pair<double, double> gauss_pair()
    {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double th = 2.0 * M_PI * uniform();
        return {r * std::cos(th), r * std::sin(th)};
    }
};

uint64_t substream(uint64_t seed, uint64_t index);

// Correlated pair of complex Wiener paths: W = (W_R + j W_I)/sqrt(2) with
// independent standard real Wiener components; the second path combines
// rho * (increment of the first) + sqrt(1-rho^2) * (independent increment),
// separately for the real and imaginary parts.
struct WienerPairPath {
    std::size_t steps;
    double dz;
    std::vector<cplx> w_t;   // steps + 1 points, w_t[0] = 0
    std::vector<cplx> w_tp;
    double rho;
};

WienerPairPath sample_wiener_pair(double rho, std::size_t steps, double z, uint64_t seed);

// One sample of the dispersion-free channel at both time instants; the
// nonlinear-phase integral uses a left-endpoint (Ito) Riemann sum.
std::pair<cplx, cplx> propagate_pair_sample(cplx u0, cplx u0p,
                                            const WienerPairPath& path,
                                            const DerivedConstants& dc);

struct McEstimate {
    cplx mean;
    double std_error;  // sample std of complex deviations / sqrt(trials)
    std::size_t trials;
};

// Empirical E[U(z,t) U(z,t')* | u0, u0']. Bit-identical for a fixed seed
// regardless of `threads`: per-trial results are buffered and reduced in
// trial order.
McEstimate mc_acf(cplx u0, cplx u0p, double rho, const DerivedConstants& dc,
                  std::size_t trials, std::size_t steps, uint64_t seed,
                  int threads = 1);

// MC estimate of E[exp(a W(z) + int b W dz' - c int W^2 dz')] for a standard
// real Wiener process, plus the analytic value sqrt(S(c)) exp(lambda^2 beta^2).
std::pair<McEstimate, cplx> mecozzi_identity_check(cplx a, cplx b, cplx c,
                                                   double z, std::size_t trials,
                                                   std::size_t steps, uint64_t seed,
                                                   int threads = 1);

// Analytic value alone (exposed for the c -> 0 limit tests).
cplx mecozzi_analytic(cplx a, cplx b, cplx c, double z);

// E[U^m | u0] = u0^m E_m(c) S(c)^(m+1), c = -j gamma m K / 2.
cplx analytic_moment(cplx u0, unsigned m, const DerivedConstants& dc);

}  // namespace fiberacf
