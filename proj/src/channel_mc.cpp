#include "fiberacf/channel_mc.hpp"

#include <functional>
#include <stdexcept>
#include <thread>

namespace fiberacf {

uint64_t substream(uint64_t seed, uint64_t index)
{
    // splitmix64 finalizer over the (seed, index) pair
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    return r.next();
}

WienerPairPath sample_wiener_pair(double rho, std::size_t steps, double z, uint64_t seed)
{
    if (steps < 2)
        throw std::domain_error("sample_wiener_pair: steps must be >= 2");
    if (std::abs(rho) > 1.0)
        throw std::domain_error("sample_wiener_pair: |rho| must be <= 1");

    WienerPairPath path;
    path.steps = steps;
    path.dz = z / static_cast<double>(steps);
    path.rho = rho;
    path.w_t.resize(steps + 1);
    path.w_tp.resize(steps + 1);
    path.w_t[0] = path.w_tp[0] = 0.0;

    Rng rng(seed);
    const double sd = std::sqrt(path.dz);  // std of a real Wiener increment
    const double orth = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    for (std::size_t i = 0; i < steps; ++i) {
        const auto [g1, g2] = rng.gauss_pair();
        const auto [g3, g4] = rng.gauss_pair();
        const double dwr = sd * g1, dwi = sd * g2;
        const double dwr_p = rho * dwr + orth * sd * g3;
        const double dwi_p = rho * dwi + orth * sd * g4;
        path.w_t[i + 1] = path.w_t[i] + cplx(dwr, dwi) * inv_sqrt2;
        path.w_tp[i + 1] = path.w_tp[i] + cplx(dwr_p, dwi_p) * inv_sqrt2;
    }
    return path;
}

std::pair<cplx, cplx> propagate_pair_sample(cplx u0, cplx u0p,
                                            const WienerPairPath& path,
                                            const DerivedConstants& dc)
{
    const double sk = std::sqrt(dc.k);
    const double gamma = dc.p.gamma;
    double phase = 0.0, phase_p = 0.0;
    for (std::size_t i = 0; i < path.steps; ++i) {
        phase += std::norm(u0 + sk * path.w_t[i]) * path.dz;
        phase_p += std::norm(u0p + sk * path.w_tp[i]) * path.dz;
    }
    const cplx u = (u0 + sk * path.w_t[path.steps]) *
                   std::polar(1.0, gamma * phase);
    const cplx up = (u0p + sk * path.w_tp[path.steps]) *
                    std::polar(1.0, gamma * phase_p);
    return {u, up};
}

namespace {

// Runs `fn(trial)` for all trials, buffering results by trial index so the
// subsequent reduction is order-deterministic for any thread count.
McEstimate reduce_trials(std::size_t trials, int threads,
                         const std::function<cplx(std::size_t)>& fn)
{
    if (trials < 2)
        throw std::domain_error("monte carlo estimate needs at least 2 trials");

    std::vector<cplx> out(trials);
    const int nw = std::max(1, threads);
    if (nw == 1) {
        for (std::size_t i = 0; i < trials; ++i) out[i] = fn(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (trials + nw - 1) / nw;
        for (int w = 0; w < nw; ++w) {
            std::size_t lo = w * chunk, hi = std::min(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
            });
        }
        for (auto& t : pool) t.join();
    }

    cplx sum = 0.0;
    for (const cplx& v : out) sum += v;
    const cplx mean = sum / static_cast<double>(trials);
    double var = 0.0;
    for (const cplx& v : out) var += std::norm(v - mean);
    var /= static_cast<double>(trials - 1);
    return {mean, std::sqrt(var / static_cast<double>(trials)),
            trials};
}

}  // namespace

McEstimate mc_acf(cplx u0, cplx u0p, double rho, const DerivedConstants& dc,
                  std::size_t trials, std::size_t steps, uint64_t seed,
                  int threads)
{
    return reduce_trials(trials, threads, [&](std::size_t trial) {
        const auto path = sample_wiener_pair(rho, steps, dc.p.z,
                                             substream(seed, trial));
        const auto [u, up] = propagate_pair_sample(u0, u0p, path, dc);
        return u * std::conj(up);
    });
}

cplx mecozzi_analytic(cplx a, cplx b, cplx c, double z)
{
    const auto h = eval_hyperbolic(c, z);
    cplx lb2;
    const cplx q = 2.0 * c * z * z;  // = w^2
    if (std::abs(q) < 1e-4) {
        // series for the 1/c terms; exact limit (z/2)(a^2 + abz + b^2 z^2/3) at c = 0
        const cplx one_minus_s_over_c =
            z * z * (1.0 + q * (-5.0 / 12.0 + q * (61.0 / 360.0)));
        const cplx z_minus_t_over_c =
            z * z * z * (1.0 / 3.0 + q * (-2.0 / 15.0 + q * (17.0 / 315.0))) * 2.0;
        lb2 = 0.5 * a * a * h.t + 0.5 * a * b * one_minus_s_over_c +
              0.25 * b * b * z_minus_t_over_c;
    } else {
        lb2 = (0.5 * a * a - b * b / (4.0 * c)) * h.t +
              a * b / (2.0 * c) * (1.0 - h.s) + b * b / (4.0 * c) * z;
    }
    return std::sqrt(h.s) * std::exp(lb2);
}

std::pair<McEstimate, cplx> mecozzi_identity_check(cplx a, cplx b, cplx c,
                                                   double z, std::size_t trials,
                                                   std::size_t steps, uint64_t seed,
                                                   int threads)
{
    if (std::abs(c.real()) > 1e-15 * std::abs(c))
        throw std::domain_error("mecozzi_identity_check: c must be purely imaginary");

    const double dz = z / static_cast<double>(steps);
    const double sd = std::sqrt(dz);
    auto est = reduce_trials(trials, threads, [&](std::size_t trial) {
        Rng rng(substream(seed, trial));
        double w = 0.0, spare = 0.0;
        bool have_spare = false;
        cplx arg = 0.0;
        for (std::size_t i = 0; i < steps; ++i) {
            arg += (b * w - c * w * w) * dz;  // left endpoint
            double g;
            if (have_spare) {
                g = spare;
                have_spare = false;
            } else {
                const auto [g1, g2] = rng.gauss_pair();
                g = g1;
                spare = g2;
                have_spare = true;
            }
            w += sd * g;
        }
        arg += a * w;
        return std::exp(arg);
    });
    return {est, mecozzi_analytic(a, b, c, z)};
}

cplx analytic_moment(cplx u0, unsigned m, const DerivedConstants& dc)
{
    if (m < 1)
        throw std::domain_error("analytic_moment: m must be >= 1");
    const cplx c(0.0, -dc.p.gamma * m * dc.k / 2.0);
    const auto h = eval_hyperbolic(c, dc.p.z);
    const cplx e_m = std::exp(cplx(0.0, 1.0) * dc.p.gamma *
                              static_cast<double>(m) * std::norm(u0) * h.t);
    return std::pow(u0, static_cast<double>(m)) * e_m *
           std::pow(h.s, static_cast<double>(m + 1));
}

}  // namespace fiberacf
