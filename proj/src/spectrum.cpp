#include "fiberacf/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberacf {

PsdGrid default_psd_grid(double b)
{
    if (!(b > 0.0))
        throw std::domain_error("default_psd_grid: b must be > 0");
    return {1.0 / (64.0 * b), 8.0 * b, b / 512.0};
}

Psd psd_cyclostationary(const std::function<double(double)>& acf_tau,
                        double t_s, double asymptote, const PsdGrid& grid)
{
    if (!(t_s > 0.0) || !(grid.dtau > 0.0) || !(grid.df > 0.0) ||
        !(grid.f_max > 0.0))
        throw std::domain_error("psd_cyclostationary: grid and t_s must be positive");

    const double a0 = acf_tau(0.0);
    if (std::abs(acf_tau(t_s) - asymptote) > 1e-9 * std::abs(a0))
        throw std::runtime_error(
            "psd_cyclostationary: acf does not reach its asymptote at t_s");

    // Tabulate the even integrand once; the transform reduces to a cosine sum.
    const auto n_tau = static_cast<std::size_t>(std::ceil(t_s / grid.dtau));
    const double dtau = t_s / static_cast<double>(n_tau);
    std::vector<double> g(n_tau + 1);
    for (std::size_t i = 0; i <= n_tau; ++i)
        g[i] = acf_tau(static_cast<double>(i) * dtau) - asymptote;

    const auto n_f = static_cast<std::size_t>(std::ceil(grid.f_max / grid.df));
    Psd psd;
    psd.dc_line = asymptote;
    psd.freqs.resize(2 * n_f + 1);
    psd.density.resize(2 * n_f + 1);
    for (std::size_t m = 0; m <= 2 * n_f; ++m) {
        const double f =
            (static_cast<double>(m) - static_cast<double>(n_f)) * grid.df;
        psd.freqs[m] = f;
        if (m < n_f) continue;  // filled below by symmetry
        double sum = 0.5 * g[0];  // trapezoid, cos(0) = 1
        const double w = 2.0 * M_PI * f * dtau;
        for (std::size_t i = 1; i < n_tau; ++i)
            sum += g[i] * std::cos(w * static_cast<double>(i));
        sum += 0.5 * g[n_tau] * std::cos(w * static_cast<double>(n_tau));
        psd.density[m] = 2.0 * dtau * sum;
        psd.density[2 * n_f - m] = psd.density[m];
    }
    return psd;
}

double band_power(const Psd& psd, double w)
{
    if (w < 0.0)
        throw std::domain_error("band_power: w must be >= 0");
    const double half = w / 2.0;
    if (psd.freqs.empty() || half > psd.freqs.back() || -half < psd.freqs.front())
        throw std::domain_error("band_power: band exceeds psd grid");
    if (w == 0.0) return psd.dc_line;

    auto interp = [&](double f) {
        auto hi = std::lower_bound(psd.freqs.begin(), psd.freqs.end(), f);
        if (hi == psd.freqs.begin()) return psd.density.front();
        const auto j = static_cast<std::size_t>(hi - psd.freqs.begin());
        if (j == psd.freqs.size()) return psd.density.back();
        const double f0 = psd.freqs[j - 1], f1 = psd.freqs[j];
        const double t = (f - f0) / (f1 - f0);
        return (1.0 - t) * psd.density[j - 1] + t * psd.density[j];
    };

    // trapezoid over interior grid points plus interpolated end segments
    double acc = 0.0;
    std::size_t lo = 0;
    while (psd.freqs[lo] < -half) ++lo;
    std::size_t hi = psd.freqs.size() - 1;
    while (psd.freqs[hi] > half) --hi;
    for (std::size_t i = lo; i < hi; ++i)
        acc += 0.5 * (psd.density[i] + psd.density[i + 1]) *
               (psd.freqs[i + 1] - psd.freqs[i]);
    if (psd.freqs[lo] > -half)
        acc += 0.5 * (interp(-half) + psd.density[lo]) * (psd.freqs[lo] + half);
    if (psd.freqs[hi] < half)
        acc += 0.5 * (psd.density[hi] + interp(half)) * (half - psd.freqs[hi]);
    return acc + psd.dc_line;
}

double triangle_filter_time(double t, double w)
{
    if (!(w > 0.0))
        throw std::domain_error("triangle_filter_time: w must be > 0");
    const double s = sinc(w * t);
    return 2.0 * w * s * s;
}

double triangle_filter_freq(double f, double w)
{
    if (!(w > 0.0))
        throw std::domain_error("triangle_filter_freq: w must be > 0");
    return 2.0 * std::max(0.0, 1.0 - std::abs(f) / w);
}

std::vector<double> psd_finite_horizon(const Eigen::MatrixXcd& a,
                                       const std::vector<double>& t_axis,
                                       const std::vector<double>& freqs)
{
    const auto n = static_cast<Eigen::Index>(t_axis.size());
    if (a.rows() != n || a.cols() != n || n < 2)
        throw std::invalid_argument("psd_finite_horizon: matrix/axis mismatch");

    const double dt = t_axis[1] - t_axis[0];
    const double horizon = t_axis.back() - t_axis.front() + dt;
    std::vector<double> out(freqs.size());
    Eigen::VectorXcd v(n);
    for (std::size_t m = 0; m < freqs.size(); ++m) {
        for (Eigen::Index i = 0; i < n; ++i)
            v(i) = std::polar(1.0, -2.0 * M_PI * freqs[m] * t_axis[i]);
        out[m] = (v.adjoint() * a * v).value().real() * dt * dt / horizon;
    }
    return out;
}

}  // namespace fiberacf
