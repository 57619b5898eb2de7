#include "fiberacf/capacity.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fiberacf/channel_mc.hpp"

namespace fiberacf {

namespace {

double received_power(double p, double w, const DerivedConstants& dc,
                      const BoundRegime& regime)
{
    const double trivial = dc.k * dc.p.z + p;
    return std::min(trivial, avg_power_bound(p, w, dc, regime).bound);
}

}  // namespace

double shannon_c(double w, double p, double n0)
{
    if (!(w > 0.0) || p < 0.0 || !(n0 > 0.0))
        throw std::domain_error("shannon_c: need w > 0, p >= 0, n0 > 0");
    return w * std::log2(1.0 + p / (w * n0));
}

double capacity_upper1(double p, double w, const DerivedConstants& dc,
                       const BoundRegime& regime)
{
    return std::log2(1.0 + received_power(p, w, dc, regime) / (w * dc.p.n0));
}

double capacity_upper2(double p, double w, const DerivedConstants& dc,
                       const BoundRegime& regime)
{
    if (w > dc.p.b)
        throw std::domain_error("capacity_upper2: requires W <= B");
    const double wn0 = w * dc.p.n0;
    const double floor = dc.k * dc.p.z * (w / dc.p.b);
    return std::log2((received_power(p, w, dc, regime) + wn0) / (floor + wn0));
}

double eta_bound(double p, double w, const DerivedConstants& dc)
{
    const auto regime = classify_regime(w, dc);
    const double c_w = w * capacity_upper1(p, w, dc, regime);
    const double w_min = dc.p.b * bandwidth_lower_bound(p, dc, regime);
    return c_w / std::max(w, w_min);
}

CapacityCurve scaled_b_curve(const std::vector<double>& p_grid, double w,
                             const FiberParams& tmpl)
{
    FiberParams base = tmpl;
    base.b = w;
    const double kappa_hat = derive_constants(base).kappa;

    CapacityCurve curve;
    curve.kind = "scaled_b";
    curve.p_grid = p_grid;
    curve.values.reserve(p_grid.size());
    for (double p : p_grid) {
        FiberParams fp = base;
        fp.b = w * std::max(1.0, std::sqrt(kappa_hat * p / 512.0));
        const auto dci = derive_constants(fp);
        const auto regime = classify_regime(w, dci);
        curve.values.push_back(capacity_upper1(p, w, dci, regime));
    }
    return curve;
}

double infiniteb_capacity_bound(double p, double t_s, const DerivedConstants& dc)
{
    if (p < 0.0 || !(t_s > 0.0))
        throw std::domain_error("infiniteb_capacity_bound: need p >= 0, t_s > 0");
    const double n0 = dc.p.n0;
    const double peak = p < 1.0 / dc.kappa ? p * std::exp(-dc.kappa * p)
                                           : 1.0 / (dc.kappa * M_E);
    return std::log2(1.0 + t_s * peak / n0) / t_s;
}

ThreeSampleResult three_sample_demo(double x, double t_small,
                                    const DerivedConstants& dc,
                                    std::size_t trials, uint64_t seed)
{
    if (!(t_small > 0.0) || trials < 2)
        throw std::domain_error("three_sample_demo: need t_small > 0, trials >= 2");

    // endpoint covariance of the complex accumulated noise at the 3 instants
    Eigen::Matrix3d r;
    const double t[3] = {0.0, t_small, 2.0 * t_small};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r(i, j) = sinc(dc.p.b * (t[i] - t[j]));
    Eigen::LLT<Eigen::Matrix3d> llt(r);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("three_sample_demo: covariance not positive definite");
    const Eigen::Matrix3d l = llt.matrixL();

    const double amp = x / std::sqrt(dc.p.t_s);
    const double u0[3] = {0.0, amp, -amp};
    const double scale = std::sqrt(dc.p.z / 2.0);
    const double sk = std::sqrt(dc.k);

    // Welford update: the spread of est around its mean is ~9 orders below
    // the mean itself, so the textbook sum-of-squares form cancels to zero
    double mean = 0.0, m2 = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(substream(seed, trial));
        Eigen::Vector3d gr, gi;
        for (int i = 0; i < 3; ++i) {
            const auto [a, b] = rng.gauss_pair();
            gr(i) = a;
            gi(i) = b;
        }
        const Eigen::Vector3d wr = scale * (l * gr), wi = scale * (l * gi);
        double y[3];
        for (int i = 0; i < 3; ++i)
            y[i] = std::norm(cplx(u0[i] + sk * wr(i), sk * wi(i)));
        const double est = dc.p.t_s * ((y[1] + y[2]) / 2.0 - y[0]);
        const double delta = est - mean;
        mean += delta / static_cast<double>(trial + 1);
        m2 += delta * (est - mean);
    }
    const double n = static_cast<double>(trials);
    const double var = m2 / (n - 1.0);
    return {mean, std::sqrt(var / n), x * x, trials};
}

namespace {

// Composite 5-point Gauss-Legendre with at least 8 panels per phase cycle.
// Adaptive subdivision is the wrong tool here: the phase completes an integer
// number of cycles between dyadic sample points, so error estimates based on
// halving see a constant integrand and converge to the wrong answer.
template <typename F>
cplx integrate_oscillatory(const F& f, double a, double b, double cycles)
{
    static const double xg[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                                 -0.9061798459386640, 0.9061798459386640};
    static const double wg[5] = {0.5688888888888889, 0.4786286704993665,
                                 0.4786286704993665, 0.2369268850561891,
                                 0.2369268850561891};
    const int panels =
        std::max(64, static_cast<int>(std::ceil(8.0 * cycles)));
    const double h = (b - a) / panels;
    cplx sum = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int k = 0; k < 5; ++k) sum += wg[k] * f(mid + 0.5 * h * xg[k]);
    }
    return sum * (0.5 * h);
}

}  // namespace

FskDemoResult fsk_demo(unsigned m, double delta, double t_s, double n0,
                       double pe_target)
{
    if (m < 2 || !(delta > 0.0) || !(t_s > 0.0) || t_s > 1.0 || !(n0 > 0.0))
        throw std::domain_error(
            "fsk_demo: need m >= 2, delta > 0, 0 < t_s <= 1, n0 > 0");
    if (!(pe_target > 0.0) || !(pe_target < 1.0))
        throw std::domain_error("fsk_demo: pe_target must be in (0, 1)");

    const double norm = t_s * (1.0 - t_s / 2.0);
    const double h = 1.0 / t_s;  // modulation index for gamma = 2 pi (1 - t_s/2)

    std::vector<double> x(m);
    for (unsigned i = 0; i < m; ++i)
        x[i] = (2.0 * (m + 1 + i) - 1.0) * delta;

    FskDemoResult res;
    res.gram.resize(m, m);
    for (unsigned a = 0; a < m; ++a) {
        for (unsigned b = a; b < m; ++b) {
            const double df = h * (x[a] * x[a] - x[b] * x[b]);
            auto f = [&](double t) {
                const double u = t - t_s + 1.0;
                return cplx(u / norm) * std::polar(1.0, 2.0 * M_PI * df * u);
            };
            const cplx ip = x[a] * x[b] *
                            integrate_oscillatory(f, 0.0, t_s,
                                                  std::abs(df) * t_s);
            res.gram(a, b) = ip;
            res.gram(b, a) = std::conj(ip);
        }
    }

    const double energy = (28.0 * m * m - 1.0) * delta * delta / 3.0;
    res.p = energy / t_s;
    const double q_arg = 2.0 * m * delta / std::sqrt(n0);
    res.pe = (m - 1.0) * 0.5 * std::erfc(q_arg / std::sqrt(2.0));
    res.rate = (6.0 / 28.0) * (res.p / n0) * std::log2(M_E) +
               std::log(pe_target) / t_s;
    return res;
}

}  // namespace fiberacf
