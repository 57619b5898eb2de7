#include "fiberacf/acf.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberacf {

namespace {

constexpr double kLimitEps = 1e-8;  // switch to the rho -> +-1 limit branch

struct ThmParts {
    double s_abs2;     // |S|^2
    double s_r;        // S_R
    double t_r;        // T_R
    double si_ratio;   // S_I / sqrt(1 - rho^2)
    double ti_ratio;   // T_I / sqrt(1 - rho^2)
    double ti_scaled;  // T_I * sqrt(1 - rho^2)
    double si_abs;     // |S_I|
    double ti;         // T_I
};

ThmParts theorem_parts(double rho, const DerivedConstants& dc, bool& limit)
{
    const double one_minus_r2 = 1.0 - rho * rho;
    ThmParts tp{};
    if (one_minus_r2 < kLimitEps) {
        limit = true;
        const double g = dc.p.gamma, k = dc.k, z = dc.p.z;
        tp.s_abs2 = 1.0;
        tp.s_r = 1.0;
        tp.t_r = z;
        tp.si_ratio = g * (k / 2.0) * z * z;
        tp.ti_ratio = g * k * z * z * z / 3.0;
        tp.ti_scaled = 0.0;
        tp.si_abs = tp.si_ratio * std::sqrt(std::max(0.0, one_minus_r2));
        tp.ti = tp.ti_ratio * std::sqrt(std::max(0.0, one_minus_r2));
        return tp;
    }
    limit = false;
    const double sq = std::sqrt(one_minus_r2);
    const auto h = eval_hyperbolic(c_of_rho(dc, rho), dc.p.z);
    tp.s_abs2 = std::norm(h.s);
    tp.s_r = h.s_r();
    tp.t_r = h.t_r();
    tp.si_ratio = h.s_i() / sq;
    tp.ti_ratio = h.t_i() / sq;
    tp.ti_scaled = h.t_i() * sq;
    tp.si_abs = std::abs(h.s_i());
    tp.ti = h.t_i();
    return tp;
}

}  // namespace

AcfValue acf_exact(cplx u0, cplx u0p, double rho, const DerivedConstants& dc)
{
    if (std::abs(rho) > 1.0)
        throw std::domain_error("acf_exact: |rho| must be <= 1");

    bool limit = false;
    const auto tp = theorem_parts(rho, dc, limit);
    const double g = dc.p.gamma;
    const cplx j(0.0, 1.0);

    const cplx left = tp.s_r * u0 + j * tp.si_ratio * (u0 - rho * u0p);
    const cplx right = tp.s_r * u0p + j * tp.si_ratio * (u0p - rho * u0);
    const double p0 = std::norm(u0), p0p = std::norm(u0p);
    const double mix = p0 + p0p - 2.0 * rho * (u0 * std::conj(u0p)).real();

    cplx a = tp.s_abs2 * (tp.t_r * dc.k * rho + left * std::conj(right));
    a *= std::polar(1.0, g * tp.t_r * (p0 - p0p));
    a *= std::exp(-g * tp.ti_ratio * mix);
    return {a, limit ? AcfRegime::limit_rho1 : AcfRegime::exact};
}

AcfValue acf_approx(cplx u0, cplx u0p, double rho, const DerivedConstants& dc)
{
    const double g = dc.p.gamma, k = dc.k, z = dc.p.z;
    const double p0 = std::norm(u0), p0p = std::norm(u0p);
    const cplx j(0.0, 1.0);

    cplx a = k * rho * z + u0 * std::conj(u0p) +
             j * g * k * rho * (z * z / 2.0) * (p0 - p0p);
    a *= std::polar(1.0, g * z * (p0 - p0p));
    a *= std::exp(-(dc.kappa / 2.0) *
                  (p0 + p0p - 2.0 * rho * (u0 * std::conj(u0p)).real()));
    return {a, AcfRegime::approx};
}

AcfValue acf_rect_isolated(double t, double tp, double p, double t_s,
                           const DerivedConstants& dc, double rho, RectMode mode)
{
    if (p < 0.0)
        throw std::domain_error("acf_rect_isolated: p must be >= 0");

    const bool in_t = std::abs(t) <= t_s / 2.0;
    const bool in_tp = std::abs(tp) <= t_s / 2.0;
    const double sp = std::sqrt(p);

    if (mode == RectMode::exact)
        return acf_exact(in_t ? sp : 0.0, in_tp ? sp : 0.0, rho, dc);

    const double g = dc.p.gamma, k = dc.k, z = dc.p.z;
    const cplx j(0.0, 1.0);
    cplx a;
    if (in_t && in_tp) {
        a = (k * rho * z + p) * std::exp(-dc.kappa * p * (1.0 - rho));
    } else if (in_t && !in_tp) {
        a = (k * rho * z + j * g * k * rho * (z * z / 2.0) * p) *
            std::polar(1.0, g * z * p) * std::exp(-dc.kappa / 2.0 * p);
    } else if (!in_t && in_tp) {
        a = (k * rho * z - j * g * k * rho * (z * z / 2.0) * p) *
            std::polar(1.0, -g * z * p) * std::exp(-dc.kappa / 2.0 * p);
    } else {
        a = k * rho * z;
    }
    return {a, AcfRegime::approx};
}

AcfValue acf_ring(bool same_symbol, double p, double rho, const DerivedConstants& dc)
{
    if (p < 0.0)
        throw std::domain_error("acf_ring: p must be >= 0");

    const double kz_rho = dc.k * rho * dc.p.z;
    if (same_symbol) {
        return {cplx(kz_rho + p) * std::exp(-dc.kappa * p * (1.0 - rho)),
                AcfRegime::approx};
    }
    // I0(kappa P rho) e^{-kappa P} rearranged with scaled Bessel functions to
    // stay finite for large kappa P; I0 is even and I1 odd in rho.
    const double y = dc.kappa * p * std::abs(rho);
    const auto [i0e, i1e] = bessel_i0e_i1e(y);
    const double sgn = rho < 0.0 ? -1.0 : 1.0;
    const double damp = std::exp(-dc.kappa * p * (1.0 - std::abs(rho)));
    return {cplx((kz_rho * i0e + p * sgn * i1e) * damp), AcfRegime::approx};
}

double acf_ring_time_avg(double tau, double p, double t_s, const DerivedConstants& dc)
{
    const double r = rho(tau, dc.p.b);
    const double cross = acf_ring(false, p, r, dc).value.real();
    const double at = std::abs(tau);
    if (at >= t_s) return cross;
    const double same = acf_ring(true, p, r, dc).value.real();
    return (1.0 - at / t_s) * same + (at / t_s) * cross;
}

double acf_amplitude_bound(cplx u0, cplx u0p, double rho,
                           const DerivedConstants& dc, AmpBoundVariant variant)
{
    if (std::abs(rho) > 1.0)
        throw std::domain_error("acf_amplitude_bound: |rho| must be <= 1");

    bool limit = false;
    const auto tp = theorem_parts(rho, dc, limit);
    const double g = dc.p.gamma;

    if (variant == AmpBoundVariant::eq_fixed_band) {
        double a0 = std::abs(u0), a0p = std::abs(u0p);
        if (a0 < a0p) std::swap(a0, a0p);
        const double grow = 1.0 + 2.0 * std::abs(tp.si_ratio);
        return (dc.k * dc.p.z + a0 * a0 * grow * grow) *
               std::exp(-g * tp.ti_scaled * a0 * a0);
    }

    // scaled-band variant: |S|^2 [Kz + (|u0|+d)(|u0'|+d)] exp(-g T_I sq (P+P')/2)
    // with d^2 = S_I^2 / (e g T_I sq); d degenerates to its global cap
    // sqrt(3Kz/(4e)) in the rho -> +-1 and gamma -> 0 limits (the cap keeps
    // the bound valid since it enters additively).
    double d;
    const double denom = M_E * g * tp.ti_scaled;
    if (limit || denom <= 0.0 || tp.si_abs == 0.0) {
        d = dc.delta;
    } else {
        d = std::sqrt(tp.si_abs * tp.si_abs / denom);
    }
    const double a0 = std::abs(u0), a0p = std::abs(u0p);
    return tp.s_abs2 * (dc.k * dc.p.z + (a0 + d) * (a0p + d)) *
           std::exp(-g * tp.ti_scaled * (a0 * a0 + a0p * a0p) / 2.0);
}

AcfValue acf_infinite_bandwidth(cplx u0, cplx u0p, bool t_equal,
                                const DerivedConstants& dc)
{
    if (t_equal)
        return {cplx(dc.k * dc.p.z + std::norm(u0)), AcfRegime::exact};

    const cplx c(0.0, -dc.p.gamma * dc.k / 2.0);
    const auto h = eval_hyperbolic(c, dc.p.z);
    auto v = [&](cplx u) {
        return u * std::exp(cplx(0.0, 1.0) * dc.p.gamma * std::norm(u) * h.t) *
               h.s * h.s;
    };
    return {v(u0) * std::conj(v(u0p)), AcfRegime::exact};
}

AcfGrid acf_grid(const std::vector<double>& t_axis,
                 const std::vector<double>& tp_axis,
                 const std::vector<cplx>& u0_t,
                 const std::vector<cplx>& u0_tp,
                 const DerivedConstants& dc)
{
    if (u0_t.size() != t_axis.size() || u0_tp.size() != tp_axis.size())
        throw std::invalid_argument("acf_grid: axis/launch size mismatch");

    AcfGrid grid;
    grid.t_axis = t_axis;
    grid.tp_axis = tp_axis;
    grid.values.resize(static_cast<Eigen::Index>(t_axis.size()),
                       static_cast<Eigen::Index>(tp_axis.size()));
    for (std::size_t i = 0; i < t_axis.size(); ++i) {
        for (std::size_t jj = 0; jj < tp_axis.size(); ++jj) {
            const double r = rho(t_axis[i] - tp_axis[jj], dc.p.b);
            grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jj)) =
                acf_exact(u0_t[i], u0_tp[jj], r, dc).value;
        }
    }
    return grid;
}

}  // namespace fiberacf
