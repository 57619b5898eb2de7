#include "fiberacf/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fiberacf {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// g(y) - e^{-y^2} with the small-y cancellation removed; both terms are 1 + O(y^2).
double g_minus_exp(double y)
{
    if (y < 0.1) {
        const double y2 = y * y;
        return y2 * (2.0 / 3.0 +
                     y2 * (-2.0 / 5.0 + y2 * (1.0 / 7.0 - y2 / 27.0)));
    }
    return erf_ratio(y) - std::exp(-y * y);
}

double ratio_w_over_b(const BoundRegime& r) { return r.w / r.b; }

}  // namespace

std::string regime_name(RegimeTag tag)
{
    switch (tag) {
        case RegimeTag::lemma1: return "lemma1";
        case RegimeTag::lemma2: return "lemma2";
        case RegimeTag::lemma3: return "lemma3";
        default: return "unsupported";
    }
}

BoundRegime classify_regime(double w, const DerivedConstants& dc)
{
    if (!(w > 0.0))
        throw std::domain_error("classify_regime: w must be > 0");
    BoundRegime r;
    r.w = w;
    r.b = dc.p.b;
    r.gkz2_half = dc.gkz2 / 2.0;
    r.at_boundary = (w <= r.b) && (r.gkz2_half == 1.0);
    if (w <= r.b)
        r.tag = r.gkz2_half <= 1.0 ? RegimeTag::lemma1 : RegimeTag::lemma2;
    else
        r.tag = r.gkz2_half <= 1.0 ? RegimeTag::lemma3 : RegimeTag::unsupported;
    return r;
}

double f_special(double s, double p, double a, double b_coef, double c_coef)
{
    if (!(s > 0.0))
        throw std::domain_error("f_special: s must be > 0");
    if (p < 0.0)
        throw std::domain_error("f_special: p must be >= 0");
    return (a + b_coef * std::sqrt(p) + c_coef * p) * erf_ratio(std::sqrt(s * p));
}

double f_special_d1(double s, double p, double a, double b_coef, double c_coef)
{
    const double sp = std::sqrt(p), y = std::sqrt(s * p);
    const double h = a + b_coef * sp + c_coef * p;
    return (erf_ratio(y) * (c_coef * p - a) + std::exp(-s * p) * h) / (2.0 * p);
}

double f_special_d2(double s, double p, double a, double b_coef, double c_coef)
{
    const double sp = std::sqrt(p), y = std::sqrt(s * p);
    const double h = a + b_coef * sp + c_coef * p;
    return ((3.0 * a - c_coef * p) * g_minus_exp(y) -
            std::exp(-s * p) * (b_coef * sp + 2.0 * s * p * h)) /
           (4.0 * p * p);
}

BoundReport inst_power_bound(double p_t, const BoundRegime& regime,
                             const DerivedConstants& dc)
{
    if (regime.tag == RegimeTag::unsupported)
        throw std::domain_error(
            "inst_power_bound: regime W >= B with gamma (K/2) z^2 >= 1 is unsupported");
    if (p_t < 0.0)
        throw std::domain_error("inst_power_bound: p_t must be >= 0");

    const double kz = dc.k * dc.p.z;
    const double spd = std::sqrt(p_t) + dc.delta;
    const double pref = 4.0 * (kz + spd * spd);
    const double wb = ratio_w_over_b(regime);
    const double damp = std::exp(-std::sqrt(dc.gkz2));

    BoundReport rep{};
    rep.input = p_t;
    rep.regime = regime;
    rep.alt_bound = kNan;

    switch (regime.tag) {
        case RegimeTag::lemma1:
            rep.term_erf =
                pref * 2.0 * wb * erf_ratio(std::sqrt(dc.kappa / 8.0 * p_t));
            rep.term_tail1 = pref * 5.0 * damp * std::exp(-dc.kappa / 9.0 * p_t);
            rep.term_tail2 = 0.0;
            break;
        case RegimeTag::lemma2:
            rep.term_erf = pref * 2.0 * wb * (2.0 / dc.gkz2) *
                           erf_ratio(std::sqrt(p_t / (3.0 * kz)));
            rep.term_tail1 = pref * (25.0 * wb / dc.gkz2) *
                             std::exp(-p_t / (std::sqrt(18.0) * kz));
            rep.term_tail2 =
                pref * 5.0 * damp *
                std::exp(-std::sqrt(dc.p.gamma / (20.0 * dc.k)) * p_t);
            break;
        default: {  // lemma3
            const double bw = 1.0 / wb;  // B/W <= 1
            rep.term_erf =
                pref * 2.0 * erf_ratio(std::sqrt(dc.kappa / 8.0 * p_t) * bw);
            rep.term_tail1 = pref * 0.25 * (1.0 - bw) *
                             std::exp(-dc.kappa / 8.0 * p_t * bw * bw);
            rep.term_tail2 = pref * 5.0 * damp * std::exp(-dc.kappa / 9.0 * p_t);
            break;
        }
    }
    rep.bound = rep.term_erf + rep.term_tail1 + rep.term_tail2;
    return rep;
}

namespace {

// Average-power bound for the W <= B lemmas, selected by tag.
BoundReport avg_bound_for_tag(double p, double w, const DerivedConstants& dc,
                              const BoundRegime& regime, RegimeTag tag)
{
    const double kz = dc.k * dc.p.z;
    const double a = kz + dc.delta * dc.delta;
    const double wb = w / dc.p.b;

    BoundReport rep{};
    rep.input = p;
    rep.regime = regime;
    rep.alt_bound = kNan;
    if (tag == RegimeTag::lemma1) {
        rep.term_erf =
            8.0 * wb * f_special(dc.kappa / 8.0, p + dc.p_o, a, 2.0 * dc.delta, 1.0);
        rep.term_tail1 = dc.c1;
        rep.term_tail2 = 0.0;
    } else {
        rep.term_erf = (16.0 * wb / dc.gkz2) *
                       f_special(1.0 / (3.0 * kz), p + dc.p_o, a, 2.0 * dc.delta, 1.0);
        rep.term_tail1 = wb * dc.c2;
        rep.term_tail2 = dc.c3;
    }
    rep.bound = rep.term_erf + rep.term_tail1 + rep.term_tail2;
    return rep;
}

}  // namespace

BoundReport avg_power_bound(double p, double w, const DerivedConstants& dc,
                            const BoundRegime& regime)
{
    if (regime.tag != RegimeTag::lemma1 && regime.tag != RegimeTag::lemma2)
        throw std::domain_error("avg_power_bound: requires a W <= B regime");
    if (p < 0.0)
        throw std::domain_error("avg_power_bound: p must be >= 0");

    BoundReport rep = avg_bound_for_tag(p, w, dc, regime, regime.tag);
    if (regime.at_boundary) {
        const RegimeTag other = regime.tag == RegimeTag::lemma1
                                    ? RegimeTag::lemma2
                                    : RegimeTag::lemma1;
        rep.alt_bound = avg_bound_for_tag(p, w, dc, regime, other).bound;
    }
    return rep;
}

double bandwidth_lower_bound(double p, const DerivedConstants& dc,
                             const BoundRegime& regime, double q,
                             bool erf_le_one)
{
    if (regime.tag != RegimeTag::lemma1 && regime.tag != RegimeTag::lemma2)
        throw std::domain_error("bandwidth_lower_bound: requires a W <= B regime");
    if (!(q > 0.5) || !(q < 1.0))
        throw std::domain_error("bandwidth_lower_bound: q must be in (0.5, 1)");

    const double kz = dc.k * dc.p.z;
    const double a = kz + dc.delta * dc.delta;
    const double pp = p + dc.p_o;
    const double spd = std::sqrt(pp) + dc.delta;

    if (regime.tag == RegimeTag::lemma1) {
        const double num = q * (kz + p) - dc.c1;
        if (erf_le_one)
            return num * std::sqrt(dc.kappa / 8.0 * pp) /
                   (8.0 * (kz + spd * spd));
        return num / (8.0 * f_special(dc.kappa / 8.0, pp, a, 2.0 * dc.delta, 1.0));
    }
    const double num = q * (kz + p) - dc.c3;
    if (erf_le_one)
        return num * std::sqrt(pp) /
               (dc.c2 * std::sqrt(pp) +
                std::sqrt(512.0 / dc.kappa) * (kz + spd * spd));
    return num / (dc.c2 + (16.0 / dc.gkz2) *
                              f_special(1.0 / (3.0 * kz), pp, a, 2.0 * dc.delta, 1.0));
}

double power_threshold(const DerivedConstants& dc, double q)
{
    const BoundRegime regime = classify_regime(dc.p.b, dc);
    auto ratio = [&](double p) {
        return bandwidth_lower_bound(p, dc, regime, q) - 1.0;
    };

    double lo = 1e-3, hi = 1e4;
    double flo = ratio(lo), fhi = ratio(hi);
    if (flo * fhi > 0.0)
        throw std::runtime_error(
            "power_threshold: no sign change of the bandwidth ratio on [1e-3, 1e4] W "
            "(ratio(1e-3) = " + std::to_string(flo + 1.0) +
            ", ratio(1e4) = " + std::to_string(fhi + 1.0) + ")");
    while ((hi - lo) / (hi + lo) > 1e-10) {
        const double mid = std::sqrt(lo * hi);  // log-midpoint, span is 7 decades
        if (ratio(mid) * flo <= 0.0)
            hi = mid;
        else
            lo = mid, flo = ratio(lo);
    }
    return 0.5 * (lo + hi);
}

ScalingExponents scaling_exponents(double beta, const FiberParams& tmpl,
                                   const std::vector<double>& p_grid)
{
    if (beta < 0.0)
        throw std::domain_error("scaling_exponents: beta must be >= 0");
    if (p_grid.size() < 2)
        throw std::invalid_argument("scaling_exponents: need at least 2 powers");

    const double w = tmpl.b;
    std::vector<double> lp(p_grid.size()), lr(p_grid.size()), lw(p_grid.size());
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
        FiberParams fp = tmpl;
        fp.b = tmpl.b * std::pow(p_grid[i], beta);
        const auto dci = derive_constants(fp);
        const auto regime = classify_regime(w, dci);
        lp[i] = std::log(p_grid[i]);
        lr[i] = std::log(avg_power_bound(p_grid[i], w, dci, regime).bound);
        lw[i] = std::log(fp.b *
                         bandwidth_lower_bound(p_grid[i], dci, regime));
    }

    auto slope = [&](const std::vector<double>& y) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lp.size(); ++i) mx += lp[i], my += y[i];
        mx /= static_cast<double>(lp.size());
        my /= static_cast<double>(lp.size());
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < lp.size(); ++i) {
            num += (lp[i] - mx) * (y[i] - my);
            den += (lp[i] - mx) * (lp[i] - mx);
        }
        return num / den;
    };
    return {slope(lr), slope(lw)};
}

BoundReport energy_bound_time_resolution(double p_t, double t_r,
                                         const DerivedConstants& dc)
{
    if (!(t_r > 0.0))
        throw std::domain_error("energy_bound_time_resolution: t_r must be > 0");
    if (p_t < 0.0)
        throw std::domain_error("energy_bound_time_resolution: p_t must be >= 0");

    const double kz = dc.k * dc.p.z;
    const double spd = std::sqrt(p_t) + dc.delta;
    const double pref = 4.0 * (kz + spd * spd);
    const double y = std::sqrt(dc.kappa / 8.0 * p_t);
    const double inv_b = 1.0 / dc.p.b;

    BoundReport rep{};
    rep.input = p_t;
    rep.regime = classify_regime(dc.p.b, dc);
    rep.alt_bound = kNan;
    if (t_r >= inv_b) {
        rep.term_erf = pref * inv_b * erf_ratio(y);
        rep.term_tail1 = pref * 5.0 * (t_r - inv_b) *
                         std::exp(-std::sqrt(dc.gkz2) - dc.kappa / 9.0 * p_t);
    } else {
        rep.term_erf = pref * t_r * erf_ratio(y * dc.p.b * t_r);
        rep.term_tail1 = 0.0;
    }
    rep.term_tail2 = 0.0;
    rep.bound = rep.term_erf + rep.term_tail1;
    return rep;
}

double pam_rect_energy_bound(double p, const DerivedConstants& dc)
{
    if (dc.gkz2 / 2.0 > 1.0)
        throw std::domain_error(
            "pam_rect_energy_bound: requires gamma (K/2) z^2 <= 1");
    if (p < 0.0)
        throw std::domain_error("pam_rect_energy_bound: p must be >= 0");

    const double kz = dc.k * dc.p.z;
    const double t_r = 1.0 / dc.p.b;
    const double y = std::sqrt(dc.kappa / 2.0 * p);
    double h;
    if (y < 1e-3) {
        const double y2 = y * y;
        h = 1.0 + y2 * (-1.0 / 6.0 + y2 * (1.0 / 30.0 - y2 / 168.0));
    } else {
        h = (2.0 / y) * (0.5 * std::sqrt(M_PI) * erf_real(y) -
                         (1.0 - std::exp(-y * y)) / (2.0 * y));
    }
    return (kz + p * (1.0 + dc.gkz2 * dc.gkz2)) * t_r * h;
}

}  // namespace fiberacf
