#include "fiberacf/validation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

#include "fiberacf/acf.hpp"
#include "fiberacf/bounds.hpp"
#include "fiberacf/capacity.hpp"
#include "fiberacf/channel_mc.hpp"
#include "fiberacf/spectrum.hpp"

namespace fiberacf {

namespace {

std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// pass iff value <= limit; margin is the normalized slack
CheckResult le_check(std::string name, double value, double limit,
                     std::string detail, bool known_issue = false)
{
    const double scale = std::max(std::abs(limit), 1e-300);
    return {std::move(name), value <= limit, known_issue,
            (limit - value) / scale, std::move(detail)};
}

std::vector<double> log_grid(double lo, double hi, std::size_t n)
{
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) /
                                          static_cast<double>(n - 1));
    return g;
}

double rel(double v, double target) { return std::abs(v - target) / std::abs(target); }

}  // namespace

std::vector<CheckResult> validate_special(const ValidationOptions&)
{
    std::vector<CheckResult> out;
    const auto dc = derive_constants(reference_params());

    {
        // ratios of relative deviation to allowed tolerance; worst must be <= 1
        const double worst =
            std::max({rel(dc.kappa, 28.6) / 0.02,
                      rel(std::sqrt(dc.gkz2), 0.130) / 0.02,
                      rel(dc.gkz2, 0.017) / 0.05, rel(dc.delta, 1.4e-3) / 0.05});
        out.push_back(le_check(
            "derived-constants", worst, 1.0,
            fmt("kappa=%.4f sqrt(gkz2)=%.5f gkz2=%.6f delta=%.5e", dc.kappa,
                std::sqrt(dc.gkz2), dc.gkz2, dc.delta)));
    }

    const double z = dc.p.z;
    {
        // pointwise bounds on S and T along c = -j x / z^2
        double worst = -1.0;  // largest violation, normalized
        std::string where;
        auto track = [&](double violation, double scale, const char* what,
                         double x) {
            const double v = violation / std::max(scale, 1e-300);
            if (v > worst) {
                worst = v;
                where = fmt("%s at x=%.3e", what, x);
            }
        };
        for (double x : log_grid(1e-6, 1e3, 10000)) {
            const auto h = eval_hyperbolic(cplx(0.0, -x / (z * z)), z);
            track(std::abs(h.s) - 1.0, 1.0, "|S|<=1", x);
            track(std::abs(h.t) - z, z, "|T|<=z", x);
            track(h.s_r() - 1.0, 1.0, "S_R<=1", x);
            track(-0.136 - h.s_r(), 1.0, "S_R>=-0.136", x);
            track(h.t_r() - z, z, "T_R<=z", x);
            track(-h.t_r(), z, "T_R>=0", x);
            track(h.s_i() - x, std::max(x, 1.0), "S_I<=x", x);
            track(-0.028 - h.s_i(), 1.0, "S_I>=-0.028", x);
            track(h.t_i() - (2.0 / 3.0) * x * z, std::max(x, 1.0) * z,
                  "T_I<=(2/3)xz", x);
            track(-h.t_i(), z, "T_I>=0", x);
            track(std::abs(h.s) - std::sqrt(5.0) * std::exp(-std::sqrt(x)), 1.0,
                  "|S|<=sqrt5*exp(-sqrt x)", x);
            track((z / 3.0) * std::min(x, 1.0 / std::sqrt(x)) - h.t_i(),
                  std::max(x, 1.0) * z, "T_I>=z/3 min(x,1/sqrt x)", x);
            track(h.s_i() * h.s_i() / h.t_i() - 1.5 * x / z, x / z,
                  "S_I^2/T_I<=3x/2z", x);
            if (x <= 0.05) {
                const double d = 0.9;  // small-x lower bounds, constant -> 1
                track(d - std::abs(h.s), 1.0, "|S|>=d", x);
                track(d * z - std::abs(h.t), z, "|T|>=dz", x);
                track(d - h.s_r(), 1.0, "S_R>=d", x);
                track(d * z - h.t_r(), z, "T_R>=dz", x);
                track(d * x - h.s_i(), x, "S_I>=dx", x);
                track(d * (2.0 / 3.0) * x * z - h.t_i(), x * z, "T_I>=d 2xz/3", x);
            }
        }
        // tolerance covers roundoff in the near-tight S_I^2/T_I ratio at
        // small x, where the analytic slack is O(x^2) relative
        out.push_back(le_check("st-bounds", worst, 1e-9,
                               fmt("worst violation %.3e (%s)", worst,
                                   where.c_str())));
    }

    {
        // sign of sqrt(2c) must not matter; compare against the opposite
        // branch evaluated with the library cosh/tanh
        double worst = 0.0;
        for (double x : log_grid(1e-6, 1e3, 2000)) {
            const cplx c(0.0, -x / (z * z));
            const cplx w = std::sqrt(2.0 * c) * z;
            const auto h = eval_hyperbolic(c, z);
            const cplx s_neg = 1.0 / std::cosh(-w);
            const cplx t_neg = z * std::tanh(-w) / (-w);
            worst = std::max(worst, std::abs(h.s - s_neg) / std::abs(h.s));
            worst = std::max(worst, std::abs(h.t - t_neg) / std::abs(h.t));
        }
        out.push_back(le_check("branch-invariance", worst, 1e-14,
                               fmt("worst relative branch difference %.3e", worst)));
    }

    {
        double worst = -1.0;
        std::string where;
        auto track = [&](double violation, double scale, const char* what) {
            const double v = violation / std::max(scale, 1e-300);
            if (v > worst) {
                worst = v;
                where = what;
            }
        };
        for (int i = 0; i <= 10000; ++i) {
            const double y = -3.0 + 6.0 * i / 10000.0;
            const double s = sinc(y), ay = std::abs(y);
            if (ay <= 1.0) {
                track(std::abs(s) - (1.0 - y * y), 1.0, "|sinc|<=1-y^2");
                track(s * s - (1.0 - y * y), 1.0, "sinc^2<=1-y^2");
            } else {
                track(std::abs(s) - 0.25, 1.0, "|sinc|<=1/4");
                track(s * s - 0.05, 1.0, "sinc^2<=1/20");
            }
            track(1.0 - 4.0 * y * y - s * s, 1.0, "sinc^2>=1-4y^2");
        }
        for (double a : {0.3, 1.0, 3.0}) {
            for (double y : log_grid(1e-3, 1e3, 300)) {
                track(y * std::exp(-a * y) - 1.0 / (a * M_E), 1.0 / (a * M_E),
                      "y exp(-ay)<=1/(ae)");
                track(y * std::exp(-a * y * y) - 1.0 / std::sqrt(2.0 * a * M_E),
                      1.0, "y exp(-ay^2)<=1/sqrt(2ae)");
            }
        }
        for (double y : log_grid(1e-3, 5.0, 300))
            track(y - std::exp(y * y) * 0.5 * std::sqrt(M_PI) * erf_real(y),
                  std::max(y, 1.0), "e^{y^2} sqrt(pi)/2 erf(y)>=y");
        out.push_back(le_check("sinc-exp-bounds", worst, 1e-12,
                               fmt("worst violation %.3e (%s)", worst,
                                   where.c_str())));
    }
    return out;
}

std::vector<CheckResult> validate_mc_acf(const ValidationOptions& opts)
{
    std::vector<CheckResult> out;
    const auto dc = derive_constants(reference_params());
    const double kz = dc.k * dc.p.z;
    Rng rng(opts.seed ^ 0x5bf03635d1d4baf1ULL);
    auto rand_amp = [&] {
        const auto [g1, g2] = rng.gauss_pair();
        return cplx(g1, g2) * 0.2;
    };

    {
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const cplx u0 = rand_amp();
            const double want = kz + std::norm(u0);
            worst = std::max(worst,
                             std::abs(acf_exact(u0, u0, 1.0, dc).value - want) /
                                 want);
        }
        out.push_back(le_check("diagonal-identity", worst, 1e-12,
                               fmt("worst |A(t,t)-(Kz+P)|/(Kz+P) = %.3e", worst)));
    }

    {
        FiberParams lp = reference_params();
        lp.gamma = 0.0;
        const auto dcl = derive_constants(lp);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const cplx u0 = rand_amp(), u0p = rand_amp();
            const double rho_i = 2.0 * rng.uniform() - 1.0;
            const cplx want = kz * rho_i + u0 * std::conj(u0p);
            const double scale = kz + std::abs(u0) * std::abs(u0p);
            worst = std::max(
                worst, std::abs(acf_exact(u0, u0p, rho_i, dcl).value - want) /
                           scale);
        }
        out.push_back(le_check("gamma0-reduction", worst, 1e-12,
                               fmt("worst deviation %.3e", worst)));
    }

    {
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const cplx u0 = rand_amp(), u0p = rand_amp();
            const double rho_i = 2.0 * rng.uniform() - 1.0;
            const cplx a = acf_exact(u0, u0p, rho_i, dc).value;
            const cplx b = acf_exact(u0p, u0, rho_i, dc).value;
            worst = std::max(worst,
                             std::abs(a - std::conj(b)) / (std::abs(a) + kz));
        }
        out.push_back(le_check("hermitian-symmetry", worst, 1e-13,
                               fmt("worst asymmetry %.3e", worst)));
    }

    {
        const double powers[] = {0.0, 0.01, 0.1, 0.2, 0.4};
        const double rhos[] = {0.0, 0.2, 0.5, 0.8, 0.99};
        double worst = 0.0;
        std::string where;
        std::size_t cell = 0;
        for (double p : powers) {
            for (double r : rhos) {
                const cplx u0 = std::sqrt(p);
                const auto cf = acf_exact(u0, u0, r, dc).value;
                const auto mc =
                    mc_acf(u0, u0, r, dc, opts.trials_mc, 512,
                           opts.seed + 1000003 * (++cell), opts.threads);
                const double ratio =
                    std::abs(cf - mc.mean) / (5.0 * mc.std_error);
                if (ratio > worst) {
                    worst = ratio;
                    where = fmt("P=%g W rho=%g: |diff|=%.3e se=%.3e", p, r,
                                std::abs(cf - mc.mean), mc.std_error);
                }
            }
        }
        out.push_back(le_check("theorem1-vs-mc", worst, 1.0,
                               fmt("worst |closed-form - MC|/5se = %.3f (%s)",
                                   worst, where.c_str())));
    }

    {
        const cplx u0 = std::sqrt(0.4);
        const auto m1 = mc_acf(u0, u0, 0.5, dc, opts.trials_mc, 512,
                               opts.seed + 77, opts.threads);
        const auto m2 = mc_acf(u0, u0, 0.5, dc, opts.trials_mc, 1024,
                               opts.seed + 78, opts.threads);
        const double diff = std::abs(m1.mean - m2.mean);
        const double lim = 3.0 * (m1.std_error + m2.std_error);
        out.push_back(le_check("step-doubling", diff, lim,
                               fmt("|mc512-mc1024|=%.3e vs 3(se+se)=%.3e", diff,
                                   lim)));
    }
    return out;
}

std::vector<CheckResult> validate_mecozzi(const ValidationOptions& opts)
{
    std::vector<CheckResult> out;
    Rng rng(opts.seed ^ 0x8f1c3b5a97e64d21ULL);
    const double z = 1.0;

    {
        double worst = 0.0;
        std::string where;
        for (int k = 0; k < 20; ++k) {
            const cplx a(1.4 * (rng.uniform() - 0.5), 1.4 * (rng.uniform() - 0.5));
            const cplx b(1.4 * (rng.uniform() - 0.5), 1.4 * (rng.uniform() - 0.5));
            const cplx c(0.0, rng.uniform() - 0.5);
            const auto [est, want] = mecozzi_identity_check(
                a, b, c, z, opts.trials_mecozzi, 512, opts.seed + 40013 * k,
                opts.threads);
            const double ratio =
                std::abs(est.mean - want) / (5.0 * est.std_error);
            if (ratio > worst) {
                worst = ratio;
                where = fmt("a=(%.2f,%.2f) b=(%.2f,%.2f) Im c=%.2f", a.real(),
                            a.imag(), b.real(), b.imag(), c.imag());
            }
        }
        out.push_back(le_check("identity-vs-mc", worst, 1.0,
                               fmt("worst |MC - analytic|/5se = %.3f (%s)",
                                   worst, where.c_str())));
    }

    {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            const cplx a(rng.uniform() - 0.5, rng.uniform() - 0.5);
            const cplx b(rng.uniform() - 0.5, rng.uniform() - 0.5);
            const cplx limit =
                std::exp((z / 2.0) * (a * a + a * b * z + b * b * z * z / 3.0));
            const cplx v = mecozzi_analytic(a, b, cplx(0.0, 1e-12), z);
            worst = std::max(worst, std::abs(v - limit) / std::abs(limit));
        }
        out.push_back(le_check("czero-limit", worst, 1e-10,
                               fmt("worst relative deviation %.3e", worst)));
    }
    return out;
}

namespace {

// Dominance of the instantaneous-power lemma over the integral it bounds.
// The S/T factors depend on tau only through theta = B tau, so they are
// tabulated once per regime and interpolated.
CheckResult dominance_check(const std::string& name, const DerivedConstants& dc,
                            double w_lo, double w_hi, uint64_t seed)
{
    const double b = dc.p.b;
    // 32 filter widths at the smallest W; truncating further only weakens
    // the computed integral, never the test
    const double theta_max = 32.0 * b / w_lo;
    const double dtheta = 1.0 / 64.0;
    const auto n = static_cast<std::size_t>(theta_max / dtheta) + 2;
    std::vector<double> s2(n), ee(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = sinc(static_cast<double>(i) * dtheta);
        const auto h = eval_hyperbolic(c_of_rho(dc, r), dc.p.z);
        s2[i] = std::norm(h.s);
        ee[i] = dc.p.gamma * h.t_i() * std::sqrt(1.0 - r * r) / 2.0;
    }
    auto at = [&](const std::vector<double>& v, double theta) {
        const double fi = theta / dtheta;
        const auto i = static_cast<std::size_t>(fi);
        if (i + 1 >= n) return v.back();
        const double t = fi - static_cast<double>(i);
        return (1.0 - t) * v[i] + t * v[i + 1];
    };

    // exact factors for the near-peak region, where the tables are too coarse
    auto exact_factors = [&](double theta) {
        const double r = sinc(theta);
        const auto h = eval_hyperbolic(c_of_rho(dc, r), dc.p.z);
        const double sq = std::sqrt(std::max(0.0, 1.0 - r * r));
        return std::pair<double, double>(
            std::norm(h.s), dc.p.gamma * h.t_i() * sq / 2.0);
    };

    Rng rng(seed);
    double worst = 0.0;
    std::string where;
    for (int cs = 0; cs < 10000; ++cs) {
        const double p_t = 1e-6 * std::pow(1e9, rng.uniform());
        const double w = w_lo * std::pow(w_hi / w_lo, rng.uniform());
        const auto regime = classify_regime(w, dc);
        const double bound = inst_power_bound(p_t, regime, dc).bound;

        // The exponential peak narrows as 1/sqrt(kappa P_t): resolve it with a
        // dedicated fine trapezoid (exact factors), then cover the remainder
        // from the tables. Truncating the positive integrand at theta_case
        // only lowers the integral, so the dominance test stays valid.
        const double theta_case = 32.0 * b / w;
        const double theta_c = std::min(
            theta_case,
            std::max(1.0 / 16.0, 10.0 / std::sqrt(1.0 + dc.kappa * p_t)));
        double acc = 0.0;  // integral in tau units
        {
            const int nf = 512;
            const double dth = theta_c / nf;
            double fine = 0.0;
            for (int i = 0; i <= nf; ++i) {
                const double theta = i * dth;
                const auto [s2v, eev] = exact_factors(theta);
                const double val = s2v * std::exp(-eev * p_t) *
                                   triangle_filter_time(theta / b, w);
                fine += (i == 0 || i == nf) ? 0.5 * val : val;
            }
            acc += fine * dth / b;
        }
        if (theta_c < theta_case) {
            const double dth = std::min(1.0 / 32.0, b / (32.0 * w));
            const auto m = static_cast<std::size_t>((theta_case - theta_c) / dth);
            double coarse = 0.0;
            for (std::size_t i = 0; i <= m; ++i) {
                const double theta = theta_c + static_cast<double>(i) * dth;
                const double val = at(s2, theta) *
                                   std::exp(-at(ee, theta) * p_t) *
                                   triangle_filter_time(theta / b, w);
                coarse += (i == 0 || i == m) ? 0.5 * val : val;
            }
            acc += coarse * dth / b;
        }
        const double spd = std::sqrt(p_t) + dc.delta;
        const double integral = 2.0 * (dc.k * dc.p.z + spd * spd) *
                                (2.0 * acc);  // even in tau
        const double ratio = integral / bound;
        if (ratio > worst) {
            worst = ratio;
            where = fmt("P_t=%.3e W W=%.3e Hz integral=%.3e bound=%.3e", p_t, w,
                        integral, bound);
        }
    }
    return le_check(name, worst, 1.0,
                    fmt("worst integral/bound = %.4f (%s)", worst, where.c_str()));
}

}  // namespace

std::vector<CheckResult> validate_bounds(const ValidationOptions& opts)
{
    std::vector<CheckResult> out;
    const auto dc = derive_constants(reference_params());
    const double kz = dc.k * dc.p.z;

    {
        const double p = 0.1;
        auto acf = [&](double tau) {
            return acf_ring_time_avg(tau, p, dc.p.t_s, dc);
        };
        const auto psd = psd_cyclostationary(acf, dc.p.t_s, 0.0,
                                             default_psd_grid(dc.p.b));
        const double total = band_power(psd, 2.0 * psd.freqs.back());
        out.push_back(le_check("psd-parseval", rel(total, kz + p), 0.005,
                               fmt("total=%.6e vs Kz+P=%.6e", total, kz + p)));

        // reference curve of the PSD figure: gamma = 0 at 10 mW. At exactly
        // B/2 the reference sits on a sinc^2 sidelobe peak (f T_s = 2.5), so
        // compare densities averaged across the full 200-300 GHz sidelobe,
        // which is what the plotted curves resolve; the point sample on the
        // peak itself gives 17.5 dB.
        FiberParams lin = reference_params();
        lin.gamma = 0.0;
        const auto dcl = derive_constants(lin);
        auto acf0 = [&](double tau) {
            return acf_ring_time_avg(tau, 0.01, dcl.p.t_s, dcl);
        };
        const auto psd0 = psd_cyclostationary(acf0, dcl.p.t_s, 0.0,
                                              default_psd_grid(dcl.p.b));
        auto lobe_avg = [&](const Psd& s) {
            return (band_power(s, 6e11) - band_power(s, 4e11)) / 2e11;
        };
        const double ratio_db =
            10.0 * std::log10(lobe_avg(psd) / std::abs(lobe_avg(psd0)));
        out.push_back(le_check("psd-broadening", 20.0, ratio_db,
                               fmt("P=100 mW density around 250 GHz is %.1f dB "
                                   "above the 10 mW gamma=0 reference",
                                   ratio_db)));
    }

    {
        out.push_back(dominance_check("dominance-lemma1", dc, dc.p.b / 100.0,
                                      dc.p.b, opts.seed ^ 0x11aa));
        out.push_back(dominance_check("dominance-lemma3", dc, dc.p.b,
                                      100.0 * dc.p.b, opts.seed ^ 0x33cc));
        FiberParams wide = reference_params();
        wide.b *= 200.0;  // pushes gamma (K/2) z^2 above 1
        const auto dcw = derive_constants(wide);
        out.push_back(dominance_check("dominance-lemma2", dcw, dcw.p.b / 100.0,
                                      dcw.p.b, opts.seed ^ 0x22bb));
    }

    {
        const double p_star = power_threshold(dc, 0.99);
        const double dbm = w_to_dbm(p_star);
        const bool pass_w = rel(p_star, 18.6) <= 0.01;
        const bool pass_db = std::abs(dbm - 42.7) <= 0.1;
        out.push_back({"threshold", pass_w && pass_db, true,
                       0.01 - rel(p_star, 18.6),
                       fmt("measured %.4f W (%.4f dBm); published 18.6 W / 42.7 "
                           "dBm; the published value is reproduced only if the "
                           "exp(-sqrt(gamma K z^2)) factor is dropped from c1",
                           p_star, dbm)});
    }

    {
        // monotone non-decreasing and concave in P for both W <= B lemmas
        double worst = -1e300;
        std::string where;
        auto scan = [&](const DerivedConstants& d, const char* label) {
            const auto regime = classify_regime(d.p.b, d);
            for (double p : log_grid(1e-6, 1e3, 60)) {
                const double h = 1e-3 * p;
                const double f0 = avg_power_bound(p, d.p.b, d, regime).bound;
                const double fm = avg_power_bound(p - h, d.p.b, d, regime).bound;
                const double fp = avg_power_bound(p + h, d.p.b, d, regime).bound;
                const double d2 = (fm - 2.0 * f0 + fp) / (1e-12 * f0);
                const double mono = (f0 - fp) / (1e-12 * f0);
                if (d2 > worst) worst = d2, where = fmt("%s concavity P=%.2e", label, p);
                if (mono > worst) worst = mono, where = fmt("%s monotonicity P=%.2e", label, p);
            }
        };
        scan(dc, "lemma4");
        FiberParams wide = reference_params();
        wide.b *= 200.0;
        scan(derive_constants(wide), "lemma5");
        out.push_back(le_check("concavity", worst, 1.0,
                               fmt("worst normalized second difference %.3e (%s)",
                                   worst, where.c_str())));
    }
    return out;
}

std::vector<CheckResult> validate_capacity(const ValidationOptions&)
{
    std::vector<CheckResult> out;
    const auto dc = derive_constants(reference_params());
    const double w = dc.p.b;
    const auto regime = classify_regime(w, dc);

    {
        // the small-power plateau log2(1 + Kz/(W N0)); 1 uW already lifts the
        // curve by 0.2 bits, so probe well below the Kz = 6.7 uW noise floor
        const double u = capacity_upper1(1e-8, w, dc, regime);
        out.push_back(le_check("small-p-upper1", std::abs(u - 11.7), 0.1,
                               fmt("upper1(10 nW) = %.4f bits/s/Hz", u)));
    }
    {
        const double u1 = capacity_upper1(1e6, w, dc, regime);
        const double u2 = capacity_upper1(1e8, w, dc, regime);
        const double slope = (u2 - u1) / std::log2(1e8 / 1e6);
        out.push_back(le_check("large-p-slope", rel(slope, 0.5), 0.05,
                               fmt("bits per octave = %.4f (expect 0.5)", slope)));
    }
    {
        const double p_star = power_threshold(dc, 0.99);
        const double below = eta_bound(p_star / 10.0, w, dc) -
                             capacity_upper1(p_star / 10.0, w, dc, regime);
        const double above_eta = eta_bound(4.0 * p_star, w, dc);
        const double above_u1 = capacity_upper1(4.0 * p_star, w, dc, regime);
        const bool ok = std::abs(below) < 1e-12 && above_eta < above_u1;
        out.push_back({"eta-vs-upper1", ok, false,
                       (above_u1 - above_eta) / above_u1,
                       fmt("eta equals upper1 below threshold (diff %.1e); "
                           "eta=%.3f < upper1=%.3f at 4x threshold",
                           below, above_eta, above_u1)});
    }
    {
        FiberParams base = reference_params();
        base.b = w;
        const double kappa_hat = derive_constants(base).kappa;
        const auto grid = log_grid(1e7, 1e9, 9);
        std::vector<double> lp, lr;
        for (double p : grid) {
            FiberParams fp = base;
            fp.b = w * std::max(1.0, std::sqrt(kappa_hat * p / 512.0));
            const auto dci = derive_constants(fp);
            const auto reg = classify_regime(w, dci);
            const double pr = std::min(dci.k * dci.p.z + p,
                                       avg_power_bound(p, w, dci, reg).bound);
            lp.push_back(std::log(p));
            lr.push_back(std::log(pr));
        }
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lp.size(); ++i) mx += lp[i], my += lr[i];
        mx /= lp.size(), my /= lp.size();
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < lp.size(); ++i) {
            num += (lp[i] - mx) * (lr[i] - my);
            den += (lp[i] - mx) * (lp[i] - mx);
        }
        const double slope = num / den;
        out.push_back(le_check("scaled-b-exponent", std::abs(slope + 0.25), 0.03,
                               fmt("receiver-power exponent %.4f (expect -1/4)",
                                   slope)));
    }
    {
        double worst = -1e300;
        for (double p : log_grid(1e-6, 18.0, 40)) {
            const double diff = capacity_upper2(p, w, dc, regime) -
                                capacity_upper1(p, w, dc, regime);
            worst = std::max(worst, diff);
        }
        out.push_back(le_check("upper2-le-upper1", worst, 1e-12,
                               fmt("max(upper2 - upper1) = %.3e", worst)));
    }
    return out;
}

std::vector<CheckResult> validate_demos(const ValidationOptions& opts)
{
    std::vector<CheckResult> out;
    const auto dc = derive_constants(reference_params());

    {
        const auto fsk = fsk_demo(4, 1.0, 0.5, 1e-3);
        double worst = 0.0;
        for (Eigen::Index a = 0; a < fsk.gram.rows(); ++a)
            for (Eigen::Index b = 0; b < fsk.gram.cols(); ++b)
                if (a != b)
                    worst = std::max(
                        worst, std::abs(fsk.gram(a, b)) /
                                   std::sqrt(std::abs(fsk.gram(a, a)) *
                                             std::abs(fsk.gram(b, b))));
        out.push_back(le_check(
            "fsk-orthogonality", worst, 1e-9,
            fmt("max normalized off-diagonal inner product %.3e; the stated "
                "orthogonality integral has a nonzero boundary term of "
                "magnitude T_s/(2 pi D (1 - T_s/2)) for frequency index "
                "difference D, so exact orthogonality does not hold",
                worst),
            true));
    }

    {
        std::vector<double> lp, lr;
        for (double delta : {1.0, 2.0, 4.0, 8.0, 16.0}) {
            const auto fsk = fsk_demo(4, delta, 0.5, 1e-3);
            lp.push_back(std::log(fsk.p));
            lr.push_back(std::log(fsk.rate));
        }
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < lp.size(); ++i) mx += lp[i], my += lr[i];
        mx /= lp.size(), my /= lp.size();
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < lp.size(); ++i) {
            num += (lp[i] - mx) * (lr[i] - my);
            den += (lp[i] - mx) * (lp[i] - mx);
        }
        const double slope = num / den;
        out.push_back(le_check("fsk-rate-slope", std::abs(slope - 1.0), 0.02,
                               fmt("log-log rate slope %.4f (expect 1)", slope)));
    }

    {
        const double x = std::sqrt(1e-3);
        const auto res = three_sample_demo(x, 1e-3 / dc.p.b, dc, 10000,
                                           opts.seed + 9001);
        const double bias = std::abs(res.estimate - res.truth) / res.truth;
        out.push_back(le_check("three-sample-bias", bias, 0.01,
                               fmt("estimate %.6e vs x^2 = %.6e (rel dev %.2e, "
                                   "se %.2e)",
                                   res.estimate, res.truth, bias,
                                   res.std_error)));
    }
    return out;
}

std::vector<CheckResult> validate_suite(const std::string& suite,
                                        const ValidationOptions& opts)
{
    if (suite == "special") return validate_special(opts);
    if (suite == "mc-acf") return validate_mc_acf(opts);
    if (suite == "mecozzi") return validate_mecozzi(opts);
    if (suite == "bounds") return validate_bounds(opts);
    if (suite == "capacity") return validate_capacity(opts);
    if (suite == "demos") return validate_demos(opts);
    throw std::invalid_argument("unknown validation suite: " + suite);
}

bool all_passed(const std::vector<CheckResult>& results)
{
    for (const auto& r : results)
        if (!r.pass && !r.known_issue) return false;
    return true;
}

}  // namespace fiberacf
