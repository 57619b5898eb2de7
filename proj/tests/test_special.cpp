#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "fiberacf/special.hpp"

using namespace fiberacf;
using cld = std::complex<long double>;

namespace {

// Independent long-double oracle for sech(w) and tanh(w)/w: Taylor at w/2^k
// with |w/2^k| < 0.1, then cosh(2x) = 2 cosh^2 x - 1, sinh(2x) = 2 sinh x cosh x.
// A plain Maclaurin series diverges past |w| ~ pi/2, the halving does not.
void oracle_hyperbolic(cld w, cld& sech, cld& tanh_over_w)
{
    int k = 0;
    cld ws = w;
    while (std::abs(ws) >= 0.1L) {
        ws /= 2.0L;
        ++k;
    }
    cld ch = 1.0L, sh = 0.0L, term = 1.0L;
    for (int n = 1; n <= 30; ++n) {
        term *= ws / static_cast<long double>(n);
        if (n % 2 == 1)
            sh += term;
        else
            ch += term;
    }
    for (int i = 0; i < k; ++i) {
        const cld ch2 = 2.0L * ch * ch - 1.0L;
        sh = 2.0L * sh * ch;
        ch = ch2;
    }
    sech = 1.0L / ch;
    // w = 0 never reaches here with w != 0 inputs
    tanh_over_w = sh / (ch * w);
}

double oracle_erf(long double y)
{
    // Maclaurin: erf(y) = 2/sqrt(pi) sum (-1)^n y^(2n+1) / (n! (2n+1))
    const long double y2 = y * y;
    long double term = y, sum = y;
    for (int n = 1; n <= 120; ++n) {
        term *= -y2 / static_cast<long double>(n);
        sum += term / (2.0L * n + 1.0L);
        if (std::abs(term) < 1e-22L * std::abs(sum)) break;
    }
    return static_cast<double>(sum * 2.0L / std::sqrt(static_cast<long double>(M_PI)));
}

double oracle_bessel_ie(int nu, double y)
{
    // I_nu(y) e^{-y} = (1/pi) int_0^pi e^{y(cos t - 1)} cos(nu t) dt, periodic
    // trapezoid (spectrally accurate for this integrand)
    const int n = 4000;
    long double sum = 0.0L;
    for (int i = 0; i <= n; ++i) {
        const long double t = M_PI * i / static_cast<long double>(n);
        const long double v = std::exp(y * (std::cos(t) - 1.0L)) * std::cos(nu * t);
        sum += (i == 0 || i == n) ? 0.5L * v : v;
    }
    return static_cast<double>(sum / n);
}

double rel(double got, double want)
{
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("hyperbolic pair vs argument-halving oracle")
{
    const double z = 1.0;
    // c = -j x covers the physical case; a real and a generic complex c too
    const double xs[] = {1e-8, 1e-5, 1e-3, 0.1, 0.5, 2.0, 4.0, 20.0, 100.0};
    for (double x : xs) {
        for (int mode = 0; mode < 3; ++mode) {
            cplx c = mode == 0 ? cplx(0.0, -x)
                   : mode == 1 ? cplx(x, 0.0)
                               : cplx(0.3 * x, -0.7 * x);
            const auto h = eval_hyperbolic(c, z);
            const cld w = std::sqrt(cld(2.0L * c.real(), 2.0L * c.imag())) *
                          static_cast<long double>(z);
            cld sech, tow;
            oracle_hyperbolic(w, sech, tow);
            CHECK(std::abs(h.s - cplx(static_cast<double>(sech.real()),
                                      static_cast<double>(sech.imag()))) <=
                  1e-12 * std::abs(h.s));
            CHECK(std::abs(h.t - z * cplx(static_cast<double>(tow.real()),
                                          static_cast<double>(tow.imag()))) <=
                  1e-12 * std::abs(h.t));
        }
    }
}

TEST_CASE("hyperbolic pair limits and errors")
{
    const auto h0 = eval_hyperbolic(0.0, 3.0);
    CHECK(h0.s == cplx(1.0, 0.0));
    CHECK(h0.t == cplx(3.0, 0.0));

    // continuity across the series/direct switch at |w| = 1e-4 (z = 1)
    const double x_lo = 0.99e-4, x_hi = 1.01e-4;  // |w| = sqrt(2x)... pick c
    for (double aw : {x_lo, x_hi}) {
        const cplx c(0.0, -aw * aw / 2.0);  // |w| = aw
        const auto h = eval_hyperbolic(c, 1.0);
        cld sech, tow;
        oracle_hyperbolic(std::sqrt(cld(0.0L, -static_cast<long double>(aw) *
                                              aw)),
                          sech, tow);
        CHECK(std::abs(h.s - cplx(static_cast<double>(sech.real()),
                                  static_cast<double>(sech.imag()))) <= 1e-14);
    }

    CHECK_THROWS_AS(eval_hyperbolic(cplx(1.0, NAN), 1.0), std::domain_error);
    CHECK_THROWS_AS(eval_hyperbolic(cplx(1.0, 0.0), 0.0), std::domain_error);
    CHECK_THROWS_AS(eval_hyperbolic(cplx(1.0, 0.0), -2.0), std::domain_error);
}

TEST_CASE("erf vs Maclaurin oracle")
{
    CHECK(rel(erf_real(1.0), 0.8427007929497148693) <= 1e-15);
    for (double y : {1e-6, 0.01, 0.1, 0.5, 1.0, 2.0, 3.5}) {
        CHECK(rel(erf_real(y), oracle_erf(y)) <= 1e-14);
        CHECK(erf_real(-y) == -erf_real(y));  // bit-exact odd symmetry
    }
    CHECK(erf_real(0.0) == 0.0);
}

TEST_CASE("scaled Bessel vs quadrature oracle")
{
    for (double y : {1e-8, 0.1, 0.5, 5.0, 28.6, 29.9, 30.1, 50.0, 300.0}) {
        const auto [i0e, i1e] = bessel_i0e_i1e(y);
        CHECK(rel(i0e, oracle_bessel_ie(0, y)) <= 1e-9);
        // absolute tolerance on I1e: the quadrature oracle carries ~1e-17
        // absolute error, which swamps the tiny I1e values at small y
        CHECK(std::abs(i1e - oracle_bessel_ie(1, y)) <= 1e-9 * i0e);
        CHECK(i0e > i1e);  // strict for y > 0
        CHECK(i0e <= 1.0);
    }
    CHECK(bessel_i0e_i1e(0.0) == std::pair<double, double>(1.0, 0.0));
    CHECK_THROWS_AS(bessel_i0e_i1e(-1.0), std::domain_error);
}

TEST_CASE("sinc")
{
    CHECK(sinc(0.0) == 1.0);
    CHECK(rel(sinc(0.5), 2.0 / M_PI) <= 1e-15);
    CHECK(std::abs(sinc(1.0)) <= 1e-15);
    CHECK(std::abs(sinc(5.0)) <= 1e-15);
    CHECK(rel(sinc(1e-7), std::sin(M_PI * 1e-7) / (M_PI * 1e-7)) <= 1e-14);
    CHECK(sinc(0.25) == sinc(-0.25));
}

TEST_CASE("erf ratio")
{
    CHECK(erf_ratio(0.0) == 1.0);
    for (double y : {1e-6, 1e-5, 0.99e-4, 1.01e-4, 0.01}) {
        const double direct = 0.5 * std::sqrt(M_PI) * oracle_erf(y) / y;
        CHECK(rel(erf_ratio(y), direct) <= 1e-14);
    }
    CHECK(rel(erf_ratio(2.0), 0.5 * std::sqrt(M_PI) * std::erf(2.0) / 2.0) <= 1e-15);
    // decreasing from 1 toward the sqrt(pi)/(2y) tail
    CHECK(erf_ratio(0.5) < 1.0);
    CHECK(rel(erf_ratio(50.0), 0.5 * std::sqrt(M_PI) / 50.0) <= 1e-12);
}
