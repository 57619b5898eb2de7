#pragma once

#include <complex>
#include <utility>

namespace fiberacf {

using cplx = std::complex<double>;

// S(c) = sech(sqrt(2c) z) and T(c) = tanh(sqrt(2c) z) / sqrt(2c).
// Both are even in sqrt(2c), so the square-root branch does not matter.
struct HyperbolicPair {
    cplx s;  // dimensionless
    cplx t;  // meters

    double s_r() const { return s.real(); }
    double s_i() const { return s.imag(); }
    double t_r() const { return t.real(); }
    double t_i() const { return t.imag(); }
};

// Throws std::domain_error for non-finite c or z <= 0.
// c = 0 returns the analytic limit (1, z).
HyperbolicPair eval_hyperbolic(cplx c, double z);

// erf with exact odd symmetry: erf_real(-y) == -erf_real(y) bit-for-bit.
double erf_real(double y);

// (e^-y I0(y), e^-y I1(y)) for y >= 0; throws std::domain_error otherwise.
std::pair<double, double> bessel_i0e_i1e(double y);

// sin(pi y) / (pi y), sinc(0) = 1.
double sinc(double y);

// (sqrt(pi)/2) erf(y)/y, continuous through y = 0 where the value is 1.
// Shared helper for the received-power bound lemmas.
double erf_ratio(double y);

}  // namespace fiberacf
