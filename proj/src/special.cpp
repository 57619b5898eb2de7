#include "fiberacf/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fiberacf {

HyperbolicPair eval_hyperbolic(cplx c, double z)
{
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::domain_error("eval_hyperbolic: non-finite c");
    if (!(z > 0.0) || !std::isfinite(z))
        throw std::domain_error("eval_hyperbolic: z must be positive and finite");

    const cplx w = std::sqrt(2.0 * c) * z;
    const double aw = std::abs(w);

    if (aw < 1e-4) {
        // Series in w^2; sech and tanh(w)/w are even, so the branch of the
        // square root is irrelevant and the c -> 0 limit is smooth.
        const cplx w2 = w * w;
        const cplx sech = 1.0 + w2 * (-1.0 / 2.0 + w2 * (5.0 / 24.0 +
                          w2 * (-61.0 / 720.0 + w2 * (277.0 / 8064.0))));
        const cplx tanh_over_w = 1.0 + w2 * (-1.0 / 3.0 + w2 * (2.0 / 15.0 +
                          w2 * (-17.0 / 315.0 + w2 * (62.0 / 2835.0))));
        return {sech, z * tanh_over_w};
    }

    const cplx ch = std::cosh(w);
    return {1.0 / ch, z * std::tanh(w) / w};
}

double erf_real(double y)
{
    if (y == 0.0) return 0.0;
    const double a = std::erf(std::abs(y));
    return y < 0.0 ? -a : a;
}

namespace {

// Scaled I_nu via the uniform asymptotic expansion, valid for large y.
double bessel_ie_asymptotic(int nu, double y)
{
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 30; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * -(mu - odd * odd) / (8.0 * y * k);
        if (std::abs(next) >= std::abs(term)) break;  // asymptotic tail growing
        term = next;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * y);
}

double bessel_ie_series(int nu, double y)
{
    // e^-y sum_k (y/2)^(2k+nu) / (k! (k+nu)!)
    const double h = 0.5 * y;
    double term = 1.0;
    for (int j = 1; j <= nu; ++j) term *= h / j;
    double sum = term;
    for (int k = 1; k <= 200; ++k) {
        term *= h * h / (k * (k + nu));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum * std::exp(-y);
}

}  // namespace

std::pair<double, double> bessel_i0e_i1e(double y)
{
    if (!(y >= 0.0))
        throw std::domain_error("bessel_i0e_i1e: y must be >= 0");
    if (y == 0.0) return {1.0, 0.0};
    if (y <= 30.0)
        return {bessel_ie_series(0, y), bessel_ie_series(1, y)};
    return {bessel_ie_asymptotic(0, y), bessel_ie_asymptotic(1, y)};
}

double sinc(double y)
{
    const double a = M_PI * y;
    if (std::abs(a) < 1e-6) return 1.0 - a * a / 6.0;
    return std::sin(a) / a;
}

double erf_ratio(double y)
{
    if (y < 1e-4) {
        const double y2 = y * y;
        return 1.0 + y2 * (-1.0 / 3.0 + y2 * (1.0 / 10.0 - y2 / 42.0));
    }
    return 0.5 * std::sqrt(M_PI) * std::erf(y) / y;
}

}  // namespace fiberacf
