#pragma once

#include <string>
#include <vector>

#include "fiberacf/params.hpp"

namespace fiberacf {

enum class RegimeTag {
    lemma1,       // W <= B, gamma (K/2) z^2 <= 1
    lemma2,       // W <= B, gamma (K/2) z^2 >= 1
    lemma3,       // W >= B, gamma (K/2) z^2 <= 1
    unsupported,  // W >= B, gamma (K/2) z^2 >= 1
};

std::string regime_name(RegimeTag tag);

struct BoundRegime {
    double w;          // Hz
    double b;          // Hz
    double gkz2_half;  // gamma (K/2) z^2
    RegimeTag tag;
    bool at_boundary;  // gamma (K/2) z^2 == 1, both W <= B lemmas apply
};

BoundRegime classify_regime(double w, const DerivedConstants& dc);

struct BoundReport {
    double input;       // W (launch or instantaneous power)
    double bound;       // W or J; = term_erf + term_tail1 + term_tail2
    BoundRegime regime;
    double term_erf;
    double term_tail1;
    double term_tail2;
    double alt_bound;   // other lemma's value when at_boundary, else NaN
};

// (a + b_coef sqrt(p) + c_coef p) * (sqrt(pi)/2) erf(sqrt(sp)) / sqrt(sp),
// continuous at p = 0. The launch-power bounds use a = Kz + delta^2,
// b_coef = 2 delta, c_coef = 1.
double f_special(double s, double p, double a, double b_coef, double c_coef);
double f_special_d1(double s, double p, double a, double b_coef, double c_coef);
double f_special_d2(double s, double p, double a, double b_coef, double c_coef);

// Instantaneous filtered receiver power, conditioned on launch power p_t.
BoundReport inst_power_bound(double p_t, const BoundRegime& regime,
                             const DerivedConstants& dc);

// Average filtered receiver power for launch power p (any signaling).
BoundReport avg_power_bound(double p, double w, const DerivedConstants& dc,
                            const BoundRegime& regime);

// Required W/B so that a fraction q of the linear-channel power Kz + p fits
// in the band; may be negative (vacuous) at small p. erf_le_one selects the
// looser closed-form variant with erf bounded by 1.
double bandwidth_lower_bound(double p, const DerivedConstants& dc,
                             const BoundRegime& regime, double q = 0.99,
                             bool erf_le_one = false);

// Launch power where the required propagating bandwidth reaches the OA
// bandwidth (bandwidth_lower_bound = 1), by bisection on [1e-3, 1e4] W.
double power_threshold(const DerivedConstants& dc, double q = 0.99);

struct ScalingExponents {
    double receiver_power;  // log-log slope of avg_power_bound
    double bandwidth;       // log-log slope of b * bandwidth_lower_bound
};

// Slopes with the OA bandwidth scaled as b_template * (p / 1 W)^beta and the
// receiver bandwidth held at the template OA bandwidth.
ScalingExponents scaling_exponents(double beta, const FiberParams& tmpl,
                                   const std::vector<double>& p_grid);

// Collected energy over a window of duration t_r (J).
BoundReport energy_bound_time_resolution(double p_t, double t_r,
                                         const DerivedConstants& dc);

// Tightened constant-envelope energy bound at t_r = 1/B (J); exact linear
// limit (Kz + p) t_r as gamma -> 0. Requires gamma (K/2) z^2 <= 1.
double pam_rect_energy_bound(double p, const DerivedConstants& dc);

}  // namespace fiberacf
