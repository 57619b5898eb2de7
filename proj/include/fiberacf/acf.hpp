#pragma once

#include <vector>

#include <Eigen/Dense>

#include "fiberacf/params.hpp"

namespace fiberacf {

enum class AcfRegime { exact, approx, limit_rho1 };

struct AcfValue {
    cplx value;  // W
    AcfRegime regime;
};

struct AcfGrid {
    std::vector<double> t_axis;   // s
    std::vector<double> tp_axis;  // s
    Eigen::MatrixXcd values;      // values(i, j) = A(t_axis[i], tp_axis[j])
};

// Closed-form conditional autocorrelation E[U(z,t) U(z,t')* | u0, u0'].
// For 1 - rho^2 below 1e-8 the analytic rho -> +-1 limit branch is used
// (S_I/sqrt(1-rho^2) -> gamma (K/2) z^2, T_I/sqrt(1-rho^2) -> gamma K z^3/3).
AcfValue acf_exact(cplx u0, cplx u0p, double rho, const DerivedConstants& dc);

// Low noise-nonlinearity-distance approximation, second order in
// sqrt(gamma K z^2).
AcfValue acf_approx(cplx u0, cplx u0p, double rho, const DerivedConstants& dc);

enum class RectMode { exact, approx };

// Isolated rectangular pulse of power p on |t| <= t_s/2.
AcfValue acf_rect_isolated(double t, double tp, double p, double t_s,
                           const DerivedConstants& dc, double rho,
                           RectMode mode = RectMode::exact);

// Constant-envelope PAM with uniform random phase per symbol.
AcfValue acf_ring(bool same_symbol, double p, double rho, const DerivedConstants& dc);

// Time-averaged ring-PAM autocorrelation; real and even in tau.
double acf_ring_time_avg(double tau, double p, double t_s, const DerivedConstants& dc);

enum class AmpBoundVariant { eq_fixed_band, eq_scaled_band };

// Upper bounds on |A(t,t')|. The fixed-band variant requires (and enforces by
// swapping) |u0| >= |u0'|; the scaled-band variant keeps the |S|^2 factor and
// uses the additive slack delta, suitable when B scales with power.
double acf_amplitude_bound(cplx u0, cplx u0p, double rho,
                           const DerivedConstants& dc, AmpBoundVariant variant);

// B -> infinity at fixed noise PDD K: samples at distinct instants are
// independent and the off-diagonal ACF factors as v(t) v(t')*.
AcfValue acf_infinite_bandwidth(cplx u0, cplx u0p, bool t_equal,
                                const DerivedConstants& dc);

// Fills A(t, t') over the product grid; rho is derived from t - t' and the
// OA bandwidth in dc.
AcfGrid acf_grid(const std::vector<double>& t_axis,
                 const std::vector<double>& tp_axis,
                 const std::vector<cplx>& u0_t,
                 const std::vector<cplx>& u0_tp,
                 const DerivedConstants& dc);

}  // namespace fiberacf
