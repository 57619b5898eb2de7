#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fiberacf/bounds.hpp"
#include "fiberacf/params.hpp"

namespace fiberacf {

struct CapacityCurve {
    std::vector<double> p_grid;  // W
    std::vector<double> values;  // bits/s/Hz
    std::string kind;            // shannon | upper1 | upper2 | eta | scaled_b
};

// Linear AWGN reference, W log2(1 + P / (W N0)) bits/s.
double shannon_c(double w, double p, double n0);

// log2(1 + Pr / (W N0)) with Pr = min(Kz + p, avg_power_bound); the two-part
// curve whose slope halves once the sqrt(P) receiver-power bound takes over.
double capacity_upper1(double p, double w, const DerivedConstants& dc,
                       const BoundRegime& regime);

// In-band refinement log2((Pr + W N0) / (Kz W/B + W N0)); needs W <= B.
double capacity_upper2(double p, double w, const DerivedConstants& dc,
                       const BoundRegime& regime);

// Spectral efficiency C(W) / max(W, W_min) with W_min from the propagating
// bandwidth lower bound.
double eta_bound(double p, double w, const DerivedConstants& dc);

// upper1 with the OA bandwidth scaled as B = W max(1, sqrt(kappa_hat P/512)),
// kappa_hat taken from the template at B = W; constants re-derived per P.
CapacityCurve scaled_b_curve(const std::vector<double>& p_grid, double w,
                             const FiberParams& tmpl);

// Per-sample receiver, B -> infinity at fixed K: amplitude-constrained
// capacity upper bound in bits/s, saturating at p = 1/kappa.
double infiniteb_capacity_bound(double p, double t_s, const DerivedConstants& dc);

struct ThreeSampleResult {
    double estimate;   // mean of T_s ((y1 + y2)/2 - y0)
    double std_error;
    double truth;      // x^2
    std::size_t trials;
};

// Three closely spaced per-sample intensity measurements around one symbol
// transition; the noise floor Kz cancels in expectation and the estimate
// converges to x^2 as t_small -> 0.
ThreeSampleResult three_sample_demo(double x, double t_small,
                                    const DerivedConstants& dc,
                                    std::size_t trials, uint64_t seed);

struct FskDemoResult {
    Eigen::MatrixXcd gram;  // inner products of the noise-free output pulses
    double rate;            // bits/s at the target error probability
    double pe;              // union bound on symbol error probability
    double p;               // average launch power E / T_s
};

// Square-root PAM pulses through the noiseless Kerr channel become tones with
// intensity-dependent frequency; gamma = 2 pi (1 - t_s/2) so the modulation
// index times t_s is 1. Inner products by adaptive quadrature.
FskDemoResult fsk_demo(unsigned m, double delta, double t_s, double n0,
                       double pe_target = 1e-6);

}  // namespace fiberacf
