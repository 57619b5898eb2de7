#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "fiberacf/params.hpp"

namespace fiberacf {

// One-sided DC spectral line plus continuous density on a symmetric grid.
struct Psd {
    std::vector<double> freqs;    // Hz
    std::vector<double> density;  // W/Hz
    double dc_line;               // W, discrete line at f = 0
};

struct PsdGrid {
    double dtau;   // s
    double f_max;  // Hz, grid spans [-f_max, f_max]
    double df;     // Hz
};

PsdGrid default_psd_grid(double b);

// Transform of the time-averaged autocorrelation. acf_tau must be real, even
// in tau, and equal to `asymptote` at |tau| = t_s (checked to 1e-9 relative
// to acf_tau(0)); the constant tail becomes the DC line.
Psd psd_cyclostationary(const std::function<double(double)>& acf_tau,
                        double t_s, double asymptote, const PsdGrid& grid);

// Integral of the density over |f| <= w/2 plus the DC line.
double band_power(const Psd& psd, double w);

// Triangular bounding filter: b(t) = 2W sinc^2(Wt), transform 2(1 - |f|/W)
// on |f| <= W.
double triangle_filter_time(double t, double w);
double triangle_filter_freq(double f, double w);

// Finite-horizon PSD from a sampled two-time autocorrelation matrix
// a(i, j) = A(t_axis[i], t_axis[j]); O(N^2) per frequency, cross-checks only.
std::vector<double> psd_finite_horizon(const Eigen::MatrixXcd& a,
                                       const std::vector<double>& t_axis,
                                       const std::vector<double>& freqs);

}  // namespace fiberacf
