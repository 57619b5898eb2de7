#pragma once

#include <complex>
#include <string>

#include "fiberacf/special.hpp"

namespace fiberacf {

// All values are SI. dBm/dB conversions happen at the reporting layer only.
struct FiberParams {
    double gamma;   // Kerr coefficient, 1/(W m)
    double z;       // fiber length, m
    double n_a;     // OA noise PSDD, W/(Hz m)
    double b;       // OA bandwidth, Hz
    double n0;      // receiver noise PSD, W/Hz
    double t_s;     // symbol period, s
    double t_e;     // temperature, K; documentation only, n0 is authoritative
};

// Reference configuration: gamma = 1.27 /W/km, z = 2000 km, N_A = 6.674e-24
// W/Hz/m, B = 500 GHz, N_0 = 4.142e-21 W/Hz, T_s = 10 ps, T_e = 300 K.
FiberParams reference_params();

struct DerivedConstants {
    FiberParams p;
    double k;      // noise PDD, W/m (n_a * b)
    double kappa;  // 1/W (2 gamma^2 K z^3 / 3)
    double gkz2;   // gamma K z^2, dimensionless
    double delta;  // sqrt(3 K z / (4 e)), sqrt(W)
    double p_o;    // 3 (K z + delta^2), W
    double c1;     // W
    double c2;     // W
    double c3;     // W
};

DerivedConstants derive_constants(const FiberParams& p);

// Correlation coefficient of the accumulated noise at two instants tau apart.
double rho(double tau, double b);

// c = -j gamma (K/2) sqrt(1 - rho^2); throws std::domain_error if |rho| > 1.
cplx c_of_rho(const DerivedConstants& dc, double rho);

// Minimal TOML-subset config reader: a [fiber] table of key = number pairs.
// Keys: gamma_per_w_km, length_km, oa_noise_psdd_w_per_hz_m, oa_bandwidth_ghz,
// rx_noise_psd_w_per_hz, symbol_period_ps, optional temperature_k.
// If temperature_k is present, n0 = k_B T_e is asserted to 0.1%.
// Throws std::runtime_error on parse or consistency failure.
FiberParams load_config(const std::string& path);

// Quantity parsing for config and report round-trips, e.g. "1.27 /W/km",
// "500 GHz", "2000 km" -> SI value; format_quantity inverts it.
double parse_quantity(const std::string& text, const std::string& unit);
std::string format_quantity(double value_si, const std::string& unit);

double dbm_to_w(double dbm);
double w_to_dbm(double w);

}  // namespace fiberacf
