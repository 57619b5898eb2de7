#include "fiberacf/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fiberacf {

FiberParams reference_params()
{
    return {
        1.27e-3,    // gamma, 1/(W m)
        2.0e6,      // z, m
        6.674e-24,  // n_a, W/(Hz m)
        5.0e11,     // b, Hz
        4.142e-21,  // n0, W/Hz
        1.0e-11,    // t_s, s
        300.0,      // t_e, K
    };
}

DerivedConstants derive_constants(const FiberParams& p)
{
    if (!(p.gamma >= 0) || !(p.z > 0) || !(p.n_a > 0) || !(p.b > 0) ||
        !(p.n0 > 0) || !(p.t_s > 0))
        throw std::invalid_argument("derive_constants: parameters must be positive (gamma >= 0)");

    DerivedConstants dc;
    dc.p = p;
    const double k = p.n_a * p.b;
    const double kz = k * p.z;
    dc.k = k;
    dc.kappa = 2.0 * p.gamma * p.gamma * k * p.z * p.z * p.z / 3.0;
    dc.gkz2 = p.gamma * k * p.z * p.z;
    dc.delta = std::sqrt(3.0 * kz / (4.0 * M_E));
    const double d2 = dc.delta * dc.delta;
    dc.p_o = 3.0 * (kz + d2);

    if (p.gamma == 0.0) {
        // linear reference channel: the lemma constants are meaningless
        dc.c1 = dc.c2 = dc.c3 = std::numeric_limits<double>::infinity();
        return dc;
    }
    const double damp = std::exp(-std::sqrt(dc.gkz2));
    dc.c1 = 20.0 * (kz + d2 + std::sqrt(18.0 / (dc.kappa * M_E)) * dc.delta +
                    9.0 / (dc.kappa * M_E)) * damp;
    dc.c2 = (100.0 / dc.gkz2) * (kz + d2 + std::sqrt(6.0 * kz / M_E) * dc.delta +
                    std::sqrt(18.0) * kz / M_E);
    dc.c3 = 20.0 * (kz + d2 + std::pow(80.0 * k / (p.gamma * M_E * M_E), 0.25) * dc.delta +
                    std::sqrt(20.0 * k / (p.gamma * M_E * M_E))) * damp;
    return dc;
}

double rho(double tau, double b)
{
    return sinc(b * tau);
}

cplx c_of_rho(const DerivedConstants& dc, double r)
{
    if (std::abs(r) > 1.0)
        throw std::domain_error("c_of_rho: |rho| must be <= 1");
    return cplx(0.0, -dc.p.gamma * (dc.k / 2.0) * std::sqrt(1.0 - r * r));
}

namespace {

const std::map<std::string, double>& unit_scales()
{
    static const std::map<std::string, double> scales = {
        {"/W/km", 1e-3}, {"/W/m", 1.0},
        {"km", 1e3},     {"m", 1.0},
        {"GHz", 1e9},    {"MHz", 1e6},   {"Hz", 1.0},
        {"ps", 1e-12},   {"ns", 1e-9},   {"s", 1.0},
        {"mW", 1e-3},    {"W", 1.0},
        {"K", 1.0},
        {"W/Hz", 1.0},   {"W/Hz/m", 1.0},
    };
    return scales;
}

double unit_scale(const std::string& unit)
{
    auto it = unit_scales().find(unit);
    if (it == unit_scales().end())
        throw std::runtime_error("unknown unit: " + unit);
    return it->second;
}

}  // namespace

double parse_quantity(const std::string& text, const std::string& unit)
{
    std::istringstream is(text);
    double value;
    std::string u;
    if (!(is >> value >> u) || u != unit)
        throw std::runtime_error("cannot parse quantity '" + text + "' as " + unit);
    return value * unit_scale(unit);
}

std::string format_quantity(double value_si, const std::string& unit)
{
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g %s", value_si / unit_scale(unit), unit.c_str());
    return buf;
}

double dbm_to_w(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
double w_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

FiberParams load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config: " + path);

    std::map<std::string, double> kv;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = line.substr(0, eq);
        key.erase(key.find_last_not_of(" \t") + 1);
        std::string val = line.substr(eq + 1);
        if (section != "fiber") continue;
        try {
            kv[key] = std::stod(val);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number for " + key);
        }
    }

    auto need = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end())
            throw std::runtime_error(path + ": missing [fiber] key " + std::string(key));
        return it->second;
    };

    FiberParams p;
    p.gamma = need("gamma_per_w_km") * 1e-3;
    p.z = need("length_km") * 1e3;
    p.n_a = need("oa_noise_psdd_w_per_hz_m");
    p.b = need("oa_bandwidth_ghz") * 1e9;
    p.n0 = need("rx_noise_psd_w_per_hz");
    p.t_s = need("symbol_period_ps") * 1e-12;
    p.t_e = kv.count("temperature_k") ? kv.at("temperature_k") : 0.0;

    if (p.t_e > 0.0) {
        const double kb = 1.380649e-23;
        if (std::abs(p.n0 - kb * p.t_e) > 1e-3 * p.n0)
            throw std::runtime_error(path + ": rx_noise_psd_w_per_hz disagrees with k_B * temperature_k by more than 0.1%");
    }
    return p;
}

}  // namespace fiberacf
