// Command-line front end: figure reproduction, curve dumps, and the
// validation suites. All outputs are deterministic CSV plus a run manifest.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fiberacf/acf.hpp"
#include "fiberacf/bounds.hpp"
#include "fiberacf/capacity.hpp"
#include "fiberacf/channel_mc.hpp"
#include "fiberacf/spectrum.hpp"
#include "fiberacf/validation.hpp"

using namespace fiberacf;
namespace fs = std::filesystem;

namespace {

struct RunContext {
    FiberParams params;
    DerivedConstants dc;
    std::string config_path;  // empty = built-in reference table
    std::string out_dir = ".";
    uint64_t seed = 42;
    int threads = 1;
    std::size_t trials = 10000;
    std::vector<std::string> argv;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point t0;
};

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Csv {
public:
    Csv(RunContext& ctx, const std::string& name) : path_(fs::path(ctx.out_dir) / name)
    {
        fs::create_directories(ctx.out_dir);
        out_.open(path_);
        if (!out_) throw std::runtime_error("cannot open " + path_.string());
        ctx.outputs.push_back(path_.string());
    }

    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
    std::ofstream out_;
};

std::string file_digest(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    char c;
    while (in.get(c)) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_manifest(RunContext& ctx)
{
    nlohmann::json m;
    m["command"] = ctx.argv;
    m["config"] = ctx.config_path.empty() ? "builtin-reference" : ctx.config_path;
    m["config_digest"] =
        ctx.config_path.empty() ? "builtin" : file_digest(ctx.config_path);
    m["seed"] = ctx.seed;
    m["threads"] = ctx.threads;
    m["trials"] = ctx.trials;
    m["version"] = "fiberacf 1.0.0";
    m["outputs"] = ctx.outputs;
    m["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.t0)
            .count();
    fs::create_directories(ctx.out_dir);
    std::ofstream out(fs::path(ctx.out_dir) / "manifest.json");
    out << m.dump(2) << "\n";
}

std::vector<double> log_grid(double lo, double hi, std::size_t n)
{
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1.0));
    return g;
}

double abs_db(double v) { return 10.0 * std::log10(std::max(v, 1e-300)); }

// ---------------------------------------------------------------- figures

void fig_special(RunContext& ctx, int id)
{
    Csv csv(ctx, "fig" + std::to_string(id) + ".csv");
    const double z = ctx.params.z;
    if (id == 1)
        csv.row({"x", "abs_s", "s_r", "s_i"});
    else
        csv.row({"x", "t_r_over_z", "t_i_over_z"});
    for (double x : log_grid(1e-6, 1e3, 600)) {
        const auto h = eval_hyperbolic(cplx(0.0, -x / (z * z)), z);
        if (id == 1)
            csv.row({num(x), num(std::abs(h.s)), num(h.s_r()), num(h.s_i())});
        else
            csv.row({num(x), num(h.t_r() / z), num(h.t_i() / z)});
    }
}

void fig_rect_acf(RunContext& ctx, int id, double tprime_ps)
{
    // |A(t, t')| for an isolated rectangular pulse; id 4 adds MC columns
    Csv csv(ctx, "fig" + std::to_string(id) + ".csv");
    const double t_s = ctx.params.t_s;
    const std::vector<double> powers =
        id == 3 ? std::vector<double>{0.01, 0.1, 0.2, 0.4}
                : std::vector<double>{0.1};
    const double tprimes[2] = {0.0, tprime_ps * 1e-12};

    std::vector<std::string> head = {"t_ps"};
    for (double p : powers) {
        for (double tp : tprimes) {
            const std::string tag = "p" + std::to_string(int(p * 1000)) + "mw_tp" +
                                    (tp == 0.0 ? "0" : "x");
            head.push_back(tag + "_abs_db");
            if (id == 4) {
                head.push_back(tag + "_mc_abs_db");
                head.push_back(tag + "_mc_se_w");
            }
        }
    }
    csv.row(head);

    const int n = id == 3 ? 241 : 61;
    std::size_t cell = 0;
    for (int i = 0; i < n; ++i) {
        const double t = -t_s + 2.0 * t_s * i / (n - 1.0);
        std::vector<std::string> row = {num(t * 1e12)};
        for (double p : powers) {
            for (double tp : tprimes) {
                const double r = rho(t - tp, ctx.params.b);
                const auto a =
                    acf_rect_isolated(t, tp, p, t_s, ctx.dc, r);
                row.push_back(num(abs_db(std::abs(a.value))));
                if (id == 4) {
                    const bool in_t = std::abs(t) <= t_s / 2.0;
                    const bool in_tp = std::abs(tp) <= t_s / 2.0;
                    const auto mc = mc_acf(in_t ? std::sqrt(p) : 0.0,
                                           in_tp ? std::sqrt(p) : 0.0, r, ctx.dc,
                                           ctx.trials, 512,
                                           ctx.seed + 7919 * (++cell),
                                           ctx.threads);
                    row.push_back(num(abs_db(std::abs(mc.mean))));
                    row.push_back(num(mc.std_error));
                }
            }
        }
        csv.row(row);
    }
}

void fig_ring(RunContext& ctx)
{
    // time-averaged ring-PAM |A(tau)| with a gamma = 0 reference and MC spots
    Csv csv(ctx, "fig5.csv");
    csv.row({"tau_ps", "abs_w", "abs_w_gamma0", "mc_abs_w", "mc_se_w"});
    const double p = 0.1, t_s = ctx.params.t_s;
    FiberParams lin = ctx.params;
    lin.gamma = 0.0;
    const auto dc0 = derive_constants(lin);

    const int n = 121, phases = 16;
    std::size_t cell = 0;
    for (int i = 0; i < n; ++i) {
        const double tau = 2.0 * t_s * i / (n - 1.0);
        const double a = acf_ring_time_avg(tau, p, t_s, ctx.dc);
        const double a0 = acf_ring_time_avg(tau, p, t_s, dc0);
        std::string mc_abs = "", mc_se = "";
        if (i % 10 == 0) {
            // circular phase average of the cross-symbol term by uniform
            // phase quadrature; same-symbol term has equal phases
            const double r = rho(tau, ctx.params.b);
            const std::size_t per = std::max<std::size_t>(ctx.trials / phases, 2);
            cplx cross = 0.0;
            double se2 = 0.0;
            for (int k = 0; k < phases; ++k) {
                const cplx u0p = std::polar(std::sqrt(p), 2.0 * M_PI * k / phases);
                const auto est = mc_acf(std::sqrt(p), u0p, r, ctx.dc, per, 512,
                                        ctx.seed + 104729 * (++cell), ctx.threads);
                cross += est.mean / static_cast<double>(phases);
                se2 += est.std_error * est.std_error /
                       static_cast<double>(phases * phases);
            }
            const auto same = mc_acf(std::sqrt(p), std::sqrt(p), r, ctx.dc,
                                     ctx.trials, 512,
                                     ctx.seed + 104729 * (++cell), ctx.threads);
            const double frac = std::min(tau / t_s, 1.0);
            const cplx mix = (1.0 - frac) * same.mean + frac * cross;
            mc_abs = num(std::abs(mix));
            mc_se = num(std::sqrt((1.0 - frac) * (1.0 - frac) * same.std_error *
                                      same.std_error +
                                  frac * frac * se2));
        }
        csv.row({num(tau * 1e12), num(std::abs(a)), num(std::abs(a0)), mc_abs,
                 mc_se});
    }
}

void write_psd_csv(Csv& csv, const Psd& psd)
{
    csv.row({"f_ghz", "psd_dbw_per_hz", "dc_line_w"});
    for (std::size_t i = 0; i < psd.freqs.size(); ++i)
        csv.row({num(psd.freqs[i] * 1e-9), num(abs_db(psd.density[i])),
                 num(psd.dc_line)});
}

Psd ring_psd(const DerivedConstants& dc, double p)
{
    const double asym = acf_ring_time_avg(dc.p.t_s, p, dc.p.t_s, dc);
    return psd_cyclostationary(
        [&](double tau) { return acf_ring_time_avg(tau, p, dc.p.t_s, dc); },
        dc.p.t_s, asym, default_psd_grid(dc.p.b));
}

void fig_psd(RunContext& ctx)
{
    Csv csv(ctx, "fig6.csv");
    std::vector<std::string> head = {"f_ghz"};
    const std::vector<double> powers = {0.01, 0.05, 0.1, 0.5, 1.0};
    std::vector<Psd> psds;
    for (double p : powers) {
        psds.push_back(ring_psd(ctx.dc, p));
        head.push_back("p" + std::to_string(int(p * 1000)) + "mw_dbw_per_hz");
    }
    FiberParams lin = ctx.params;
    lin.gamma = 0.0;
    psds.push_back(ring_psd(derive_constants(lin), 0.1));
    head.push_back("gamma0_p100mw_dbw_per_hz");
    csv.row(head);
    for (std::size_t i = 0; i < psds[0].freqs.size(); ++i) {
        std::vector<std::string> row = {num(psds[0].freqs[i] * 1e-9)};
        for (const auto& s : psds) row.push_back(num(abs_db(s.density[i])));
        csv.row(row);
    }
}

void capacity_rows(RunContext& ctx, Csv& csv)
{
    const double w = ctx.params.b;
    const auto regime = classify_regime(w, ctx.dc);
    const double p_star = power_threshold(ctx.dc);
    csv.row({"p_dbm", "upper1_bpshz", "upper2_bpshz", "eta_bpshz",
             "threshold_dbm"});
    for (double p : log_grid(1e-4, 1e8, 241)) {
        csv.row({num(w_to_dbm(p)), num(capacity_upper1(p, w, ctx.dc, regime)),
                 num(capacity_upper2(p, w, ctx.dc, regime)),
                 num(eta_bound(p, w, ctx.dc)), num(w_to_dbm(p_star))});
    }
}

void fig_scaled_b(RunContext& ctx)
{
    Csv csv(ctx, "fig8.csv");
    csv.row({"p_dbm", "scaled_b_bpshz"});
    const auto grid = log_grid(1e-4, 1e9, 241);
    const auto curve = scaled_b_curve(grid, ctx.params.b, ctx.params);
    for (std::size_t i = 0; i < grid.size(); ++i)
        csv.row({num(w_to_dbm(grid[i])), num(curve.values[i])});
}

int cmd_fig(RunContext& ctx, int id)
{
    switch (id) {
        case 1:
        case 2: fig_special(ctx, id); break;
        case 3: fig_rect_acf(ctx, 3, 5.1); break;
        case 4: fig_rect_acf(ctx, 4, 5.1); break;
        case 5: fig_ring(ctx); break;
        case 6: fig_psd(ctx); break;
        case 7: {
            Csv csv(ctx, "fig7.csv");
            capacity_rows(ctx, csv);
            break;
        }
        case 8: fig_scaled_b(ctx); break;
        default: return 1;
    }
    return 0;
}

// ------------------------------------------------------------- subcommands

int cmd_acf(RunContext& ctx, double p, double tprime_ps, int points)
{
    Csv csv(ctx, "acf.csv");
    csv.row({"t_ps", "tprime_ps", "re_w", "im_w", "abs_db"});
    const double t_s = ctx.params.t_s;
    for (double tp_ps : {0.0, tprime_ps}) {
        const double tp = tp_ps * 1e-12;
        for (int i = 0; i < points; ++i) {
            const double t = -t_s + 2.0 * t_s * i / (points - 1.0);
            const double r = rho(t - tp, ctx.params.b);
            const cplx a = acf_rect_isolated(t, tp, p, t_s, ctx.dc, r).value;
            csv.row({num(t * 1e12), num(tp_ps), num(a.real()), num(a.imag()),
                     num(abs_db(std::abs(a)))});
        }
    }
    return 0;
}

int cmd_psd(RunContext& ctx, double p)
{
    Csv csv(ctx, "psd.csv");
    write_psd_csv(csv, ring_psd(ctx.dc, p));
    return 0;
}

int cmd_bounds(RunContext& ctx, const std::string& kind, double w)
{
    Csv csv(ctx, "bounds.csv");
    csv.row({"p_dbm", "bound_w", "regime", "term_erf_w", "term_tail1_w",
             "term_tail2_w"});
    const auto regime = classify_regime(w, ctx.dc);
    for (double p : log_grid(1e-6, 1e4, 201)) {
        const BoundReport rep = kind == "inst"
                                    ? inst_power_bound(p, regime, ctx.dc)
                                    : avg_power_bound(p, w, ctx.dc, regime);
        csv.row({num(w_to_dbm(p)), num(rep.bound), regime_name(rep.regime.tag),
                 num(rep.term_erf), num(rep.term_tail1), num(rep.term_tail2)});
    }
    return 0;
}

int cmd_demo(RunContext& ctx, const std::string& which)
{
    if (which == "three-sample") {
        const double x = std::sqrt(1e-3);
        Csv csv(ctx, "demo_three_sample.csv");
        csv.row({"t_small_s", "estimate", "std_error", "truth"});
        for (double t : {1.0, 1e-1, 1e-2, 1e-3}) {
            const auto res = three_sample_demo(x, t / ctx.params.b, ctx.dc,
                                               ctx.trials, ctx.seed);
            csv.row({num(t / ctx.params.b), num(res.estimate),
                     num(res.std_error), num(res.truth)});
            std::printf("t_small=%g/B: estimate %.6e (se %.1e), truth %.6e\n",
                        t, res.estimate, res.std_error, res.truth);
        }
        return 0;
    }
    // frequency-conversion demo
    const auto fsk = fsk_demo(4, 1.0, 0.5, 1e-3);
    Csv csv(ctx, "demo_fsk_gram.csv");
    std::vector<std::string> head = {"row"};
    for (int j = 0; j < fsk.gram.cols(); ++j)
        head.push_back("abs_col" + std::to_string(j));
    csv.row(head);
    for (int i = 0; i < fsk.gram.rows(); ++i) {
        std::vector<std::string> row = {std::to_string(i)};
        for (int j = 0; j < fsk.gram.cols(); ++j)
            row.push_back(num(std::abs(fsk.gram(i, j))));
        csv.row(row);
    }
    std::printf("launch power %.3f W, union-bound Pe %.3e, rate %.3e bits/s\n",
                fsk.p, fsk.pe, fsk.rate);
    std::printf("largest normalized off-diagonal inner product: ");
    double worst = 0.0;
    for (int i = 0; i < fsk.gram.rows(); ++i)
        for (int j = 0; j < fsk.gram.cols(); ++j)
            if (i != j)
                worst = std::max(worst, std::abs(fsk.gram(i, j)) /
                                            std::sqrt(fsk.gram(i, i).real() *
                                                      fsk.gram(j, j).real()));
    std::printf("%.3e\n", worst);
    return 0;
}

int cmd_validate(RunContext& ctx, const std::string& suite)
{
    ValidationOptions opts;
    opts.seed = ctx.seed;
    opts.threads = ctx.threads;
    opts.trials_mc = ctx.trials;

    std::vector<std::string> suites;
    if (suite == "all")
        suites = {"special", "mc-acf", "mecozzi", "bounds", "capacity", "demos"};
    else
        suites = {suite};

    bool ok = true;
    for (const auto& s : suites) {
        const auto results = validate_suite(s, opts);
        for (const auto& r : results) {
            std::printf("[%s] %-20s %s  margin %+.3e  %s\n", s.c_str(),
                        r.name.c_str(),
                        r.pass ? "pass" : r.known_issue ? "FAIL (known)" : "FAIL",
                        r.margin, r.detail.c_str());
        }
        ok = ok && all_passed(results);
    }
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"dispersion-free fiber autocorrelation and capacity bounds"};
    app.require_subcommand(1);

    RunContext ctx;
    ctx.t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < argc; ++i) ctx.argv.emplace_back(argv[i]);

    app.add_option("--config", ctx.config_path, "fiber parameter file (TOML)");
    app.add_option("--out", ctx.out_dir, "output directory");
    app.add_option("--seed", ctx.seed, "Monte Carlo seed");
    app.add_option("--threads", ctx.threads, "Monte Carlo worker threads");
    app.add_option("--trials", ctx.trials, "Monte Carlo trials");

    auto* fig = app.add_subcommand("fig", "reproduce a figure data set");
    int fig_id = 0;
    fig->add_option("id", fig_id, "figure number 1-8")
        ->required()
        ->check(CLI::Range(1, 8));

    auto* acf = app.add_subcommand("acf", "autocorrelation grid dump");
    double acf_p = 0.1, acf_tprime = 5.1;
    int acf_points = 241;
    acf->add_option("--p-w", acf_p, "launch power, W");
    acf->add_option("--tprime-ps", acf_tprime, "second time instant, ps");
    acf->add_option("--points", acf_points, "samples across [-T_s, T_s]");

    auto* psd = app.add_subcommand("psd", "ring-modulation power spectrum");
    double psd_p = 0.1;
    psd->add_option("--p-w", psd_p, "launch power, W");

    auto* bounds = app.add_subcommand("bounds", "receiver power bound curves");
    std::string bounds_kind = "avg";
    double bounds_w = 0.0;
    bounds->add_option("--kind", bounds_kind, "avg or inst")
        ->check(CLI::IsMember({"avg", "inst"}));
    bounds->add_option("--w-hz", bounds_w, "receiver bandwidth, Hz (default B)");

    auto* capacity = app.add_subcommand("capacity", "capacity bound curves");

    auto* demo = app.add_subcommand("demo", "illustrative constructions");
    std::string demo_which = "fsk";
    demo->add_option("which", demo_which, "fsk or three-sample")
        ->check(CLI::IsMember({"fsk", "three-sample"}));

    auto* validate = app.add_subcommand("validate", "run a validation suite");
    std::string validate_suite = "all";
    validate->add_option("suite", validate_suite, "suite name or 'all'")
        ->check(CLI::IsMember({"all", "special", "mc-acf", "mecozzi", "bounds",
                               "capacity", "demos"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // collapse CLI11's error codes to "usage"
    }

    if (const char* env = std::getenv("FIBERACF_SEED"))
        ctx.seed = std::strtoull(env, nullptr, 10);

    try {
        ctx.params = ctx.config_path.empty() ? reference_params()
                                             : load_config(ctx.config_path);
        ctx.dc = derive_constants(ctx.params);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    try {
        int rc = 0;
        if (fig->parsed()) rc = cmd_fig(ctx, fig_id);
        else if (acf->parsed()) rc = cmd_acf(ctx, acf_p, acf_tprime, acf_points);
        else if (psd->parsed()) rc = cmd_psd(ctx, psd_p);
        else if (bounds->parsed())
            rc = cmd_bounds(ctx, bounds_kind,
                            bounds_w > 0.0 ? bounds_w : ctx.params.b);
        else if (capacity->parsed()) {
            Csv csv(ctx, "capacity.csv");
            capacity_rows(ctx, csv);
        } else if (demo->parsed())
            rc = cmd_demo(ctx, demo_which);
        else if (validate->parsed())
            rc = cmd_validate(ctx, validate_suite);
        if (rc == 0 && !validate->parsed()) write_manifest(ctx);
        return rc;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
