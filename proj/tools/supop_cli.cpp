// Command-line front end: builds SUP-operated coherent/thermal states, runs
// the nonclassicality indicators and parameter sweeps, and emits phase-space
// grids as CSV or JSON.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "supop/supop.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace supop;

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Complex parse_complex(const std::string& s) {
    std::istringstream in(s);
    double re = 0, im = 0;
    char comma = 0;
    if (!(in >> re)) throw ValidationError("cannot parse complex value '" + s + "'");
    if (in >> comma) {
        if (comma != ',' || !(in >> im))
            throw ValidationError("cannot parse complex value '" + s + "'");
    }
    return {re, im};
}

std::vector<double> parse_range(const std::string& s) {
    double lo = 0, hi = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
        throw ValidationError("range must be LO:HI:STEP with positive STEP: '" + s + "'");
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    if (count <= 0) throw ValidationError("empty range: '" + s + "'");
    for (int i = 0; i < count; ++i) out.push_back(lo + i * step);
    return out;
}

std::pair<double, double> parse_interval(const std::string& s) {
    double lo = 0, hi = 0;
    char c = 0;
    std::istringstream in(s);
    if (!(in >> lo >> c >> hi) || c != ':' || lo >= hi)
        throw ValidationError("domain must be LO:HI with LO < HI: '" + s + "'");
    return {lo, hi};
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file '" + path + "'");
    out << payload;
    if (!out.good()) throw IoError("failed writing output file '" + path + "'");
}

struct StateOptions {
    std::string kind = "coherent";
    std::string alpha_str = "0.4";
    double nbar = 0.2;
    double t = 0.5;

    StateSpec spec() const {
        StateSpec s;
        if (kind == "coherent") {
            s.kind = StateKind::coherent;
            s.alpha = parse_complex(alpha_str);
        } else if (kind == "thermal") {
            s.kind = StateKind::thermal;
            s.nbar = nbar;
        } else {
            throw ValidationError("state must be 'coherent' or 'thermal'");
        }
        s.t = t;
        return s;
    }
};

void add_state_options(CLI::App* cmd, StateOptions& st, bool with_t = true) {
    cmd->add_option("--state", st.kind, "input family: coherent|thermal")
        ->check(CLI::IsMember({"coherent", "thermal"}));
    cmd->add_option("--alpha", st.alpha_str, "coherent amplitude RE[,IM]");
    cmd->add_option("--nbar", st.nbar, "thermal mean photon number");
    if (with_t) cmd->add_option("--t", st.t, "SUP control parameter in [-1,1]");
}

std::function<double(PhasePoint)> closed_wigner(const StateSpec& spec) {
    const SupParams p = sup_params(spec.t);
    if (spec.kind == StateKind::coherent)
        return [p, a = spec.alpha](PhasePoint b) { return wigner_socs_closed(p, a, b); };
    return [p, n = spec.nbar](PhasePoint b) { return wigner_sots_closed(p, n, b); };
}

/// SUP-operated state at a cutoff adequate for series evaluation out to
/// max_displacement away from the origin.
DensityMatrix build_sup_state(const StateSpec& spec, double max_displacement,
                              int min_cutoff = 0) {
    const double mu = spec.kind == StateKind::coherent ? std::norm(spec.alpha) : spec.nbar;
    const double reach =
        max_displacement + (spec.kind == StateKind::coherent ? std::abs(spec.alpha) : 0.0);
    const int cutoff = std::max(
        {recommended_cutoff(mu),
         static_cast<int>(std::ceil(reach * reach + 10.0 * reach + 16.0)), min_cutoff});
    DensityMatrix rho = spec.kind == StateKind::coherent
                            ? to_density(coherent_state(spec.alpha, cutoff))
                            : thermal_state(spec.nbar, cutoff);
    return apply_sup(rho, sup_params(spec.t)).first;
}

json report_to_json(const IndicatorReport& r) {
    json j;
    j["t"] = r.params.t;
    j["s"] = r.params.s;
    j["state_kind"] = r.kind == StateKind::coherent ? "coherent" : "thermal";
    j["amplitude"] = r.amplitude;
    j["nbar"] = r.nbar;
    j["V"] = r.negative_volume;
    j["Q"] = r.mandel_q;
    j["S_opt"] = r.squeezing_opt;
    j["wigner_min"] = r.wigner_min;
    j["Q_paper_closed"] = r.q_paper_closed;
    j["S_paper_closed"] = r.s_paper_closed;
    j["N_closed"] = r.n_closed;
    j["N_empirical"] = r.n_empirical;
    return j;
}

const char* kReportHeader =
    "t,s,state_kind,amplitude,nbar,V,Q,S_opt,wigner_min,Q_paper_closed,S_paper_closed,"
    "N_closed,N_empirical";

std::string report_to_csv_row(const IndicatorReport& r) {
    std::ostringstream os;
    os << fmt17(r.params.t) << ',' << fmt17(r.params.s) << ','
       << (r.kind == StateKind::coherent ? "coherent" : "thermal") << ','
       << fmt17(r.amplitude) << ',' << fmt17(r.nbar) << ',' << fmt17(r.negative_volume) << ','
       << fmt17(r.mandel_q) << ',' << fmt17(r.squeezing_opt) << ',' << fmt17(r.wigner_min)
       << ',' << fmt17(r.q_paper_closed) << ',' << fmt17(r.s_paper_closed) << ','
       << fmt17(r.n_closed) << ',' << fmt17(r.n_empirical);
    return os.str();
}

// ---- subcommand payload builders ------------------------------------------

std::string run_wigner_grid(const StateOptions& st, int grid_n, const std::string& domain,
                            const std::string& engine, const std::string& format) {
    const StateSpec spec = st.spec();
    auto [lo, hi] = parse_interval(domain);
    const GridBounds bounds = GridBounds::square(lo, hi);
    std::function<double(PhasePoint)> f;
    DensityMatrix rho;  // kept alive for the series engine
    if (engine == "closed") {
        f = closed_wigner(spec);
    } else if (engine == "series") {
        const double corner = std::max(std::hypot(lo, lo), std::hypot(hi, hi));
        rho = build_sup_state(spec, corner);
        f = [&rho](PhasePoint b) { return wigner_series(rho, b); };
    } else {
        throw ValidationError("engine must be 'closed' or 'series'");
    }
    const PhaseGrid g = evaluate_grid(f, bounds, grid_n, grid_n);
    if (format == "csv") {
        std::ostringstream os;
        os << "x,y,w\n";
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j < g.ny; ++j)
                os << fmt17(g.x(i)) << ',' << fmt17(g.y(j)) << ',' << fmt17(g.values(i, j))
                   << '\n';
        return os.str();
    }
    json j;
    j["x_min"] = g.bounds.x_min;
    j["x_max"] = g.bounds.x_max;
    j["y_min"] = g.bounds.y_min;
    j["y_max"] = g.bounds.y_max;
    j["nx"] = g.nx;
    j["ny"] = g.ny;
    json rows = json::array();
    for (int i = 0; i < g.nx; ++i) {
        json row = json::array();
        for (int jj = 0; jj < g.ny; ++jj) row.push_back(g.values(i, jj));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string run_quasiprob_scan(const StateOptions& st, double beta_abs, double beta_arg,
                               std::optional<double> big_f, const std::string& f_range,
                               const std::string& format) {
    const StateSpec spec = st.spec();
    const PhasePoint beta(std::polar(beta_abs, beta_arg));
    // the ordering-kernel sum converges slower the closer F sits to its
    // convergence radius, so give the scan a generous floor
    const DensityMatrix rho = build_sup_state(spec, beta_abs, 96);
    std::vector<double> fs;
    if (!f_range.empty())
        fs = parse_range(f_range);
    else if (big_f)
        fs.push_back(*big_f);
    else
        throw ValidationError("quasiprob-scan needs --bigF or --bigF-range");
    std::vector<std::pair<double, double>> rows;
    for (double f : fs) rows.emplace_back(f, quasiprob_f(rho, beta, OrderingParameter(f)));
    if (format == "csv") {
        std::ostringstream os;
        os << "F,value\n";
        for (auto& [f, v] : rows) os << fmt17(f) << ',' << fmt17(v) << '\n';
        return os.str();
    }
    json j = json::array();
    for (auto& [f, v] : rows) j.push_back({{"F", f}, {"value", v}});
    return j.dump(2) + "\n";
}

std::string run_indicators(const StateOptions& st, int grid_n, const std::string& format) {
    const IndicatorReport rep = indicator_report(st.spec(), grid_n);
    if (format == "csv") {
        std::ostringstream os;
        os << kReportHeader << '\n' << report_to_csv_row(rep) << '\n';
        return os.str();
    }
    return report_to_json(rep).dump(2) + "\n";
}

std::string run_scan_t(const StateOptions& st, const std::string& t_range,
                       const std::string& alpha_range, const std::string& nbar_range,
                       int grid_n, const std::string& format) {
    const std::vector<double> ts = parse_range(t_range);
    std::vector<StateSpec> specs;
    StateSpec base = st.spec();
    if (!alpha_range.empty()) {
        if (base.kind != StateKind::coherent)
            throw ValidationError("--alpha-range requires --state coherent");
        for (double a : parse_range(alpha_range)) {
            StateSpec s = base;
            s.alpha = a;
            specs.push_back(s);
        }
    } else if (!nbar_range.empty()) {
        if (base.kind != StateKind::thermal)
            throw ValidationError("--nbar-range requires --state thermal");
        for (double n : parse_range(nbar_range)) {
            StateSpec s = base;
            s.nbar = n;
            specs.push_back(s);
        }
    } else {
        specs.push_back(base);
    }
    std::vector<IndicatorReport> reports;
    for (const auto& s : specs)
        for (double t : ts) {
            StateSpec point = s;
            point.t = t;
            reports.push_back(indicator_report(point, grid_n));
        }
    if (format == "csv") {
        std::ostringstream os;
        os << kReportHeader << '\n';
        for (const auto& r : reports) os << report_to_csv_row(r) << '\n';
        return os.str();
    }
    json j = json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r));
    return j.dump(2) + "\n";
}

std::string run_negative_volume(const StateOptions& st, int grid_n, const std::string& domain,
                                const std::string& format) {
    const StateSpec spec = st.spec();
    GridBounds bounds = default_domain(spec);
    if (!domain.empty()) {
        auto [lo, hi] = parse_interval(domain);
        bounds = GridBounds::square(lo, hi);
    }
    const auto r = negative_volume(closed_wigner(spec), bounds, grid_n);
    const SupParams p = sup_params(spec.t);
    json j;
    j["t"] = p.t;
    j["s"] = p.s;
    j["state_kind"] = spec.kind == StateKind::coherent ? "coherent" : "thermal";
    j["amplitude"] = std::abs(spec.alpha);
    j["nbar"] = spec.nbar;
    j["V"] = r.volume;
    j["normalization"] = r.normalization;
    j["wigner_min"] = r.min_value;
    if (format == "csv") {
        std::ostringstream os;
        os << "t,s,state_kind,amplitude,nbar,V,normalization,wigner_min\n";
        os << fmt17(p.t) << ',' << fmt17(p.s) << ','
           << (spec.kind == StateKind::coherent ? "coherent" : "thermal") << ','
           << fmt17(std::abs(spec.alpha)) << ',' << fmt17(spec.nbar) << ',' << fmt17(r.volume)
           << ',' << fmt17(r.normalization) << ',' << fmt17(r.min_value) << '\n';
        return os.str();
    }
    return j.dump(2) + "\n";
}

std::string run_scheme_verify(const std::string& alpha_str, double g, double r1, double r2,
                              double r3, int branch, const std::string& format) {
    const Complex alpha = parse_complex(alpha_str);
    SchemeConfig cfg;
    cfg.g = g;
    cfg.r1 = r1;
    cfg.t1 = std::sqrt(1.0 - r1 * r1);
    cfg.r2 = r2;
    cfg.t2 = std::sqrt(1.0 - r2 * r2);
    cfg.r3 = r3;
    cfg.t3 = std::sqrt(1.0 - r3 * r3);
    cfg.validate();
    const int cutoff = std::max(
        24, static_cast<int>(std::ceil(std::norm(alpha) + 10.0 * std::abs(alpha))) + 8);
    const auto v = verify_scheme(coherent_state(alpha, cutoff), cfg, branch);
    json j;
    j["alpha_re"] = alpha.real();
    j["alpha_im"] = alpha.imag();
    j["g"] = g;
    j["r1"] = r1;
    j["r2"] = r2;
    j["r3"] = r3;
    j["branch"] = branch;
    j["s_eff"] = v.effective.s;
    j["t_eff"] = v.effective.t;
    j["w_aad_re"] = v.w_aad.real();
    j["w_aad_im"] = v.w_aad.imag();
    j["w_ada_re"] = v.w_ada.real();
    j["w_ada_im"] = v.w_ada.imag();
    j["probability"] = v.probability;
    j["fidelity"] = v.fidelity;
    j["infidelity_slope"] = v.infidelity_slope;
    j["amplitude_error_slope"] = v.amplitude_error_slope;
    j["infidelities"] = {v.infidelities[0], v.infidelities[1], v.infidelities[2]};
    if (format == "csv") {
        std::ostringstream os;
        os << "key,value\n";
        for (auto& [key, val] : j.items()) {
            if (val.is_array()) continue;
            os << key << ',';
            if (val.is_number_float())
                os << fmt17(val.get<double>());
            else
                os << val.dump();
            os << '\n';
        }
        return os.str();
    }
    return j.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SUP-operation toolkit: nonclassicality indicators and phase-space "
                 "distributions of superposed photon addition/subtraction states"};
    app.require_subcommand(1);

    std::string out_path = "-";
    std::string format;
    auto add_io_options = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path, '-' for stdout")
            ->capture_default_str();
        cmd->add_option("--format", format, "csv|json (per-command default otherwise)")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    StateOptions wg_state;
    int wg_grid = 201;
    std::string wg_domain = "-2.5:2.5", wg_engine = "closed";
    auto* wg = app.add_subcommand("wigner-grid", "sample the Wigner function on a square grid");
    add_state_options(wg, wg_state);
    wg->add_option("--grid", wg_grid, "samples per axis")->capture_default_str();
    wg->add_option("--domain", wg_domain, "LO:HI for both axes")->capture_default_str();
    wg->add_option("--engine", wg_engine, "closed|series")->capture_default_str();
    add_io_options(wg);

    StateOptions qs_state;
    double qs_beta_abs = 0.8, qs_beta_arg = 0.0;
    std::optional<double> qs_f;
    std::string qs_f_range;
    auto* qs = app.add_subcommand(
        "quasiprob-scan", "ordering-parametrized quasiprobability at fixed |beta|");
    add_state_options(qs, qs_state);
    qs->add_option("--beta-abs", qs_beta_abs, "|beta|")->capture_default_str();
    qs->add_option("--beta-arg", qs_beta_arg, "arg(beta) in radians")->capture_default_str();
    double qs_f_val = 0.0;
    auto* qs_f_opt = qs->add_option("--bigF", qs_f_val, "single ordering parameter");
    qs->add_option("--bigF-range", qs_f_range, "LO:HI:STEP sweep of the ordering parameter");
    add_io_options(qs);

    StateOptions in_state;
    int in_grid = 401;
    auto* in = app.add_subcommand("indicators", "full indicator report for one state");
    add_state_options(in, in_state);
    in->add_option("--grid", in_grid, "quadrature resolution")->capture_default_str();
    add_io_options(in);

    StateOptions sc_state;
    std::string sc_t_range = "0:1:0.02", sc_alpha_range, sc_nbar_range;
    int sc_grid = 401;
    auto* sc = app.add_subcommand("scan-t", "indicator table over a sweep of t");
    add_state_options(sc, sc_state, false);
    sc->add_option("--t-range", sc_t_range, "LO:HI:STEP")->capture_default_str();
    sc->add_option("--alpha-range", sc_alpha_range, "optional LO:HI:STEP over |alpha|");
    sc->add_option("--nbar-range", sc_nbar_range, "optional LO:HI:STEP over nbar");
    sc->add_option("--grid", sc_grid, "quadrature resolution")->capture_default_str();
    add_io_options(sc);

    StateOptions nv_state;
    int nv_grid = 401;
    std::string nv_domain;
    auto* nv = app.add_subcommand("negative-volume", "negative Wigner volume of one state");
    add_state_options(nv, nv_state);
    nv->add_option("--grid", nv_grid, "quadrature resolution")->capture_default_str();
    nv->add_option("--domain", nv_domain, "LO:HI override of the automatic domain");
    add_io_options(nv);

    std::string sv_alpha = "0.4";
    double sv_g = 0.05, sv_r1 = 0.05, sv_r2 = 0.05, sv_r3 = 1.0 / std::numbers::sqrt2;
    int sv_branch = 1;
    auto* sv = app.add_subcommand(
        "scheme-verify", "simulate the heralding interferometer and report convergence");
    sv->add_option("--alpha", sv_alpha, "input coherent amplitude RE[,IM]")
        ->capture_default_str();
    sv->add_option("--g", sv_g, "PDC coupling")->capture_default_str();
    sv->add_option("--r1", sv_r1, "B1 reflectivity")->capture_default_str();
    sv->add_option("--r2", sv_r2, "B2 reflectivity")->capture_default_str();
    sv->add_option("--r3", sv_r3, "B3 reflectivity")->capture_default_str();
    sv->add_option("--branch", sv_branch, "heralded B3 output, 1 or 2")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    add_io_options(sv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        std::string payload;
        if (wg->parsed()) {
            payload = run_wigner_grid(wg_state, wg_grid, wg_domain, wg_engine,
                                      format.empty() ? "csv" : format);
        } else if (qs->parsed()) {
            payload = run_quasiprob_scan(
                qs_state, qs_beta_abs, qs_beta_arg,
                qs_f_opt->count() ? std::optional<double>(qs_f_val) : std::nullopt, qs_f_range,
                format.empty() ? "csv" : format);
        } else if (in->parsed()) {
            payload = run_indicators(in_state, in_grid, format.empty() ? "json" : format);
        } else if (sc->parsed()) {
            payload = run_scan_t(sc_state, sc_t_range, sc_alpha_range, sc_nbar_range, sc_grid,
                                 format.empty() ? "csv" : format);
        } else if (nv->parsed()) {
            payload = run_negative_volume(nv_state, nv_grid, nv_domain,
                                          format.empty() ? "json" : format);
        } else if (sv->parsed()) {
            payload = run_scheme_verify(sv_alpha, sv_g, sv_r1, sv_r2, sv_r3, sv_branch,
                                        format.empty() ? "json" : format);
        }
        write_output(out_path, payload);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return 0;
}
