// Acceptance suite: one check per release criterion, each printed as a
// single PASS/FAIL line with the measured numbers. The exit code is the
// number of failed criteria.
//
// Criteria whose stated expectations contradict the verified numerics (the
// engine-side truths are cross-checked by two independent routes and by the
// unit suite) are still run exactly as stated and reported honestly.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "supop/supop.hpp"

using namespace supop;

namespace {

constexpr double kIdentityT = -0.70710678118654752440;

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    std::printf("%s  [%2d] %-38s %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::mt19937 g_rng(987654321u);

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g_rng);
}

Complex random_in_disk(double radius) {
    while (true) {
        const double re = uniform(-radius, radius), im = uniform(-radius, radius);
        if (re * re + im * im <= radius * radius) return {re, im};
    }
}

DensityMatrix socs_state(double t, Complex alpha, int cutoff) {
    return apply_sup(to_density(coherent_state(alpha, cutoff)), sup_params(t)).first;
}

DensityMatrix sots_state(double t, double nbar, int cutoff) {
    return apply_sup(thermal_state(nbar, cutoff), sup_params(t)).first;
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---- criterion 1: closed-form vs series engine equivalence ----------------
void criterion_1() {
    Timer timer;
    const int d = 96;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = uniform(-1.0, 1.0);
        const Complex alpha = random_in_disk(0.8);
        const PhasePoint beta(random_in_disk(2.5));
        const auto p = sup_params(t);
        const auto rho = socs_state(t, alpha, d);
        worst = std::max(worst,
                         std::abs(wigner_series(rho, beta) - wigner_socs_closed(p, alpha, beta)));
    }
    for (int i = 0; i < 100; ++i) {
        const double t = uniform(-1.0, 1.0);
        const double nb = uniform(0.005, 0.3);
        const PhasePoint beta(random_in_disk(2.5));
        const auto p = sup_params(t);
        const auto rho = sots_state(t, nb, d);
        worst = std::max(worst,
                         std::abs(wigner_series(rho, beta) - wigner_sots_closed(p, nb, beta)));
    }
    const double sec = timer.seconds();
    report(1, "closed-form vs series equivalence", worst <= 1e-8 && sec <= 60.0,
           "200 tuples, max |delta| = " + num(worst), sec);
}

// ---- criterion 2: identity point -------------------------------------------
void criterion_2() {
    Timer timer;
    const auto p = sup_params(kIdentityT);
    bool pass = true;
    std::string detail;

    StateSpec coh{StateKind::coherent, 0.4, 0.0, kIdentityT};
    const auto rep_c = indicator_report(coh);
    pass &= std::abs(rep_c.negative_volume) <= 1e-6;
    pass &= std::abs(rep_c.mandel_q) <= 1e-9;
    pass &= std::abs(rep_c.squeezing_opt) <= 1e-9;

    StateSpec th{StateKind::thermal, 0.0, 0.2, kIdentityT};
    const auto rep_t = indicator_report(th);
    pass &= std::abs(rep_t.negative_volume) <= 1e-6;
    pass &= std::abs(rep_t.mandel_q - 0.2) <= 1e-9;
    pass &= std::abs(rep_t.squeezing_opt - 0.4) <= 1e-9;

    const auto rho_c = to_density(coherent_state(0.4, 48));
    const auto id_c = apply_sup(rho_c, p).first;
    const double dev_c = (id_c.elements - rho_c.elements).cwiseAbs().maxCoeff();
    const auto rho_t = thermal_state(0.2, 48);
    const auto id_t = apply_sup(rho_t, p).first;
    const double dev_t = (id_t.elements - rho_t.elements).cwiseAbs().maxCoeff();
    pass &= dev_c <= 1e-12 && dev_t <= 1e-12;

    report(2, "identity point s + t = 0", pass,
           "V=" + num(rep_c.negative_volume) + "/" + num(rep_t.negative_volume) +
               ", Q=" + num(rep_c.mandel_q) + "/" + num(rep_t.mandel_q) +
               ", S=" + num(rep_c.squeezing_opt) + "/" + num(rep_t.squeezing_opt) +
               ", channel dev=" + num(std::max(dev_c, dev_t)),
           timer.seconds());
}

// ---- criterion 3: negativity disc ------------------------------------------
void criterion_3() {
    Timer timer;
    const Complex alpha(0.4, 0.0);
    bool pass = true;
    for (double t : {0.0, 1.0 / std::numbers::sqrt2, 1.0}) {
        const auto p = sup_params(t);
        const auto disc = socs_negativity_disc(p, alpha);
        for (int k = 0; k < 50; ++k) {
            const double ang = uniform(0.0, 2.0 * std::numbers::pi);
            const double rin = uniform(0.0, disc.radius - 0.05);
            const double rout = disc.radius + 0.05 + uniform(0.0, 1.0);
            const PhasePoint inside(disc.center.x() + rin * std::cos(ang),
                                    disc.center.y() + rin * std::sin(ang));
            const PhasePoint outside(disc.center.x() + rout * std::cos(ang),
                                     disc.center.y() + rout * std::sin(ang));
            pass &= wigner_socs_closed(p, alpha, inside) < 0.0;
            pass &= wigner_socs_closed(p, alpha, outside) > 0.0;
        }
    }
    report(3, "radius-1/2 negativity discs", pass, "t in {0, 1/sqrt2, 1}, 50+50 points each",
           timer.seconds());
}

// ---- criterion 4: grid sign pattern ----------------------------------------
void criterion_4() {
    Timer timer;
    bool pass = true;
    std::string detail = "SOCS min (required < -0.01):";
    for (double t : {0.1, 0.5, 0.9}) {
        const auto p = sup_params(t);
        const auto g = evaluate_grid(
            [&](PhasePoint b) { return wigner_socs_closed(p, 0.4, b); },
            GridBounds::square(-2.5, 2.5), 201, 201);
        const double mn = g.values.minCoeff();
        const bool ok = mn < -0.01;
        pass &= ok;
        detail += " " + num(mn) + (ok ? "" : "!");
    }
    detail += "; SOTS min (required >= -1e-12):";
    for (double t : {0.1, 0.5, 0.9}) {
        const auto p = sup_params(t);
        const auto g = evaluate_grid(
            [&](PhasePoint b) { return wigner_sots_closed(p, 0.2, b); },
            GridBounds::square(-2.5, 2.5), 201, 201);
        const double mn = g.values.minCoeff();
        const bool ok = mn >= -1e-12;
        pass &= ok;
        detail += " " + num(mn) + (ok ? "" : "!");
    }
    // the engine-verified dip at t = 0.1 is ~-0.0059, and the operated
    // thermal state genuinely turns negative above t ~ 0.717
    report(4, "grid minima sign pattern", pass, detail, timer.seconds());
}

// ---- criterion 5: negative-volume monotonicity and refinement --------------
void criterion_5() {
    Timer timer;
    bool pass = true;
    std::string detail = "V =";
    double prev = -1.0;
    for (double mag : {0.2, 0.4, 0.6}) {
        const auto p = sup_params(0.5);
        const auto w = [&](PhasePoint b) { return wigner_socs_closed(p, mag, b); };
        const auto domain = GridBounds::centered(PhasePoint(mag, 0.0), 5.0 + mag);
        const auto coarse = negative_volume(w, domain, 401);
        const auto fine = negative_volume(w, domain, 801);
        pass &= std::abs(coarse.volume - fine.volume) <= 0.01 * fine.volume;
        pass &= coarse.volume > prev;
        prev = coarse.volume;
        detail += " " + num(coarse.volume);
    }
    report(5, "volume grows with amplitude", pass, detail + " (401^2 within 1% of 801^2)",
           timer.seconds());
}

// ---- criterion 6: Mandel Q sign structure -----------------------------------
void criterion_6() {
    Timer timer;
    const int d = 64;
    bool pass = true;
    std::string detail = "Q(coh):";
    for (double t : {0.0, 0.25, 0.5, 0.75, 0.9}) {
        const double q = mandel_q(socs_state(t, 0.4, d));
        pass &= q < 0.0;
    }
    const double q1 = mandel_q(socs_state(1.0, 0.4, d));
    detail += " q(t=1) = " + num(q1) + " (required > 0)";
    pass &= q1 > 0.0;

    bool has_neg = false, has_pos = false;
    for (int i = 0; i <= 40; ++i) {
        const double q = mandel_q(sots_state(-1.0 + 0.05 * i, 0.2, d));
        has_neg |= q < 0.0;
        has_pos |= q > 0.0;
    }
    pass &= has_neg && has_pos;
    detail += std::string(", thermal sign change = ") + (has_neg && has_pos ? "yes" : "no");
    report(6, "Mandel Q sign structure", pass, detail, timer.seconds());
}

// ---- criterion 7: squeezing --------------------------------------------------
void criterion_7() {
    Timer timer;
    const int d = 64;
    bool pass = true;
    double min_socs = 1e300, min_sots = 1e300, worst_eq = 0.0;
    for (int i = 0; i <= 40; ++i) {
        const double t = -1.0 + 0.05 * i;
        const auto p = sup_params(t);
        for (double mag : {0.2, 0.4, 0.6}) {
            const double s = squeezing_opt(socs_state(t, mag, d));
            min_socs = std::min(min_socs, s);
            worst_eq = std::max(worst_eq, std::abs(s - s_socs_closed(p, mag)));
        }
        const double s = squeezing_opt(sots_state(t, 0.2, d));
        min_sots = std::min(min_sots, s);
        worst_eq = std::max(worst_eq, std::abs(s - s_sots_closed(p, 0.2)));
    }
    pass &= min_socs >= -1e-12;      // moment engine: fails, SOCS is squeezed
    pass &= min_sots < -1e-3;        // moment engine: fails, diagonal states cannot squeeze
    pass &= worst_eq <= 1e-9;        // transcribed forms differ from the definition
    report(7, "squeezing sign structure", pass,
           "min S(SOCS) = " + num(min_socs) + " (required >= -1e-12), min S(SOTS) = " +
               num(min_sots) + " (required < -1e-3), max |S - S_closed| = " + num(worst_eq),
           timer.seconds());
}

// ---- criterion 8: ordering-parametrized distribution ------------------------
void criterion_8() {
    Timer timer;
    bool pass = true;
    std::string detail = "SOTS:";
    const auto sots = sots_state(0.9, 0.2, 96);
    const PhasePoint b_th(0.5, 0.0);
    for (double f : {-1.0, -0.5, 0.0}) {
        const double v = quasiprob_f(sots, b_th, OrderingParameter(f));
        pass &= v >= 0.0;
        detail += " " + num(v);
    }
    for (double f : {0.5, 0.9}) {
        try {
            const double v = quasiprob_f(sots, b_th, OrderingParameter(f));
            pass &= v < 0.0;
            detail += " " + num(v);
        } catch (const TruncationError&) {
            // the Fock series for the thermal family stops converging at
            // F = (1 - q)/(1 + q) ~ 0.714 for nbar = 0.2
            pass = false;
            detail += " div@F=" + num(f);
        }
    }
    const auto socs = socs_state(0.5, 0.4, 64);
    const double v = quasiprob_f(socs, PhasePoint(-0.8, 0.0), OrderingParameter(0.0));
    pass &= v < 0.0;
    detail += "; SOCS F=0 at |beta|=0.8: " + num(v);
    report(8, "ordering-parameter sign pattern", pass, detail, timer.seconds());
}

// ---- criterion 9: transcribed-Q comparison ledger ---------------------------
void criterion_9() {
    Timer timer;
    const auto p = sup_params(kIdentityT);
    const double delta_c = q_socs_closed(p, 0.4) - mandel_q(socs_state(kIdentityT, 0.4, 64));
    const double delta_t = q_sots_closed(p, 0.2) - mandel_q(sots_state(kIdentityT, 0.2, 64));
    const bool pass = std::abs(delta_c - 0.16) <= 1e-9 && std::abs(delta_t - 0.4) <= 1e-9;
    report(9, "transcribed-Q identity-point deltas", pass,
           "recorded deltas: coherent " + num(delta_c) + " (=|alpha|^2), thermal " +
               num(delta_t) + " (=2 nbar)",
           timer.seconds());
}

// ---- criterion 10: heralding scheme -----------------------------------------
void criterion_10() {
    Timer timer;
    const auto psi = coherent_state(0.4, 24);
    const auto at_default = verify_scheme(psi, default_scheme_config(0.05));
    const auto halving = verify_scheme(psi, default_scheme_config(0.1));
    const double sec = timer.seconds();
    bool pass = at_default.fidelity >= 0.995;
    pass &= halving.infidelity_slope >= 1.8 && halving.infidelity_slope <= 2.2;
    pass &= sec <= 30.0;
    char fid[32];
    std::snprintf(fid, sizeof fid, "%.7f", at_default.fidelity);
    report(10, "heralded-scheme fidelity and slope", pass,
           std::string("fidelity = ") + fid + ", infidelity slope = " +
               num(halving.infidelity_slope) + " (required 2.0 +- 0.2; amplitude-error slope = " +
               num(halving.amplitude_error_slope) + ")",
           sec);
}

// ---- criterion 11: Wigner grid normalization --------------------------------
void criterion_11() {
    Timer timer;
    bool pass = true;
    double worst = 0.0;
    for (double t : {kIdentityT, 0.1, 0.5, 0.9}) {
        const auto p = sup_params(t);
        const auto socs = evaluate_grid(
            [&](PhasePoint b) { return wigner_socs_closed(p, 0.4, b); },
            GridBounds::centered(PhasePoint(0.4, 0.0), 5.4), 401, 401);
        worst = std::max(worst, std::abs(integrate_grid(socs) - 1.0));
        const auto sots = evaluate_grid(
            [&](PhasePoint b) { return wigner_sots_closed(p, 0.2, b); },
            GridBounds::centered(PhasePoint(0.0, 0.0), 5.0), 401, 401);
        worst = std::max(worst, std::abs(integrate_grid(sots) - 1.0));
    }
    pass = worst <= 1e-4;
    report(11, "Wigner grid normalization", pass, "max |mass - 1| = " + num(worst),
           timer.seconds());
}

}  // namespace

int main() {
    std::printf("acceptance suite\n----------------\n");
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("----------------\n%d of 11 criteria failed\n", g_failures);
    return g_failures;
}
