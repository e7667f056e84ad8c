#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "supop/quasiprob.hpp"

namespace supop {

constexpr double kVolumeClamp = 1e-9;
constexpr double kMassTol = 1e-4;

/// First and second ladder moments of a state.
struct QuadratureMoments {
    Complex a_mean;     // <a>
    Complex a_sq_mean;  // <a^2>
    double n_mean = 0;  // <a† a>
    double n2_corr = 0; // <a†^2 a^2>
};

inline QuadratureMoments quadrature_moments(const DensityMatrix& rho) {
    const int d = rho.cutoff;
    QuadratureMoments m;
    for (int n = 0; n < d; ++n) {
        const double p = rho.elements(n, n).real();
        m.n_mean += n * p;
        m.n2_corr += static_cast<double>(n) * (n - 1.0) * p;
        if (n + 1 < d) m.a_mean += std::sqrt(n + 1.0) * rho.elements(n + 1, n);
        if (n + 2 < d)
            m.a_sq_mean += std::sqrt((n + 1.0) * (n + 2.0)) * rho.elements(n + 2, n);
    }
    return m;
}

/// Mandel Q = (<a†^2 a^2> - <n>^2) / <n>.
inline double mandel_q(const DensityMatrix& rho) {
    const QuadratureMoments m = quadrature_moments(rho);
    if (m.n_mean <= 1e-14) throw UndefinedQ("mandel_q: mean photon number is zero");
    return (m.n2_corr - m.n_mean * m.n_mean) / m.n_mean;
}

/// Optimal normally-ordered quadrature variance,
///   S_opt = -2 |<a†^2> - <a†>^2| + 2 <a† a> - 2 |<a†>|^2,
/// the minimum of <:(dX_theta)^2:> over all quadrature angles.
inline double squeezing_opt(const DensityMatrix& rho) {
    const QuadratureMoments m = quadrature_moments(rho);
    return -2.0 * std::abs(m.a_sq_mean - m.a_mean * m.a_mean) + 2.0 * m.n_mean -
           2.0 * std::norm(m.a_mean);
}

struct NegativeVolumeResult {
    double volume = 0.0;         // integral of |W| minus integral of W
    double normalization = 0.0;  // integral of W, must be ~1
    double min_value = 0.0;      // smallest sampled W
};

/// V = integral |W| d^2b - 1, by composite Simpson quadrature on a uniform
/// grid. The caller picks bounds covering the state; a normalization drift
/// beyond 1e-4 is rejected. Resolutions are rounded up to odd.
inline NegativeVolumeResult negative_volume(const std::function<double(PhasePoint)>& wigner,
                                            const GridBounds& domain, int resolution = 401) {
    if (resolution < 201) throw OutOfRange("negative_volume: resolution must be >= 201");
    if (resolution % 2 == 0) ++resolution;
    const PhaseGrid g = evaluate_grid(wigner, domain, resolution, resolution);
    NegativeVolumeResult r;
    r.normalization = integrate_grid(g);
    r.min_value = g.values.minCoeff();
    if (std::abs(r.normalization - 1.0) > kMassTol)
        throw DomainTooSmall("negative_volume: grid mass deviates from 1 by more than 1e-4");
    const double abs_mass = integrate_grid(g, [](double v) { return std::abs(v); });
    r.volume = abs_mass - r.normalization;
    if (std::abs(r.volume) < kVolumeClamp) r.volume = 0.0;
    return r;
}

// ---- literal transcriptions of the published closed forms ----------------
// These are reported alongside the moment-based indicators but never used in
// their place: away from trivial points they disagree with the Q and S_opt
// definitions above (see the comparison fields of IndicatorReport).

inline double q_socs_closed(const SupParams& p, Complex alpha) {
    const double aa = std::norm(alpha);
    const double c = p.s + p.t;
    const double k1 = std::pow(c * aa + (2.0 * p.s + p.t), 2) + c * c * aa;
    const double n1 = norm_socs(p, alpha);
    return -aa / k1 / n1 * (k1 * (k1 - 1.0) - c * c * (2.0 * aa + 3.0) - 2.0 * p.s * c);
}

inline double q_sots_closed(const SupParams& p, double nbar) {
    const double c = p.s + p.t;
    const double k2 = 2.0 * (nbar + 1.0) * c * (3.0 * nbar * c + 2.0 * p.s) + p.t * p.t;
    const double n2 = norm_sots(p, nbar);
    return -nbar / k2 / n2 *
           (k2 * (k2 - 3.0) - 6.0 * (nbar + 1.0) * (nbar + 1.0) * c * c + p.t * p.t);
}

inline double s_socs_closed(const SupParams& p, Complex alpha) {
    const double c = p.s + p.t;
    return 2.0 / norm_socs(p, alpha) * c * c * std::norm(alpha);
}

inline double s_sots_closed(const SupParams& p, double nbar) {
    const double c = p.s + p.t;
    return 2.0 / norm_sots(p, nbar) * nbar *
           (2.0 * nbar * (5.0 * p.s + 3.0 * p.t) * c + std::pow(2.0 * p.s + p.t, 2));
}

// ---- aggregated report ----------------------------------------------------

enum class StateKind { coherent, thermal };

struct StateSpec {
    StateKind kind = StateKind::coherent;
    Complex alpha;       // coherent amplitude (kind == coherent)
    double nbar = 0.0;   // mean photon number (kind == thermal)
    double t = 0.0;      // SUP control parameter
};

struct IndicatorReport {
    SupParams params;
    StateKind kind = StateKind::coherent;
    double amplitude = 0.0;  // |alpha|
    double nbar = 0.0;
    double negative_volume = 0.0;
    double mandel_q = 0.0;
    double squeezing_opt = 0.0;
    double wigner_min = 0.0;
    double q_paper_closed = 0.0;
    double s_paper_closed = 0.0;
    double n_closed = 0.0;
    double n_empirical = 0.0;
};

/// Default quadrature domain for a state: centroid +- (5 + displacement).
inline GridBounds default_domain(const StateSpec& spec) {
    if (spec.kind == StateKind::coherent) {
        const double disp = std::abs(spec.alpha);
        return GridBounds::centered(PhasePoint(spec.alpha), 5.0 + disp);
    }
    return GridBounds::centered(PhasePoint(0.0, 0.0), 5.0);
}

/// Builds the SUP-operated state, computes the moment-based indicators from
/// the matrix engine and the negative volume from the closed-form Wigner
/// function, and attaches the published closed-form values for comparison.
inline IndicatorReport indicator_report(const StateSpec& spec, int resolution = 401) {
    IndicatorReport rep;
    rep.params = sup_params(spec.t);
    rep.kind = spec.kind;

    DensityMatrix rho_in;
    std::function<double(PhasePoint)> wigner;
    if (spec.kind == StateKind::coherent) {
        rep.amplitude = std::abs(spec.alpha);
        const int cutoff = recommended_cutoff(std::norm(spec.alpha));
        rho_in = to_density(coherent_state(spec.alpha, cutoff));
        rep.n_closed = norm_socs(rep.params, spec.alpha);
        wigner = [a = spec.alpha, p = rep.params](PhasePoint b) {
            return wigner_socs_closed(p, a, b);
        };
    } else {
        rep.nbar = spec.nbar;
        const int cutoff = recommended_cutoff(spec.nbar);
        rho_in = thermal_state(spec.nbar, cutoff);
        rep.n_closed = norm_sots(rep.params, spec.nbar);
        wigner = [n = spec.nbar, p = rep.params](PhasePoint b) {
            return wigner_sots_closed(p, n, b);
        };
    }

    auto [rho, n_emp] = apply_sup(rho_in, rep.params);
    rep.n_empirical = n_emp;
    rep.mandel_q = supop::mandel_q(rho);
    rep.squeezing_opt = supop::squeezing_opt(rho);

    const NegativeVolumeResult nv = supop::negative_volume(wigner, default_domain(spec), resolution);
    rep.negative_volume = nv.volume;
    rep.wigner_min = nv.min_value;

    if (spec.kind == StateKind::coherent) {
        rep.q_paper_closed = q_socs_closed(rep.params, spec.alpha);
        rep.s_paper_closed = s_socs_closed(rep.params, spec.alpha);
    } else {
        rep.q_paper_closed = q_sots_closed(rep.params, spec.nbar);
        rep.s_paper_closed = s_sots_closed(rep.params, spec.nbar);
    }
    return rep;
}

}  // namespace supop
