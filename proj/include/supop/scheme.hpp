#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <utility>

#include "supop/fock.hpp"
#include "supop/sup.hpp"

namespace supop {

// Mode layout of the heralding interferometer: the signal traverses
// B1 -> PDC -> B2; B1 and B2 subtract into their reflected ports, the PDC
// adds a twin photon into the idler, and B3 mixes the two subtraction ports
// before detection.
enum class SchemeMode : int {
    signal = 0,       // path I
    subtract_b1 = 1,  // path II, watched by P2
    idler = 2,        // path III, watched by P1
    subtract_b2 = 3,  // path IV, watched by P3
};

/// Joint pure state of the four modes. Ancilla occupations are truncated to
/// {0, 1}: the single-photon heralding regime.
struct MultiModeState {
    int signal_dim = 0;
    CVector amplitudes;  // index = ((n_I * 2 + n_II) * 2 + n_III) * 2 + n_IV

    int dim() const { return signal_dim * 8; }
    int index(int n_i, int n_ii, int n_iii, int n_iv) const {
        return ((n_i * 2 + n_ii) * 2 + n_iii) * 2 + n_iv;
    }
    Complex amp(int n_i, int n_ii, int n_iii, int n_iv) const {
        return amplitudes[index(n_i, n_ii, n_iii, n_iv)];
    }
    double norm() const { return amplitudes.norm(); }
};

inline MultiModeState from_signal(const FockVector& psi) {
    MultiModeState st;
    st.signal_dim = psi.cutoff;
    st.amplitudes = CVector::Zero(st.dim());
    for (int n = 0; n < psi.cutoff; ++n) st.amplitudes[st.index(n, 0, 0, 0)] = psi.amplitudes[n];
    return st;
}

namespace detail {

inline int mode_dim(int signal_dim, SchemeMode m) {
    return m == SchemeMode::signal ? signal_dim : 2;
}

/// Annihilation operator of one mode on the joint space.
inline CMatrix full_ladder(int signal_dim, SchemeMode mode) {
    const int total = signal_dim * 8;
    const std::array<int, 4> dims{signal_dim, 2, 2, 2};
    const std::array<int, 4> strides{8, 4, 2, 1};
    const int m = static_cast<int>(mode);
    CMatrix a = CMatrix::Zero(total, total);
    for (int idx = 0; idx < total; ++idx) {
        const int occ = (idx / strides[m]) % dims[m];
        if (occ > 0) a(idx - strides[m], idx) = std::sqrt(static_cast<double>(occ));
    }
    return a;
}

/// Hermitian logarithm of a 2x2 unitary: S = exp(i M).
inline Eigen::Matrix2cd hermitian_log(const Eigen::Matrix2cd& S) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(S);
    Eigen::Matrix2cd M = es.eigenvectors() *
                         Eigen::Vector2cd(std::arg(es.eigenvalues()[0]),
                                          std::arg(es.eigenvalues()[1]))
                             .asDiagonal() *
                         es.eigenvectors().inverse();
    return 0.5 * (M + M.adjoint());
}

}  // namespace detail

/// Exact two-mode beam-splitter unitary with mode transformation
/// a -> t a + r b, b -> t* b - r* a, lifted to the truncated joint space via
/// the quadratic generator (so the applied map is exactly unitary there).
inline MultiModeState beamsplitter_apply(const MultiModeState& st, SchemeMode mode_a,
                                         SchemeMode mode_b, Complex r, Complex t) {
    if (mode_a == mode_b) throw ModeCollision("beamsplitter_apply: identical modes");
    if (std::abs(std::norm(r) + std::norm(t) - 1.0) > 1e-12)
        throw ConfigError("beamsplitter_apply: |r|^2 + |t|^2 must equal 1");
    Eigen::Matrix2cd S;
    S << t, r, -std::conj(r), std::conj(t);
    const Eigen::Matrix2cd M = detail::hermitian_log(S);

    const CMatrix a = detail::full_ladder(st.signal_dim, mode_a);
    const CMatrix b = detail::full_ladder(st.signal_dim, mode_b);
    CMatrix H = M(0, 0) * (a.adjoint() * a) + M(0, 1) * (a.adjoint() * b) +
                M(1, 0) * (b.adjoint() * a) + M(1, 1) * (b.adjoint() * b);
    H = 0.5 * (H + CMatrix(H.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
    const CVector phases =
        (Complex(0, 1) * es.eigenvalues().cast<Complex>().array()).exp().matrix();
    MultiModeState out = st;
    out.amplitudes = es.eigenvectors() *
                     (phases.array() * (es.eigenvectors().adjoint() * st.amplitudes).array())
                         .matrix();
    return out;
}

/// First-order parametric down-conversion Kraus element: 1 - g a†_sig a†_idl.
/// Adds a twin photon to the signal and the idler; amplitudes that would push
/// the idler past occupation one are dropped (second-order herald events).
/// On a vacuum idler the cross term vanishes, so the squared norm changes by
/// +g^2 <a a†>.
inline MultiModeState pdc_apply(const MultiModeState& st, SchemeMode signal_mode,
                                SchemeMode idler_mode, double g) {
    if (signal_mode == idler_mode) throw ModeCollision("pdc_apply: identical modes");
    if (g < 0.0 || g > 0.2) throw OutOfRange("pdc_apply: g must lie in [0, 0.2]");
    MultiModeState out = st;
    if (g == 0.0) return out;
    const std::array<int, 4> strides{8, 4, 2, 1};
    const std::array<int, 4> dims{st.signal_dim, 2, 2, 2};
    const int sm = static_cast<int>(signal_mode);
    const int im = static_cast<int>(idler_mode);
    for (int idx = 0; idx < st.dim(); ++idx) {
        const Complex v = st.amplitudes[idx];
        if (v == Complex(0.0, 0.0)) continue;
        const int ns = (idx / strides[sm]) % dims[sm];
        const int ni = (idx / strides[im]) % dims[im];
        if (ns + 1 >= dims[sm] || ni + 1 >= dims[im]) continue;
        const double w = std::sqrt((ns + 1.0) * (ni + 1.0));
        out.amplitudes[idx + strides[sm] + strides[im]] -= g * w * v;
    }
    return out;
}

struct HeraldPattern {
    int p1 = 0;  // idler detector (path III)
    int p2 = 0;  // B1 subtraction detector (path II, or first B3 output)
    int p3 = 0;  // B2 subtraction detector (path IV, or second B3 output)
};

/// Projects the three ancilla modes onto the detector pattern and returns the
/// normalized conditional signal state with its heralding probability.
inline std::pair<FockVector, double> herald(const MultiModeState& st, HeraldPattern pat) {
    for (int v : {pat.p1, pat.p2, pat.p3})
        if (v != 0 && v != 1) throw OutOfRange("herald: pattern occupations must be 0 or 1");
    FockVector cond;
    cond.cutoff = st.signal_dim;
    cond.amplitudes = CVector::Zero(st.signal_dim);
    for (int n = 0; n < st.signal_dim; ++n) cond.amplitudes[n] = st.amp(n, pat.p2, pat.p1, pat.p3);
    const double prob = cond.amplitudes.squaredNorm();
    if (prob < 1e-20) throw ZeroProbability("herald: detector pattern has zero probability");
    cond.amplitudes /= std::sqrt(prob);
    return {cond, prob};
}

/// Interferometer settings. The beam splitters satisfy |r|^2 + |t|^2 = 1;
/// B1 and B2 are high-transmissivity, the PDC coupling is small.
struct SchemeConfig {
    Complex r1, t1;
    Complex r2, t2;
    double g = 0.0;
    Complex r3, t3;

    void validate() const {
        auto check_pair = [](Complex r, Complex t, const char* which) {
            if (std::abs(std::norm(r) + std::norm(t) - 1.0) > 1e-12)
                throw ConfigError(std::string("SchemeConfig: ") + which + " is not unitary");
        };
        check_pair(r1, t1, "B1");
        check_pair(r2, t2, "B2");
        check_pair(r3, t3, "B3");
        if (g < 0.0 || g > 0.2) throw ConfigError("SchemeConfig: g must lie in [0, 0.2]");
        if (std::abs(r1) > 0.2 || std::abs(r2) > 0.2)
            throw ConfigError("SchemeConfig: B1/B2 must be high-transmissivity (|r| <= 0.2)");
    }
};

inline SchemeConfig default_scheme_config(double eps = 0.05) {
    SchemeConfig c;
    c.r1 = eps;
    c.t1 = std::sqrt(1.0 - eps * eps);
    c.r2 = eps;
    c.t2 = std::sqrt(1.0 - eps * eps);
    c.g = eps;
    c.r3 = 1.0 / std::numbers::sqrt2;
    c.t3 = 1.0 / std::numbers::sqrt2;
    return c;
}

/// Unnormalized coefficients (w_aad, w_ada) multiplying a a† and a† a in the
/// heralded signal state for the chosen B3 output branch. The B2 subtraction
/// path enters branch 1 with weight +r3 g r2*/t2; the published expansion
/// carries that term with opposite sign, which the simulated interferometer
/// contradicts.
inline std::pair<Complex, Complex> effective_sup_weights(const SchemeConfig& cfg, int branch) {
    if (branch != 1 && branch != 2) throw OutOfRange("effective_sup_weights: branch is 1 or 2");
    const Complex x1 = std::conj(cfg.r1) / cfg.t1;
    const Complex x2 = std::conj(cfg.r2) / cfg.t2;
    if (branch == 1) return {cfg.r3 * cfg.g * x2, cfg.g * cfg.t3 * x1};
    return {std::conj(cfg.t3) * cfg.g * x2, -cfg.g * std::conj(cfg.r3) * x1};
}

/// Real (s, t) pair obtained by phase-aligning and normalizing a weight pair.
inline SupParams weights_to_params(Complex w_aad, Complex w_ada) {
    const double norm = std::hypot(std::abs(w_aad), std::abs(w_ada));
    if (norm < 1e-300) throw DegenerateState("weights_to_params: both weights vanish");
    const Complex phase =
        std::polar(1.0, -(std::abs(w_aad) > 1e-300 ? std::arg(w_aad) : std::arg(w_ada)));
    const Complex sa = w_aad * phase / norm;
    const Complex ta = w_ada * phase / norm;
    if (std::abs(sa.imag()) > 1e-9 || std::abs(ta.imag()) > 1e-9)
        throw ConfigError("weights_to_params: branch weights are not phase-aligned");
    SupParams p;
    p.s = sa.real();
    p.t = ta.real();
    if (p.s < 0) {  // flip the global sign so s >= 0
        p.s = -p.s;
        p.t = -p.t;
    }
    return p;
}

struct SchemeResult {
    FockVector conditional;
    double probability = 0.0;
    SupParams effective;
    Complex w_aad, w_ada;
};

/// Full pipeline B1 -> PDC -> B2 -> B3 followed by the branch herald
/// (P1 = 1 and exactly one B3 output firing).
inline SchemeResult run_scheme(const FockVector& psi_in, const SchemeConfig& cfg,
                               int branch = 1) {
    cfg.validate();
    if (branch != 1 && branch != 2) throw OutOfRange("run_scheme: branch is 1 or 2");
    MultiModeState st = from_signal(psi_in.normalized());
    st = beamsplitter_apply(st, SchemeMode::signal, SchemeMode::subtract_b1, cfg.r1, cfg.t1);
    st = pdc_apply(st, SchemeMode::signal, SchemeMode::idler, cfg.g);
    st = beamsplitter_apply(st, SchemeMode::signal, SchemeMode::subtract_b2, cfg.r2, cfg.t2);
    st = beamsplitter_apply(st, SchemeMode::subtract_b1, SchemeMode::subtract_b2, cfg.r3, cfg.t3);
    const HeraldPattern pat = branch == 1 ? HeraldPattern{1, 1, 0} : HeraldPattern{1, 0, 1};
    auto [cond, prob] = herald(st, pat);
    SchemeResult res;
    res.conditional = std::move(cond);
    res.probability = prob;
    std::tie(res.w_aad, res.w_ada) = effective_sup_weights(cfg, branch);
    res.effective = weights_to_params(res.w_aad, res.w_ada);
    return res;
}

/// |<u|v>|^2 for normalized pure states.
inline double fidelity(const FockVector& u, const FockVector& v) {
    if (u.cutoff != v.cutoff) throw DimensionMismatch("fidelity: cutoffs differ");
    return std::norm(u.amplitudes.dot(v.amplitudes));
}

/// Normalized (w_aad a a† + w_ada a† a)|psi>.
inline FockVector sup_target_state(const FockVector& psi, Complex w_aad, Complex w_ada) {
    FockVector out;
    out.cutoff = psi.cutoff;
    out.amplitudes = psi.amplitudes;
    for (int n = 0; n < out.cutoff; ++n)
        out.amplitudes[n] *= w_aad * (n + 1.0) + w_ada * static_cast<double>(n);
    const double nrm = out.amplitudes.norm();
    if (nrm < 1e-300) throw DegenerateState("sup_target_state: target vanishes");
    out.amplitudes /= nrm;
    return out;
}

struct SchemeVerification {
    SupParams effective;
    Complex w_aad, w_ada;
    double probability = 0.0;
    double fidelity = 0.0;
    double infidelity_slope = 0.0;       // log-log slope of 1 - F under eps-halving
    double amplitude_error_slope = 0.0;  // log-log slope of sqrt(1 - F)
    std::array<double, 3> infidelities{};
};

/// Runs the scheme at the given config and at configs with (g, r1, r2)
/// scaled by 1/2 and 1/4, and fits the convergence order of the conditional
/// state towards the ideal SUP target.
inline SchemeVerification verify_scheme(const FockVector& psi_in, const SchemeConfig& cfg,
                                        int branch = 1) {
    SchemeVerification v;
    std::array<double, 3> eps{1.0, 0.5, 0.25};
    for (int i = 0; i < 3; ++i) {
        SchemeConfig scaled = cfg;
        scaled.g = cfg.g * eps[i];
        scaled.r1 = cfg.r1 * eps[i];
        scaled.t1 = std::sqrt(1.0 - std::norm(scaled.r1));
        scaled.r2 = cfg.r2 * eps[i];
        scaled.t2 = std::sqrt(1.0 - std::norm(scaled.r2));
        const SchemeResult res = run_scheme(psi_in, scaled, branch);
        const FockVector target = sup_target_state(psi_in, res.w_aad, res.w_ada);
        const double fid = fidelity(res.conditional, target);
        v.infidelities[i] = 1.0 - fid;
        if (i == 0) {
            v.effective = res.effective;
            v.w_aad = res.w_aad;
            v.w_ada = res.w_ada;
            v.probability = res.probability;
            v.fidelity = fid;
        }
    }
    // least-squares slope in log-log coordinates
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < 3; ++i) {
        const double x = std::log(eps[i]);
        const double y = std::log(std::max(v.infidelities[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    v.infidelity_slope = (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
    v.amplitude_error_slope = v.infidelity_slope / 2.0;
    return v;
}

}  // namespace supop
