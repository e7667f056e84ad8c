#pragma once

#include <cmath>
#include <utility>

#include "supop/fock.hpp"

namespace supop {

/// Scalar pair (s, t) of the superposed product operation
/// s(a a†) + t(a† a), constrained to s = sqrt(1 - t^2), s >= 0.
struct SupParams {
    double s = 1.0;
    double t = 0.0;
};

inline SupParams sup_params(double t) {
    if (std::abs(t) > 1.0) throw OutOfRange("sup_params: |t| must be <= 1");
    return {std::sqrt(1.0 - t * t), t};
}

/// The SUP operator is diagonal in the number basis:
/// s(a a†) + t(a† a) = s + (s + t) n.
inline OperatorMatrix sup_operator_matrix(const SupParams& p, int cutoff) {
    require_cutoff(cutoff);
    OperatorMatrix op;
    op.label = OperatorLabel::general;
    op.elements = CMatrix::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) op.elements(n, n) = p.s + (p.s + p.t) * n;
    return op;
}

/// A rho A with A the SUP operator, then renormalized. Returns the empirical
/// normalization constant (the pre-normalization trace).
inline std::pair<DensityMatrix, double> apply_sup(const DensityMatrix& rho_in,
                                                  const SupParams& p) {
    if (std::abs(rho_in.trace() - 1.0) > 1e-8)
        throw ValidationError("apply_sup: input state must be normalized");
    const OperatorMatrix A = sup_operator_matrix(p, rho_in.cutoff);
    DensityMatrix out;
    out.cutoff = rho_in.cutoff;
    out.elements = A.elements * rho_in.elements * A.elements;
    return normalize(out);
}

/// Pure-state variant: A|psi> normalized, plus the squared pre-normalization
/// norm (same constant as the density-matrix route).
inline std::pair<FockVector, double> apply_sup(const FockVector& psi_in, const SupParams& p) {
    if (std::abs(psi_in.norm() - 1.0) > 1e-8)
        throw ValidationError("apply_sup: input state must be normalized");
    FockVector out;
    out.cutoff = psi_in.cutoff;
    out.amplitudes = psi_in.amplitudes;
    for (int n = 0; n < out.cutoff; ++n) out.amplitudes[n] *= p.s + (p.s + p.t) * n;
    const double norm2 = out.amplitudes.squaredNorm();
    if (norm2 <= kZeroTraceFloor) throw ZeroTrace("apply_sup: state annihilated");
    out.amplitudes /= std::sqrt(norm2);
    return {out, norm2};
}

/// Normalization constant of the SUP-operated coherent state:
/// N1 = s^2 + (s+t)(3s+t)|a|^2 + (s+t)^2 |a|^4.
inline double norm_socs(const SupParams& p, Complex alpha) {
    const double aa = std::norm(alpha);
    const double c = p.s + p.t;
    return p.s * p.s + c * (3.0 * p.s + p.t) * aa + c * c * aa * aa;
}

/// Normalization constant of the SUP-operated thermal state:
/// N2 = s^2 (1+n)(1+2n) + 4 s t n (1+n) + t^2 n (1+2n).
inline double norm_sots(const SupParams& p, double nbar) {
    if (nbar < 0) throw OutOfRange("norm_sots: nbar must be >= 0");
    return p.s * p.s * (1.0 + nbar) * (1.0 + 2.0 * nbar) +
           4.0 * p.s * p.t * nbar * (1.0 + nbar) + p.t * p.t * nbar * (1.0 + 2.0 * nbar);
}

}  // namespace supop
