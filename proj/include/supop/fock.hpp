#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <ostream>
#include <utility>

#include "supop/errors.hpp"
#include "supop/laguerre.hpp"

namespace supop {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

constexpr double kHermiticityTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = 1e-10;
constexpr double kZeroTraceFloor = 1e-14;
constexpr double kTailMassBound = 1e-12;
constexpr double kUnitarityTol = 1e-8;

/// Pure state in the truncated number basis, amplitudes indexed by photon
/// number n = 0..cutoff-1.
struct FockVector {
    CVector amplitudes;
    int cutoff = 0;

    double norm() const { return amplitudes.norm(); }

    FockVector normalized() const {
        const double n = norm();
        if (n <= kZeroTraceFloor) throw ZeroTrace("FockVector: zero-norm state");
        return {amplitudes / n, cutoff};
    }
};

/// Mixed state as a cutoff x cutoff complex Hermitian matrix.
struct DensityMatrix {
    CMatrix elements;
    int cutoff = 0;
    bool normalized = false;

    double trace() const { return elements.trace().real(); }

    bool is_hermitian(double tol = kHermiticityTol) const {
        return (elements - elements.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(elements, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }
};

enum class OperatorLabel { annihilation, creation, number, displacement, general };

struct OperatorMatrix {
    CMatrix elements;
    OperatorLabel label = OperatorLabel::general;

    int cutoff() const { return static_cast<int>(elements.rows()); }
};

inline void require_cutoff(int cutoff) {
    if (cutoff < 2) throw InvalidCutoff("cutoff must be >= 2");
}

/// Lift a pure state to its density matrix.
inline DensityMatrix to_density(const FockVector& psi) {
    DensityMatrix rho;
    rho.elements = psi.amplitudes * psi.amplitudes.adjoint();
    rho.cutoff = psi.cutoff;
    rho.normalized = std::abs(psi.norm() - 1.0) < 1e-9;
    return rho;
}

/// Embed into a larger cutoff (upper-left block), zero-padding the tail.
inline DensityMatrix pad(const DensityMatrix& rho, int cutoff) {
    if (cutoff < rho.cutoff) throw InvalidCutoff("pad: target cutoff smaller than source");
    DensityMatrix out;
    out.elements = CMatrix::Zero(cutoff, cutoff);
    out.elements.topLeftCorner(rho.cutoff, rho.cutoff) = rho.elements;
    out.cutoff = cutoff;
    out.normalized = rho.normalized;
    return out;
}

inline FockVector pad(const FockVector& psi, int cutoff) {
    if (cutoff < psi.cutoff) throw InvalidCutoff("pad: target cutoff smaller than source");
    FockVector out;
    out.amplitudes = CVector::Zero(cutoff);
    out.amplitudes.head(psi.cutoff) = psi.amplitudes;
    out.cutoff = cutoff;
    return out;
}

/// Truncation policy: keeps the neglected Poisson/geometric tail below
/// 1e-12 for mean photon numbers up to ~1.
inline int recommended_cutoff(double mean_photons) {
    const int n = static_cast<int>(std::ceil(mean_photons + 10.0 * std::sqrt(mean_photons + 1.0)));
    return std::max(32, n);
}

/// Coherent state |alpha>, amplitudes exp(-|a|^2/2) a^n / sqrt(n!) evaluated
/// in log space.
inline FockVector coherent_state(Complex alpha, int cutoff) {
    require_cutoff(cutoff);
    const double mu = std::norm(alpha);
    if (mu > cutoff / 4.0)
        throw TruncationError("coherent_state: |alpha|^2 exceeds cutoff/4 guard");
    FockVector psi;
    psi.cutoff = cutoff;
    psi.amplitudes = CVector::Zero(cutoff);
    if (mu == 0.0) {
        psi.amplitudes[0] = 1.0;
        return psi;
    }
    const double log_abs_alpha = std::log(std::abs(alpha));
    const double phase = std::arg(alpha);
    for (int n = 0; n < cutoff; ++n) {
        const double logmag = -mu / 2.0 + n * log_abs_alpha - 0.5 * log_factorial(n);
        psi.amplitudes[n] = std::polar(std::exp(logmag), n * phase);
    }
    // Neglected tail of the Poisson distribution.
    double tail = 0.0, log_term = -mu + cutoff * std::log(mu) - log_factorial(cutoff);
    for (int n = cutoff; n < cutoff + 200; ++n) {
        const double term = std::exp(log_term);
        tail += term;
        if (term < 1e-18 * (tail + 1e-300)) break;
        log_term += std::log(mu) - std::log(n + 1.0);
    }
    if (tail > kTailMassBound)
        throw TruncationError("coherent_state: neglected tail mass above 1e-12");
    return psi;
}

/// Thermal state of mean photon number nbar: diagonal geometric distribution,
/// renormalized so the truncated trace is exactly one.
inline DensityMatrix thermal_state(double nbar, int cutoff) {
    require_cutoff(cutoff);
    if (nbar < 0) throw OutOfRange("thermal_state: nbar must be >= 0");
    DensityMatrix rho;
    rho.cutoff = cutoff;
    rho.elements = CMatrix::Zero(cutoff, cutoff);
    rho.normalized = true;
    if (nbar == 0.0) {
        rho.elements(0, 0) = 1.0;
        return rho;
    }
    const double q = nbar / (1.0 + nbar);
    // Geometric tail mass beyond the cutoff is exactly q^cutoff.
    if (cutoff * std::log(q) > std::log(kTailMassBound))
        throw TruncationError("thermal_state: tail mass bound violated, raise cutoff");
    double trace = 0.0;
    for (int n = 0; n < cutoff; ++n) {
        const double p = std::exp(n * std::log(q)) / (1.0 + nbar);
        rho.elements(n, n) = p;
        trace += p;
    }
    rho.elements /= trace;
    return rho;
}

/// Annihilation/creation pair: <n-1|a|n> = sqrt(n) on the first superdiagonal.
inline std::pair<OperatorMatrix, OperatorMatrix> ladder_matrices(int cutoff) {
    require_cutoff(cutoff);
    OperatorMatrix a;
    a.label = OperatorLabel::annihilation;
    a.elements = CMatrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n) a.elements(n - 1, n) = std::sqrt(static_cast<double>(n));
    OperatorMatrix adag;
    adag.label = OperatorLabel::creation;
    adag.elements = a.elements.adjoint();
    return {a, adag};
}

inline OperatorMatrix number_matrix(int cutoff) {
    require_cutoff(cutoff);
    OperatorMatrix n;
    n.label = OperatorLabel::number;
    n.elements = CMatrix::Zero(cutoff, cutoff);
    for (int k = 0; k < cutoff; ++k) n.elements(k, k) = k;
    return n;
}

/// Displacement operator D(beta) from the closed-form matrix elements
///   <m|D|n> = sqrt(n!/m!) beta^{m-n} e^{-|b|^2/2} L_n^{(m-n)}(|b|^2),  m >= n,
/// with the conjugate-symmetric expression below the diagonal. Magnitudes are
/// assembled in log space; Laguerre rows come from the stable upward
/// recurrence, one per diagonal.
inline OperatorMatrix displacement_matrix(Complex beta, int cutoff) {
    require_cutoff(cutoff);
    if (std::abs(beta) > cutoff / 6.0)
        throw UnitarityError("displacement_matrix: |beta| exceeds cutoff/6 guard");
    OperatorMatrix D;
    D.label = OperatorLabel::displacement;
    D.elements = CMatrix::Zero(cutoff, cutoff);
    if (beta == Complex(0.0, 0.0)) {
        D.elements.setIdentity();
        return D;
    }
    const double x = std::norm(beta);
    const double log_abs_beta = std::log(std::abs(beta));
    const double phase = std::arg(beta);
    std::vector<double> lag;
    for (int k = 0; k < cutoff; ++k) {  // k = m - n
        detail::laguerre_row(k, x, cutoff - k, lag);
        for (int n = 0; n + k < cutoff; ++n) {
            const int m = n + k;
            const double logmag = 0.5 * (log_factorial(n) - log_factorial(m)) +
                                  k * log_abs_beta - x / 2.0;
            const double sign = lag[n] < 0 ? -1.0 : 1.0;
            const double mag = sign * std::exp(logmag + std::log(std::abs(lag[n]) + 1e-300));
            D.elements(m, n) = std::polar(1.0, k * phase) * mag;
            if (k > 0) {
                // <n|D|m> = sqrt(n!/m!) (-beta*)^{m-n} e^{-|b|^2/2} L_n^{(m-n)}(|b|^2)
                const double msign = (k % 2 == 0) ? 1.0 : -1.0;
                D.elements(n, m) = msign * std::polar(1.0, -k * phase) * mag;
            }
        }
    }
    // Unitarity check on the sub-block whose displaced support fits inside
    // the truncation: the photon distribution of D|n> is contained below its
    // upper caustic (sqrt(n) + |beta|)^2 plus an edge width.
    int n_check = -1;
    for (int n = cutoff / 2; n >= 0; --n) {
        const double caustic = std::pow(std::sqrt(static_cast<double>(n)) + std::abs(beta), 2);
        if (caustic + 6.0 * std::sqrt(caustic + 1.0) + 4.0 <= cutoff) {
            n_check = n;
            break;
        }
    }
    if (n_check >= 0) {
        const int block = n_check + 1;
        const CMatrix defect =
            (D.elements.adjoint() * D.elements - CMatrix::Identity(cutoff, cutoff))
                .topLeftCorner(block, block);
        if (defect.cwiseAbs().maxCoeff() > kUnitarityTol)
            throw UnitarityError("displacement_matrix: sub-block unitarity check failed");
    }
    return D;
}

/// Tr(rho * op).
inline Complex expectation(const OperatorMatrix& op, const DensityMatrix& rho) {
    if (op.elements.rows() != rho.elements.rows())
        throw DimensionMismatch("expectation: operator and state dimensions differ");
    return (rho.elements * op.elements).trace();
}

/// Divides by the trace; returns the renormalized state together with the
/// pre-normalization trace (the empirical normalization constant).
inline std::pair<DensityMatrix, double> normalize(const DensityMatrix& rho) {
    const double tr = rho.trace();
    if (tr <= kZeroTraceFloor)
        throw ZeroTrace("normalize: trace vanishes (state annihilated)");
    DensityMatrix out;
    out.elements = rho.elements / tr;
    out.cutoff = rho.cutoff;
    out.normalized = true;
    return {out, tr};
}

/// Debug dump, row-major, each cell as a "re,im" pair.
inline void dump_csv(const CMatrix& m, std::ostream& os) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << m(i, j).real() << ',' << m(i, j).imag();
        }
        os << '\n';
    }
}

}  // namespace supop
