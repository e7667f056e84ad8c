#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "supop/fock.hpp"
#include "supop/sup.hpp"

namespace supop {

constexpr double kSeriesTailTol = 1e-10;
constexpr double kRowContributionTol = 1e-12;
constexpr double kOrderingMax = 0.99;

/// Complex phase-space coordinate beta = x + i y.
struct PhasePoint {
    Complex beta;

    PhasePoint() = default;
    PhasePoint(Complex b) : beta(b) {}
    PhasePoint(double x, double y) : beta(x, y) {}

    double x() const { return beta.real(); }
    double y() const { return beta.imag(); }
};

/// Rectangular sampling bounds in phase space.
struct GridBounds {
    double x_min = -5, x_max = 5, y_min = -5, y_max = 5;

    static GridBounds square(double lo, double hi) { return {lo, hi, lo, hi}; }
    static GridBounds centered(PhasePoint center, double half_width) {
        return {center.x() - half_width, center.x() + half_width,
                center.y() - half_width, center.y() + half_width};
    }
};

/// Sampled real-valued grid over phase space. values(i, j) is the sample at
/// (x_i, y_j) with x varying over rows.
struct PhaseGrid {
    GridBounds bounds;
    int nx = 0, ny = 0;
    Eigen::MatrixXd values;

    double x(int i) const { return bounds.x_min + i * dx(); }
    double y(int j) const { return bounds.y_min + j * dy(); }
    double dx() const { return (bounds.x_max - bounds.x_min) / (nx - 1); }
    double dy() const { return (bounds.y_max - bounds.y_min) / (ny - 1); }
};

/// Operator-ordering parameter: F = 1, 0, -1 select the P, Wigner and Husimi
/// distributions. The P limit is singular, so F is capped at 0.99.
struct OrderingParameter {
    double F = 0.0;

    OrderingParameter() = default;
    explicit OrderingParameter(double f) : F(f) {
        if (f < -1.0) throw OutOfRange("OrderingParameter: F must be >= -1");
        if (f > kOrderingMax)
            throw OrderingSingularity("OrderingParameter: F must be <= 0.99");
    }
};

struct NegativityDisc {
    PhasePoint center;
    double radius = 0.0;
};

inline PhaseGrid evaluate_grid(const std::function<double(PhasePoint)>& f,
                               const GridBounds& bounds, int nx, int ny) {
    if (nx < 2 || ny < 2) throw OutOfRange("evaluate_grid: need at least 2 samples per axis");
    if (bounds.x_min >= bounds.x_max || bounds.y_min >= bounds.y_max)
        throw OutOfRange("evaluate_grid: bounds must be ordered");
    PhaseGrid g;
    g.bounds = bounds;
    g.nx = nx;
    g.ny = ny;
    g.values.resize(nx, ny);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) g.values(i, j) = f(PhasePoint(g.x(i), g.y(j)));
    return g;
}

namespace detail {

inline std::vector<double> simpson_weights(int n, double h) {
    // composite Simpson; n must be odd (even interval count)
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i) w[i] = (i == 0 || i == n - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    for (auto& v : w) v *= h / 3.0;
    return w;
}

}  // namespace detail

/// Composite-Simpson integral of a sampled grid. Sample counts must be odd.
inline double integrate_grid(const PhaseGrid& g,
                             const std::function<double(double)>& transform = {}) {
    if (g.nx % 2 == 0 || g.ny % 2 == 0)
        throw OutOfRange("integrate_grid: Simpson rule needs odd sample counts");
    const auto wx = detail::simpson_weights(g.nx, g.dx());
    const auto wy = detail::simpson_weights(g.ny, g.dy());
    double total = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        double row = 0.0;
        for (int j = 0; j < g.ny; ++j) {
            const double v = transform ? transform(g.values(i, j)) : g.values(i, j);
            row += wy[j] * v;
        }
        total += wx[i] * row;
    }
    return total;
}

/// Series-form Wigner function
///   W(beta) = (2/pi) sum_k (-1)^k <k| D†(beta) rho D(beta) |k>,
/// summed until k_max (default: the state cutoff). The last retained term
/// must be below 1e-10 or the sum is declared unconverged.
inline double wigner_series(const DensityMatrix& rho, PhasePoint beta, int k_max = 0) {
    const int d = rho.cutoff;
    if (k_max <= 0) k_max = d;
    if (k_max > d) throw OutOfRange("wigner_series: k_max exceeds the state cutoff");
    const OperatorMatrix D = displacement_matrix(beta.beta, d);
    double sum = 0.0, last = 0.0;
    const bool diagonal =
        (rho.elements - CMatrix(rho.elements.diagonal().asDiagonal())).cwiseAbs().maxCoeff() <
        1e-15;
    if (diagonal) {
        const Eigen::VectorXd p = rho.elements.diagonal().real();
        for (int k = 0; k < k_max; ++k) {
            const double term = (D.elements.col(k).cwiseAbs2().array() * p.array()).sum();
            sum += (k % 2 ? -term : term);
            last = std::abs(term);
        }
    } else {
        const CMatrix M = D.elements.adjoint() * rho.elements * D.elements;
        for (int k = 0; k < k_max; ++k) {
            const double term = M(k, k).real();
            sum += (k % 2 ? -term : term);
            last = std::abs(term);
        }
    }
    if (last > kSeriesTailTol)
        throw TruncationError("wigner_series: k-sum not converged, raise the cutoff");
    return 2.0 / std::numbers::pi * sum;
}

/// Pure-state overload, O(cutoff^2) per point.
inline double wigner_series(const FockVector& psi, PhasePoint beta, int k_max = 0) {
    const int d = psi.cutoff;
    if (k_max <= 0) k_max = d;
    if (k_max > d) throw OutOfRange("wigner_series: k_max exceeds the state cutoff");
    const OperatorMatrix D = displacement_matrix(beta.beta, d);
    const CVector v = D.elements.adjoint() * psi.amplitudes;
    double sum = 0.0, last = 0.0;
    for (int k = 0; k < k_max; ++k) {
        const double term = std::norm(v[k]);
        sum += (k % 2 ? -term : term);
        last = term;
    }
    if (last > kSeriesTailTol)
        throw TruncationError("wigner_series: k-sum not converged, raise the cutoff");
    return 2.0 / std::numbers::pi * sum;
}

/// Closed-form Wigner function of the SUP-operated coherent state:
///   W_coh(beta) N1^{-1} [M1^2 + 2(s+t) M1 (a* b + a b*) + (s+t)^2 |a|^2 (4|b|^2 - 1)]
/// with M1 = s - (s+t)|a|^2 and W_coh the input coherent Gaussian.
inline double wigner_socs_closed(const SupParams& p, Complex alpha, PhasePoint beta) {
    const double n1 = norm_socs(p, alpha);
    if (n1 <= kZeroTraceFloor)
        throw DegenerateState("wigner_socs_closed: vanishing normalization constant");
    const double c = p.s + p.t;
    const double aa = std::norm(alpha);
    const double m1 = p.s - c * aa;
    const double cross = 2.0 * (std::conj(alpha) * beta.beta).real();
    const double w_coh =
        2.0 / std::numbers::pi * std::exp(-2.0 * std::norm(beta.beta - alpha));
    return w_coh / n1 *
           (m1 * m1 + 2.0 * c * m1 * cross + c * c * aa * (4.0 * std::norm(beta.beta) - 1.0));
}

/// Closed-form Wigner function of the SUP-operated thermal state. With
/// r = 1+2n, u = 2n/r, v = 2(1+n)/r, c = s+t and w = |beta|^2 the bracket is
///   s^2 + 2scu(vw - 1/2) + c^2 u [u v^2 w^2 + v (1-2n)/r w - 1/(2r)],
/// obtained by applying the Wigner correspondence rules for a†/a products to
/// the thermal Gaussian. It agrees with the series engine to machine
/// precision and integrates to one.
inline double wigner_sots_closed(const SupParams& p, double nbar, PhasePoint beta) {
    const double n2 = norm_sots(p, nbar);
    if (n2 <= kZeroTraceFloor)
        throw DegenerateState("wigner_sots_closed: vanishing normalization constant");
    const double c = p.s + p.t;
    const double r = 1.0 + 2.0 * nbar;
    const double u = 2.0 * nbar / r;
    const double v = 2.0 * (1.0 + nbar) / r;
    const double w = std::norm(beta.beta);
    const double bracket =
        p.s * p.s + 2.0 * p.s * c * u * (v * w - 0.5) +
        c * c * u * (u * v * v * w * w + v * ((1.0 - 2.0 * nbar) / r) * w - 1.0 / (2.0 * r));
    const double w_th = 2.0 / std::numbers::pi / r * std::exp(-2.0 * w / r);
    return w_th / n2 * bracket;
}

/// Matrix element <n| T^(F)(beta) |m> of the ordering-parametrized kernel,
/// valid for m >= n (use conjugate symmetry otherwise). F = -1 reduces to the
/// Husimi kernel |beta><beta|.
inline Complex t_f_matrix_element(int n, int m, PhasePoint beta, OrderingParameter F) {
    if (n < 0 || m < n) throw OutOfRange("t_f_matrix_element: require 0 <= n <= m");
    if (F.F >= 0.999) throw OrderingSingularity("t_f_matrix_element: F too close to 1");
    const double f = F.F;
    const double b2 = std::norm(beta.beta);
    const int k = m - n;
    if (f <= -1.0 + 1e-12) {
        // Husimi limit: e^{-|b|^2} b^n (b*)^m / sqrt(n! m!)
        if (b2 == 0.0) return (n == 0 && m == 0) ? 1.0 : 0.0;
        const double logmag = -b2 + (n + m) * 0.5 * std::log(b2) -
                              0.5 * (log_factorial(n) + log_factorial(m));
        const double ph = (n - m) * std::arg(beta.beta);
        return std::polar(std::exp(logmag), ph);
    }
    if (b2 == 0.0 && k > 0) return 0.0;
    const double lag = laguerre_assoc(n, k, 4.0 * b2 / (1.0 - f * f));
    const double ratio = (f + 1.0) / (f - 1.0);  // <= 0
    double logmag = 0.5 * (log_factorial(n) - log_factorial(m)) +
                    (k + 1) * std::log(2.0 / (1.0 - f)) - 2.0 * b2 / (1.0 - f) +
                    std::log(std::abs(lag) + 1e-300);
    double sign = lag < 0 ? -1.0 : 1.0;
    if (ratio != 0.0) {
        logmag += n * std::log(std::abs(ratio));
        if (n % 2 == 1 && ratio < 0) sign = -sign;
    } else if (n > 0) {
        return 0.0;
    }
    if (k > 0) logmag += k * 0.5 * std::log(b2);
    const double ph = -k * std::arg(beta.beta);  // from (beta*)^{m-n}
    return std::polar(sign * std::exp(logmag), ph);
}

/// Ordering-parametrized quasiprobability
///   (1/pi) sum_{n,m} rho(n,m) <m|T^(F)(beta)|n>.
/// Rows are accumulated until a full row contributes < 1e-12 in absolute
/// value; if that never happens within the cutoff the sum is declared
/// unconverged (for thermal-family states the series has a finite radius of
/// convergence in F).
inline double quasiprob_f(const DensityMatrix& rho, PhasePoint beta, OrderingParameter F) {
    if (std::abs(rho.trace() - 1.0) > 1e-8)
        throw ValidationError("quasiprob_f: state must be normalized");
    const int d = rho.cutoff;
    Complex acc(0.0, 0.0);
    bool converged = false;
    for (int n = 0; n < d; ++n) {
        double row_abs = 0.0;
        Complex row(0.0, 0.0);
        for (int m = 0; m < d; ++m) {
            const Complex rnm = rho.elements(n, m);
            if (rnm == Complex(0.0, 0.0) && n != m) continue;
            // T(m, n) = <m|T|n>; use symmetry for m < n.
            const Complex tmn = (m >= n) ? std::conj(t_f_matrix_element(n, m, beta, F))
                                         : t_f_matrix_element(m, n, beta, F);
            const Complex term = rnm * tmn;
            row += term;
            row_abs += std::abs(term);
        }
        acc += row;
        if (row_abs / std::numbers::pi < kRowContributionTol && n >= 2) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw TruncationError(
            "quasiprob_f: (n,m) sum not converged at this cutoff; the series may be "
            "divergent for this F");
    acc /= std::numbers::pi;
    if (std::abs(acc.imag()) > 1e-10)
        throw NumericError("quasiprob_f: non-negligible imaginary part");
    return acc.real();
}

/// Zero contour of the SOCS Wigner bracket: a circle of radius 1/2 for every
/// s + t != 0, centered on the alpha axis at (a, b) * (c|a|^2 - s) / (2c|a|^2).
/// Reproduces the three special cases t = 1, 1/sqrt(2), 0.
inline NegativityDisc socs_negativity_disc(const SupParams& p, Complex alpha) {
    const double c = p.s + p.t;
    const double aa = std::norm(alpha);
    if (std::abs(c) < 1e-12)
        throw DegenerateDisc("socs_negativity_disc: identity point has no negative region");
    if (p.s != 0.0 && aa < 1e-24)
        throw DegenerateDisc("socs_negativity_disc: center diverges as alpha -> 0");
    NegativityDisc disc;
    const double scale = (p.s == 0.0) ? 0.5 : (c * aa - p.s) / (2.0 * c * aa);
    disc.center = PhasePoint(scale * alpha);
    disc.radius = 0.5;
    return disc;
}

}  // namespace supop
