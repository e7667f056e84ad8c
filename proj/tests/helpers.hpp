#pragma once

#include <complex>
#include <random>
#include <vector>

#include "supop/supop.hpp"

namespace test_helpers {

using supop::CMatrix;
using supop::Complex;
using supop::CVector;

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Complex random_in_disk(double radius) {
    while (true) {
        const double re = uniform(-radius, radius);
        const double im = uniform(-radius, radius);
        if (re * re + im * im <= radius * radius) return {re, im};
    }
}

/// Random normalized pure state with geometrically damped amplitudes.
inline supop::FockVector random_pure_state(int cutoff, double damping = 0.55) {
    supop::FockVector psi;
    psi.cutoff = cutoff;
    psi.amplitudes = CVector::Zero(cutoff);
    std::normal_distribution<double> gauss;
    double w = 1.0;
    for (int n = 0; n < cutoff; ++n) {
        psi.amplitudes[n] = Complex(gauss(rng()), gauss(rng())) * w;
        w *= damping;
    }
    psi.amplitudes /= psi.amplitudes.norm();
    return psi;
}

/// Random normalized mixed state (A A† / tr), damped towards low photon
/// numbers so truncation tails are negligible.
inline supop::DensityMatrix random_mixed_state(int cutoff, int rank = 4, double damping = 0.5) {
    CMatrix acc = CMatrix::Zero(cutoff, cutoff);
    for (int k = 0; k < rank; ++k) {
        const auto psi = random_pure_state(cutoff, damping);
        const double w = uniform(0.2, 1.0);
        acc += w * (psi.amplitudes * psi.amplitudes.adjoint());
    }
    supop::DensityMatrix rho;
    rho.cutoff = cutoff;
    rho.elements = acc / acc.trace().real();
    rho.normalized = true;
    return rho;
}

/// Associated Laguerre polynomial by direct long-double summation
///   L_n^{(k)}(x) = sum_j (-1)^j C(n+k, n-j) x^j / j!.
inline long double laguerre_direct(int n, int k, long double x) {
    auto binom = [](int a, int b) {
        long double r = 1.0L;
        for (int i = 1; i <= b; ++i) r *= static_cast<long double>(a - b + i) / i;
        return r;
    };
    long double sum = 0.0L, xj = 1.0L, fact = 1.0L;
    for (int j = 0; j <= n; ++j) {
        if (j > 0) {
            xj *= x;
            fact *= j;
        }
        sum += (j % 2 ? -1.0L : 1.0L) * binom(n + k, n - j) * xj / fact;
    }
    return sum;
}

/// T^(F) kernel element by direct long-double evaluation, for m >= n.
inline std::complex<long double> t_f_direct(int n, int m, std::complex<long double> beta,
                                            long double F) {
    auto fact = [](int a) {
        long double r = 1.0L;
        for (int i = 2; i <= a; ++i) r *= i;
        return r;
    };
    const long double b2 = std::norm(beta);
    const std::complex<long double> bconj = std::conj(beta);
    std::complex<long double> pw = 1.0L;
    for (int i = 0; i < m - n; ++i) pw *= bconj;
    long double ratio_pow = 1.0L;
    for (int i = 0; i < n; ++i) ratio_pow *= (F + 1.0L) / (F - 1.0L);
    return std::sqrt(fact(n) / fact(m)) *
           std::pow(2.0L / (1.0L - F), static_cast<long double>(m - n + 1)) * ratio_pow * pw *
           std::exp(-2.0L * b2 / (1.0L - F)) *
           laguerre_direct(n, m - n, 4.0L * b2 / (1.0L - F * F));
}

/// Normally-ordered quadrature variance at a fixed angle, from moments.
inline double quad_variance_at(const supop::QuadratureMoments& m, double theta) {
    const Complex c = m.a_sq_mean - m.a_mean * m.a_mean;
    return 2.0 * (std::polar(1.0, -2.0 * theta) * c).real() + 2.0 * m.n_mean -
           2.0 * std::norm(m.a_mean);
}

}  // namespace test_helpers
