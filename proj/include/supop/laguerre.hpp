#pragma once

#include <cmath>
#include <vector>

#include "supop/errors.hpp"

namespace supop {

/// log(n!) via lgamma, table-cached for the small arguments that dominate.
inline double log_factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(2048);
        for (std::size_t i = 0; i < t.size(); ++i)
            t[i] = std::lgamma(static_cast<double>(i) + 1.0);
        return t;
    }();
    if (n >= 0 && static_cast<std::size_t>(n) < table.size()) return table[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

namespace detail {

// Fills out[0..count-1] with L_n^{(k)}(x), k >= 0, by the three-term upward
// recurrence (n+1) L_{n+1} = (2n+1+k-x) L_n - (n+k) L_{n-1}.
inline void laguerre_row(int k, double x, int count, std::vector<double>& out) {
    out.resize(count);
    if (count == 0) return;
    out[0] = 1.0;
    if (count == 1) return;
    out[1] = 1.0 + k - x;
    for (int n = 1; n + 1 < count; ++n) {
        out[n + 1] = ((2.0 * n + 1.0 + k - x) * out[n] - (n + k) * out[n - 1]) / (n + 1.0);
    }
}

}  // namespace detail

/// Associated Laguerre polynomial L_n^{(k)}(x). Supports integer k >= -n;
/// negative upper index is reduced through
/// L_n^{(-j)}(x) = (-x)^j (n-j)!/n! L_{n-j}^{(j)}(x).
inline double laguerre_assoc(int n, int k, double x) {
    if (n < 0) throw OutOfRange("laguerre_assoc: n must be >= 0");
    if (n > 200) throw OutOfRange("laguerre_assoc: n > 200 not supported");
    if (k < -n) throw OutOfRange("laguerre_assoc: require k >= -n");
    if (!std::isfinite(x)) throw OutOfRange("laguerre_assoc: x must be finite");
    if (k < 0) {
        const int j = -k;
        const double scale =
            std::pow(-x, j) * std::exp(log_factorial(n - j) - log_factorial(n));
        return scale * laguerre_assoc(n - j, j, x);
    }
    std::vector<double> row;
    detail::laguerre_row(k, x, n + 1, row);
    return row[n];
}

}  // namespace supop
