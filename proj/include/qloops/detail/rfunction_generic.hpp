#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qloops/common.hpp"

namespace qloops::pd {

template <class Real>
Real r_function_generic(std::span<const Real> h, std::span<const Real> x) {
    using std::abs;
    using std::exp;
    const std::size_t k = h.size();
    if (x.size() != k || k == 0) throw DomainError("r_function needs equally sized nonempty h and x");

    std::vector<std::vector<Real>> a(k, std::vector<Real>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a[i][j] = exp(h[i] * x[j]);

    // Gaussian elimination with partial pivoting
    Real det = Real(1);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < k; ++r)
            if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        if (a[c][c] == Real(0)) return Real(0);
        det *= a[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            const Real f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < k; ++j) a[r][j] -= f * a[c][j];
        }
    }

    Real out = det;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            out *= Real(static_cast<double>(j - i)) / ((h[i] - h[j]) * (x[i] - x[j]));
    return out;
}

}  // namespace qloops::pd
