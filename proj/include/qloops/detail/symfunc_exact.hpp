#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qloops/common.hpp"
#include "qloops/partition.hpp"

namespace qloops::symfunc {

namespace detail {

template <class Field>
Field field_power(Field base, int e) {
    Field out(1);
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

// Exact determinant by fraction-carrying Gaussian elimination.
template <class Field>
Field field_det(std::vector<std::vector<Field>> a) {
    const std::size_t k = a.size();
    Field det(1);
    for (std::size_t c = 0; c < k; ++c) {
        std::size_t piv = c;
        while (piv < k && a[piv][c] == Field(0)) ++piv;
        if (piv == k) return Field(0);
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < k; ++r) {
            if (a[r][c] == Field(0)) continue;
            const Field f = a[r][c] / a[c][c];
            for (std::size_t j = c; j < k; ++j) a[r][j] -= f * a[c][j];
        }
    }
    return det;
}

}  // namespace detail

template <class Field>
Field schur_bialternant(const Partition& lambda, std::span<const Field> x) {
    const int r = static_cast<int>(x.size());
    if (lambda.length() > r) throw DomainError("Schur function needs l(lambda) <= number of variables");
    std::vector<std::vector<Field>> num(r, std::vector<Field>(r)), den(r, std::vector<Field>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            num[i][j] = detail::field_power(x[i], lambda[j] + r - 1 - j);
            den[i][j] = detail::field_power(x[i], r - 1 - j);
        }
    const Field d = detail::field_det(std::move(den));
    if (d == Field(0)) throw DomainError("exact bialternant needs distinct arguments");
    return detail::field_det(std::move(num)) / d;
}

template <class Field>
Field power_sum_exact(const Partition& mu, std::span<const Field> x) {
    Field out(1);
    for (int part : mu.parts()) {
        Field s(0);
        for (const auto& v : x) s += detail::field_power(v, part);
        out *= s;
    }
    return out;
}

}  // namespace qloops::symfunc
