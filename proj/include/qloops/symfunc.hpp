#pragma once

// Partitions, Schur and power-sum evaluation, symmetric-group characters, and the exact
// finite-n interchange expectation built from them.

#include <cstdint>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "qloops/common.hpp"
#include "qloops/partition.hpp"
#include "qloops/pd.hpp"

namespace qloops::symfunc {

/// All partitions of n with at most max_length parts, in decreasing lexicographic order.
std::vector<Partition> partitions(int n, int max_length = -1);

/// s_lambda(x_1..x_r) through divided differences of the bialternant, so repeated arguments
/// need no special casing. DomainError if l(lambda) > r.
Complex schur_eval(const Partition& lambda, std::span<const Complex> x);

/// Bialternant over an exact field (e.g. boost::rational<BigInt>); x must be distinct.
template <class Field>
Field schur_bialternant(const Partition& lambda, std::span<const Field> x);

/// s_lambda(1,...,1) with r ones, prod_{i<j} (lambda_i - i - lambda_j + j)/(j - i).
BigInt schur_at_ones(const Partition& lambda, int r);

/// p_mu(x) = prod_j sum_i x_i^{mu_j}.
Complex power_sum_eval(const Partition& mu, std::span<const Complex> x);
template <class Field>
Field power_sum_exact(const Partition& mu, std::span<const Field> x);

struct CharacterValue {
    Partition lambda;
    Partition mu;
    BigInt value;
};

/// chi_lambda(mu) by the Murnaghan-Nakayama rule with memoisation.
CharacterValue character(const Partition& lambda, const Partition& mu);

/// Hook-length dimension d_lambda.
BigInt dimension(const Partition& lambda);

/// chi_lambda((1 2)) / d_lambda = (sum of contents) / C(n,2).
boost::rational<std::int64_t> transposition_ratio(const Partition& lambda);

/// Exact E[prod_i q_h(l_i/n)] for the interchange loop model with theta = h.theta() colours,
/// via the character expansion with E[chi_lambda(sigma)] = d_lambda exp(beta (n-1)/2 (r(lambda)-1)).
Complex interchange_expectation_exact(int n, double beta, const pd::FieldVector& h);

struct SchurRatioPoint {
    int n = 0;
    Partition lambda;
    Complex ratio;      // s_lambda(e^{h/n}) / s_lambda(1)
    double distance = 0.0;  // |ratio - R(h; x)|
};

struct SchurRatioReport {
    Complex target;  // R(h; x)
    std::vector<SchurRatioPoint> points;
};

SchurRatioReport schur_ratio_limit_check(std::span<const Partition> sequence, const pd::FieldVector& h,
                                         std::span<const double> x);

}  // namespace qloops::symfunc

#include "qloops/detail/symfunc_exact.hpp"
