#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qloops::stats {

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// Mean with the i.i.d. standard error.
MeanEstimate iid_mean(std::span<const double> xs);

/// Mean with a batch-means standard error for correlated series.
/// Uses `batches` contiguous batches; falls back to iid_mean when too short.
MeanEstimate batch_means(std::span<const double> xs, std::size_t batches = 32);

/// Pools estimates from independent chains (inverse-variance free: equal-weight mean,
/// standard errors combined in quadrature).
MeanEstimate pool(std::span<const MeanEstimate> parts);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Kolmogorov tail Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// log(sum exp(v)) with the maximum subtracted.
double log_sum_exp(std::span<const double> v);

}  // namespace qloops::stats
