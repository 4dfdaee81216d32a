#include "qloops/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qloops::stats {

MeanEstimate iid_mean(std::span<const double> xs) {
    MeanEstimate r;
    r.samples = xs.size();
    if (xs.empty()) return r;
    const double n = static_cast<double>(xs.size());
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    if (xs.size() < 2) return r;
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.std_error = std::sqrt(ss / (n - 1.0) / n);
    return r;
}

MeanEstimate batch_means(std::span<const double> xs, std::size_t batches) {
    if (batches < 2 || xs.size() < 4 * batches) return iid_mean(xs);
    const std::size_t len = xs.size() / batches;
    std::vector<double> means(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        auto first = xs.begin() + static_cast<std::ptrdiff_t>(b * len);
        means[b] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(len), 0.0) / static_cast<double>(len);
    }
    MeanEstimate r = iid_mean(means);
    // Report the mean over every sample, not just the batched prefix.
    r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    r.samples = xs.size();
    return r;
}

MeanEstimate pool(std::span<const MeanEstimate> parts) {
    MeanEstimate r;
    if (parts.empty()) return r;
    double var = 0.0;
    for (const auto& p : parts) {
        r.mean += p.mean;
        var += p.std_error * p.std_error;
        r.samples += p.samples;
    }
    const double k = static_cast<double>(parts.size());
    r.mean /= k;
    r.std_error = std::sqrt(var) / k;
    return r;
}

double kolmogorov_q(double lambda) {
    if (lambda < 1e-3) return 1.0;
    if (lambda < 1.18) {
        // Theta-function form converges faster for small lambda.
        const double y = std::exp(-M_PI * M_PI / (8.0 * lambda * lambda));
        double s = 0.0;
        for (int k = 1; k < 40; k += 2) s += std::pow(y, k * k);
        return 1.0 - std::sqrt(2.0 * M_PI) / lambda * s;
    }
    double s = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        s += (k % 2 ? 1.0 : -1.0) * term;
        if (term < 1e-18) break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    KsResult r;
    if (a.empty() || b.empty()) return r;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    r.statistic = d;
    const double ne = std::sqrt(na * nb / (na + nb));
    r.p_value = kolmogorov_q((ne + 0.12 + 0.11 / ne) * d);
    return r;
}

double log_sum_exp(std::span<const double> v) {
    double mx = -std::numeric_limits<double>::infinity();
    for (double x : v) mx = std::max(mx, x);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double x : v) s += std::exp(x - mx);
    return mx + std::log(s);
}

}  // namespace qloops::stats
