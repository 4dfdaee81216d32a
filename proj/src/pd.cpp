#include "qloops/pd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qloops/asymptotics.hpp"

namespace qloops::pd {

PDSample stick_breaking_sample(double theta, Rng& rng, double truncation) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("PD parameter theta must be positive");
    if (!(truncation > 0.0 && truncation < 1.0)) throw DomainError("truncation must lie in (0, 1)");
    PDSample s;
    s.theta = theta;
    double rest = 1.0;
    const double inv = 1.0 / theta;
    while (rest >= truncation) {
        // B = 1 - U^{1/theta} ~ Beta(1, theta); the unbroken mass is multiplied by U^{1/theta}
        const double keep = std::pow(rng.uniform_pos(), inv);
        const double next = rest * keep;
        const double piece = rest - next;
        rest = next;
        if (piece > 0.0) s.unsorted.push_back(piece);
    }
    s.residual = rest;
    s.parts = s.unsorted;
    std::sort(s.parts.begin(), s.parts.end(), std::greater<>());
    return s;
}

Complex pd_cosh_series(double theta, Complex h) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("PD parameter theta must be positive");
    const Complex h2 = h * h;
    Complex sum = 1.0, term = 1.0;
    bool past_peak = false;
    double last = 1.0;
    for (int k = 0; k < 500; ++k) {
        term *= h2 * (0.5 * theta + k) / ((k + 1.0) * (theta + 2.0 * k) * (theta + 2.0 * k + 1.0));
        sum += term;
        const double mag = std::abs(term);
        if (mag < last) past_peak = true;
        last = mag;
        if (past_peak && mag < 1e-16 * std::abs(sum)) return sum;
        if (mag == 0.0) return sum;
    }
    return sum;
}

FieldVector::FieldVector(std::vector<Complex> h) : h_(std::move(h)) {
    if (h_.empty()) throw DomainError("field vector must be nonempty");
    for (auto v : h_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw DomainError("field values must be finite");
}

FieldVector FieldVector::real(std::span<const double> h) { return FieldVector(std::vector<Complex>(h.begin(), h.end())); }

FieldVector FieldVector::spin(Spin spin, double scale) {
    std::vector<Complex> h;
    for (int i = 0; i < spin.theta(); ++i) h.emplace_back(scale * (-spin.value() + i));
    return FieldVector(std::move(h));
}

Complex FieldVector::sum() const {
    Complex s = 0.0;
    for (auto v : h_) s += v;
    return s;
}

FieldVector FieldVector::scaled(Complex c) const {
    auto h = h_;
    for (auto& v : h) v *= c;
    return FieldVector(std::move(h));
}

Complex q_eval(const FieldVector& h, double t) {
    Complex s = 0.0;
    for (auto v : h.values()) s += std::exp(v * t);
    return s / double(h.theta());
}

double q_spin(Spin spin, double t) {
    const asymptotics::SpinContext ctx(spin);
    return std::exp(asymptotics::eta(t, ctx)) / spin.theta();
}

namespace {

int checked_theta(double theta, const FieldVector& h) {
    if (theta != std::floor(theta) || theta < 2.0)
        throw DomainError("the closed PD q-expectation is only established for integer theta >= 2");
    if (static_cast<int>(theta) != h.theta()) throw DomainError("field vector length must equal theta");
    return h.theta();
}

}  // namespace

Complex pd_q_expectation_closed(const FieldVector& h, double z_star) {
    const int k = checked_theta(h.theta(), h);
    if (!(z_star >= 0.0 && z_star <= 1.0)) throw DomainError("z* must lie in [0, 1]");
    const double x1 = (1.0 + (k - 1) * z_star) / k;
    const double x2 = (1.0 - z_star) / k;
    std::vector<double> x(static_cast<std::size_t>(k), x2);
    x[0] = x1;
    return std::exp(-(1.0 - z_star) * h.sum() / double(k)) * r_function(h, x);
}

stats::MeanEstimate pd_q_expectation_mc(double theta, const FieldVector& h, double z_star, std::size_t n_samples,
                                        Rng& rng) {
    const int k = checked_theta(theta, h);
    if (!(z_star >= 0.0 && z_star <= 1.0)) throw DomainError("z* must lie in [0, 1]");
    for (auto v : h.values())
        if (v.imag() != 0.0) throw DomainError("Monte Carlo PD estimator needs a real field");
    if (n_samples < 2) throw DomainError("need at least two samples");
    std::vector<double> vals;
    vals.reserve(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        auto sample = stick_breaking_sample(k, rng);
        double prod = 1.0;
        for (double xi : sample.parts) prod *= q_eval(h, z_star * xi).real();
        vals.push_back(prod);
    }
    return stats::iid_mean(vals);
}

EwensPermutation ewens_sample(int n, double theta, Rng& rng) {
    if (n < 1) throw DomainError("Ewens sample needs n >= 1");
    if (!(theta > 0.0) || !std::isfinite(theta)) throw DomainError("Ewens parameter theta must be positive");
    std::vector<int> cycles;
    int len = 0;
    // Feller coupling: the cycle in progress closes with probability theta/(theta+i-1)
    for (int i = n; i >= 1; --i) {
        ++len;
        if (i == 1 || rng.bernoulli(theta / (theta + i - 1))) {
            cycles.push_back(len);
            len = 0;
        }
    }
    return {n, Partition::from_unsorted(std::move(cycles))};
}

}  // namespace qloops::pd
