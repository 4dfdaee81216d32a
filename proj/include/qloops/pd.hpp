#pragma once

// Poisson-Dirichlet and Ewens sampling, PD expectations and the R-function.

#include <span>
#include <vector>

#include "qloops/common.hpp"
#include "qloops/partition.hpp"
#include "qloops/rng.hpp"
#include "qloops/stats.hpp"

namespace qloops::pd {

struct PDSample {
    std::vector<double> parts;     // sorted descending
    std::vector<double> unsorted;  // in stick-breaking (GEM) order
    double residual = 0.0;
    double theta = 1.0;
};

/// Stick-breaking with Beta(1, theta) sticks until the unbroken mass drops below `truncation`.
PDSample stick_breaking_sample(double theta, Rng& rng, double truncation = 1e-12);

/// E_PD(theta)[prod_i cosh(h X_i)] = Gamma(theta)/Gamma(theta/2) sum_k Gamma(theta/2+k)/(k! Gamma(theta+2k)) h^{2k}.
Complex pd_cosh_series(double theta, Complex h);

/// theta complex field values h_1..h_theta.
class FieldVector {
public:
    FieldVector() = default;
    explicit FieldVector(std::vector<Complex> h);
    static FieldVector real(std::span<const double> h);
    /// h_i = scale * (-S + i - 1), the eigenvalues of scale * S^(1).
    static FieldVector spin(Spin spin, double scale = 1.0);

    int theta() const { return static_cast<int>(h_.size()); }
    std::span<const Complex> values() const { return h_; }
    const Complex& operator[](int i) const { return h_[static_cast<std::size_t>(i)]; }
    Complex sum() const;
    FieldVector scaled(Complex c) const;

private:
    std::vector<Complex> h_;
};

/// q_h(t) = (1/theta) sum_i exp(h_i t).
Complex q_eval(const FieldVector& h, double t);
/// sinh(theta t/2) / (theta sinh(t/2)), equal to q_eval at the spin field.
double q_spin(Spin spin, double t);

/// R(h; x) = det[e^{h_i x_j}] prod_{i<j} (j-i)/((h_i-h_j)(x_i-x_j)), with its continuous extension
/// at coincident arguments.
Complex r_function(const FieldVector& h, std::span<const double> x);

/// Coincidence threshold below which r_function leaves the raw determinant.
inline constexpr double kConfluenceThreshold = 1e-6;

/// Raw determinant/product formula, no confluence handling. Templated so tests can run it
/// in extended precision.
template <class Real>
Real r_function_generic(std::span<const Real> h, std::span<const Real> x);

/// Monte Carlo estimate of E_PD(theta)[prod_i q_h(z X_i)]; theta must be an integer equal to h.theta()
/// and h must be real.
stats::MeanEstimate pd_q_expectation_mc(double theta, const FieldVector& h, double z_star, std::size_t n_samples,
                                        Rng& rng);

/// exp(-(1-z) sum h / theta) R(h; x1, x2, ..., x2), x1 = (1+(theta-1)z)/theta, x2 = (1-z)/theta.
Complex pd_q_expectation_closed(const FieldVector& h, double z_star);

struct EwensPermutation {
    int n = 0;
    Partition cycle_type;
};

/// Chinese-restaurant (Feller) construction of an Ewens(theta) cycle type.
EwensPermutation ewens_sample(int n, double theta, Rng& rng);

}  // namespace qloops::pd

#include "qloops/detail/rfunction_generic.hpp"
