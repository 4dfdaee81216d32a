#pragma once

// Variational functionals of the mean-field models and their maximisers.

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "qloops/common.hpp"

namespace qloops::asymptotics {

struct SpinContext {
    int two_s = 1;

    SpinContext() = default;
    explicit SpinContext(Spin s) : two_s(s.two_s) {
        if (two_s < 1) throw DomainError("spin must be positive");
    }
    double s() const { return 0.5 * two_s; }
    int theta() const { return two_s + 1; }
    /// (3/2) / (S^2 + S)
    double beta_c() const { return 1.5 / (s() * s() + s()); }
};

struct MaximizerResult {
    double location = 0.0;
    double value = 0.0;
    double second_derivative = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Set when a maximiser had to be clamped to a boundary of its domain.
    bool clamped = false;
    /// Secondary location (z* for the interchange functional, x(mu*) for the classical one).
    double secondary = 0.0;
};

struct ExponentFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> sample_points;
};

/// log(sinh(theta x/2) / sinh(x/2)).
double eta(double x, const SpinContext& ctx);
double eta_prime(double x, const SpinContext& ctx);
/// (1/4) [1/sinh^2(x/2) - theta^2/sinh^2(theta x/2)], positive everywhere.
double eta_second(double x, const SpinContext& ctx);

/// Solution of eta'(x) = m, |m| < S.
double x_star(double m, const SpinContext& ctx);

/// g_beta(m) = eta(x*(m)) - m x*(m) + beta m^2, and its first two derivatives.
double g_beta(double m, double beta, const SpinContext& ctx);
double g_beta_prime(double m, double beta, const SpinContext& ctx);
double g_beta_second(double m, double beta, const SpinContext& ctx);

/// Maximiser of g_beta(m) + h m over [0, S).
MaximizerResult maximize_g(double beta, double h, const SpinContext& ctx);
MaximizerResult m_star(double beta, const SpinContext& ctx);

/// log of (1 - e^{-x*}) / sqrt(2 pi eta''(x*) n) * exp(n [eta(x*) - m x*]), x* = x*(m).
double saddle_multiplicity(int n, double m, const SpinContext& ctx);

double pressure(double beta, double h, const SpinContext& ctx);
double magnetization(double beta, double h, const SpinContext& ctx);
/// 1 / (2 (beta_c - beta)); DomainError for beta >= beta_c.
double susceptibility(double beta, const SpinContext& ctx);

/// Least-squares slope of log y against log t using the four smallest t.
ExponentFit fit_exponent(std::span<const std::pair<double, double>> samples);

/// Interchange free-energy functional; x must be a weakly decreasing point of the simplex.
double phi_beta(std::span<const double> x, double beta);
/// 4S/(2S-1) log(2S) for S >= 1; for S = 1/2 the Heisenberg value 2.
double interchange_beta_c(const SpinContext& ctx);
/// Maximiser over the family (x1, (1-x1)/(theta-1), ...); location = x1*, secondary = z*.
MaximizerResult interchange_maximizer(double beta, const SpinContext& ctx);

/// x(mu) solving coth x - 1/x = mu, |mu| < 1.
double langevin_inverse(double mu);
/// Maximiser of log(sinh x(mu)/x(mu)) - mu x(mu) + beta mu^2; secondary = x(mu*).
MaximizerResult classical_maximizer(double beta);

/// Generic maximiser: 512-point grid, golden-section refinement, optional derivative polish.
MaximizerResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                const std::function<double(double)>& fprime = {});

}  // namespace qloops::asymptotics
