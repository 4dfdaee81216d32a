#pragma once

// Exact finite-n quantities for the mean-field Heisenberg/XXZ model on the complete graph.
//
// Half-integers are doubled throughout: two_m = 2M, two_j = 2J.

#include <span>
#include <vector>

#include "qloops/common.hpp"

namespace qloops::spectra {

/// Largest n * 2S accepted by the exact big-integer tables.
inline constexpr int kExactCap = 10000;

/// Above this n * 2S, the Gibbs sums switch from exact big-integer degeneracies
/// to the log-space convolution.
inline constexpr int kAutoExactLimit = 4096;

/// Counts L_{M,n}: number of product basis states with total S^(3) eigenvalue M.
class MultiplicityTable {
public:
    MultiplicityTable(int n, Spin spin, std::vector<BigInt> counts);

    int n() const { return n_; }
    Spin spin() const { return spin_; }
    /// 2 * S * n, the largest |2M|.
    int max_two_m() const { return n_ * spin_.two_s; }

    /// L_{M,n} for 2M = two_m; zero outside the range or on the wrong parity.
    const BigInt& count(int two_m) const;

    /// Counts indexed by k = M + S n, k = 0 .. 2 S n.
    std::span<const BigInt> counts() const { return counts_; }

private:
    int n_;
    Spin spin_;
    std::vector<BigInt> counts_;
};

/// Iterated convolution of the uniform (2S+1)-point distribution.
/// Throws SizeError when n * 2S exceeds `cap`.
MultiplicityTable multiplicity_table(int n, Spin spin, int cap = kExactCap);

/// Degeneracies d_J = L_{J,n} - L_{J+1,n} of the total-spin irreps.
class IrrepSpectrum {
public:
    IrrepSpectrum(int n, Spin spin, std::vector<int> two_j, std::vector<BigInt> degeneracy);

    int n() const { return n_; }
    Spin spin() const { return spin_; }
    /// Admissible 2J values in increasing order.
    std::span<const int> two_j() const { return two_j_; }
    std::span<const BigInt> degeneracies() const { return degeneracy_; }
    /// d_J for 2J = two_j; zero if not admissible.
    BigInt degeneracy(int two_j) const;

private:
    int n_;
    Spin spin_;
    std::vector<int> two_j_;
    std::vector<BigInt> degeneracy_;
};

IrrepSpectrum irrep_spectrum(const MultiplicityTable& table);

/// Natural logs of L_{M,n} by log-sum-exp convolution (indexed like MultiplicityTable::counts).
std::vector<double> log_multiplicities(int n, Spin spin);

/// log d_J for every admissible 2J (increasing); -inf where d_J = 0.
struct LogDegeneracies {
    std::vector<int> two_j;
    std::vector<double> log_d;
};

enum class CountMode { automatic, exact, log_space };

LogDegeneracies log_degeneracies(int n, Spin spin, CountMode mode = CountMode::automatic);

struct HeisenbergParams {
    int n = 2;
    Spin spin{1};
    double beta = 1.0;
    double delta = 1.0;   // anisotropy, in [-1, 1]
    Complex h{0.0, 0.0};  // field conjugate to (1/n) sum_i S_i^(1)
};

struct GibbsValue {
    Complex value;
    HeisenbergParams params;
};

/// < exp((h/n) Sigma^(1)) > in the Gibbs state of H = -(1/n) (Sigma1^2 + Sigma2^2 + Delta Sigma3^2),
/// Sigma^(a) = sum_i S_i^(a). For S = 1/2, or for Delta = 1, this is -(2/n) sum_{i<j} S_i.S_j up to a constant.
///
/// Delta = 1 sums the closed form over (J, M); Delta < 1 diagonalises Sigma^(1)
/// inside each spin-J irrep and weights its diagonal by exp(-(1-Delta)(beta/n) M^2).
GibbsValue heisenberg_expectation_exact(const HeisenbergParams& p, CountMode mode = CountMode::automatic);

}  // namespace qloops::spectra
