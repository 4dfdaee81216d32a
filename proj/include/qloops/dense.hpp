#pragma once

// Brute-force exact diagonalisation on the full (2S+1)^n product space.
// Independent of the irrep decomposition in spectra.hpp; used as an oracle.

#include <Eigen/Dense>

#include "qloops/spectra.hpp"

namespace qloops::spectra {

inline constexpr int kDenseDimCap = 6561;

/// Dimension (2S+1)^n, or SizeError above `cap`.
int dense_dimension(int n, Spin spin, int cap = kDenseDimCap);

/// One-site spin matrices in the basis S^(3) = S, S-1, ..., -S.
struct SpinMatrices {
    Eigen::MatrixXd s1, s3;
    Eigen::MatrixXd s2_imag;  // S^(2) = i * s2_imag
    Eigen::MatrixXd plus, minus;
};
SpinMatrices spin_matrices(Spin spin);

/// H = -(1/n) (Sigma1^2 + Sigma2^2 + Delta Sigma3^2) diagonalised once; reusable for many (beta, h).
class DenseHeisenberg {
public:
    DenseHeisenberg(int n, Spin spin, double delta);

    int n() const { return n_; }
    Spin spin() const { return spin_; }
    const Eigen::VectorXd& energies() const { return energies_; }

    /// < exp((h/n) Sigma^(1)) > at inverse temperature beta.
    Complex generating_function(double beta, Complex h) const;

private:
    int n_;
    Spin spin_;
    Eigen::VectorXd energies_;
    Eigen::VectorXd sigma1_;        // eigenvalues of Sigma^(1)
    Eigen::MatrixXd overlap_sq_;    // |<E_k | mu_l>|^2
};

GibbsValue dense_gibbs_oracle(const HeisenbergParams& p);

struct FalkBruchResult {
    double chi_perp = 0.0;           // <M^2>, M = n^{-1/2} sum_i S_i^(2)
    double m_over_bh = 0.0;          // M_Gamma / (beta h)
    double lower_bound = 0.0;        // chi_perp - (1/2) sqrt(beta chi_perp <[M,[H,M]]>)
    double magnetization = 0.0;      // M_Gamma = (1/n) sum_i <S_i^(1)>
    double duhamel = 0.0;            // (M, M)
    double double_commutator = 0.0;  // <[M,[H,M]]>
};

/// Dense evaluation of the Falk-Bruch chain for
/// H = -(2/n) sum_{i<j} (S_i.S_j - u S_i^(3) S_j^(3)) - h sum_i S_i^(1).
FalkBruchResult falk_bruch_check(int n, Spin spin, double beta, double h, double u);

}  // namespace qloops::spectra
