#include "qloops/dense.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

namespace qloops::spectra {

int dense_dimension(int n, Spin spin, int cap) {
    if (n < 1) throw DomainError("site count n must be positive");
    long long dim = 1;
    for (int i = 0; i < n; ++i) {
        dim *= spin.theta();
        if (dim > cap) throw SizeError("dense dimension (2S+1)^n exceeds " + std::to_string(cap));
    }
    return static_cast<int>(dim);
}

SpinMatrices spin_matrices(Spin spin) {
    const int d = spin.theta();
    SpinMatrices m;
    m.s3 = Eigen::MatrixXd::Zero(d, d);
    m.plus = Eigen::MatrixXd::Zero(d, d);
    const double s = spin.value();
    for (int a = 0; a < d; ++a) {
        const double mz = s - a;
        m.s3(a, a) = mz;
        if (a > 0) m.plus(a - 1, a) = std::sqrt(s * (s + 1) - mz * (mz + 1));
    }
    m.minus = m.plus.transpose();
    m.s1 = 0.5 * (m.plus + m.minus);
    // S2 = (S+ - S-) / 2i = i (S- - S+) / 2
    m.s2_imag = 0.5 * (m.minus - m.plus);
    return m;
}

namespace {

struct ProductSpace {
    int n, d, dim;
    std::vector<int> stride;

    ProductSpace(int n_, Spin spin) : n(n_), d(spin.theta()), dim(dense_dimension(n_, spin)), stride(n_) {
        int st = 1;
        for (int i = n - 1; i >= 0; --i) {
            stride[i] = st;
            st *= d;
        }
    }
    int digit(int state, int site) const { return (state / stride[site]) % d; }

    // sum_i A_i
    Eigen::MatrixXd one_body(const Eigen::MatrixXd& a) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
        for (int s = 0; s < dim; ++s)
            for (int i = 0; i < n; ++i) {
                const int ai = digit(s, i);
                for (int b = 0; b < d; ++b) {
                    if (a(b, ai) == 0.0) continue;
                    out(s + (b - ai) * stride[i], s) += a(b, ai);
                }
            }
        return out;
    }

    // sum_{i<j} A_i B_j
    Eigen::MatrixXd two_body(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
        for (int s = 0; s < dim; ++s)
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const int ai = digit(s, i), bj = digit(s, j);
                    for (int x = 0; x < d; ++x) {
                        if (a(x, ai) == 0.0) continue;
                        for (int y = 0; y < d; ++y) {
                            if (b(y, bj) == 0.0) continue;
                            out(s + (x - ai) * stride[i] + (y - bj) * stride[j], s) += a(x, ai) * b(y, bj);
                        }
                    }
                }
        return out;
    }
};

// sum_{i<j} (S1 S1 + S2 S2) = (1/2) sum_{i<j} (S+ S- + S- S+)
Eigen::MatrixXd transverse_coupling(const ProductSpace& ps, const SpinMatrices& m) {
    return 0.5 * (ps.two_body(m.plus, m.minus) + ps.two_body(m.minus, m.plus));
}

}  // namespace

DenseHeisenberg::DenseHeisenberg(int n, Spin spin, double delta) : n_(n), spin_(spin) {
    if (!(delta >= -1.0 && delta <= 1.0)) throw DomainError("delta must lie in [-1, 1]");
    ProductSpace ps(n, spin);
    auto m = spin_matrices(spin);
    // -(1/n) (Sigma1^2 + Sigma2^2 + delta Sigma3^2), written through the total ladder operators
    const Eigen::MatrixXd up = ps.one_body(m.plus), down = ps.one_body(m.minus), z = ps.one_body(m.s3);
    Eigen::MatrixXd h = 0.5 * (up * down + down * up) + delta * z * z;
    h *= -1.0 / n;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ps.one_body(m.s1));
    if (eh.info() != Eigen::Success || es.info() != Eigen::Success)
        throw NumericError("dense eigendecomposition failed");
    energies_ = eh.eigenvalues();
    sigma1_ = es.eigenvalues();
    overlap_sq_ = (eh.eigenvectors().transpose() * es.eigenvectors()).array().square().matrix();
}

Complex DenseHeisenberg::generating_function(double beta, Complex h) const {
    const double e0 = energies_.minCoeff();
    const Eigen::Index dim = energies_.size();
    std::vector<Complex> field(static_cast<std::size_t>(dim));
    for (Eigen::Index l = 0; l < dim; ++l) field[static_cast<std::size_t>(l)] = std::exp(h * sigma1_(l) / double(n_));
    Complex num = 0.0;
    double z = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double w = std::exp(-beta * (energies_(k) - e0));
        z += w;
        Complex row = 0.0;
        for (Eigen::Index l = 0; l < dim; ++l) row += overlap_sq_(k, l) * field[static_cast<std::size_t>(l)];
        num += w * row;
    }
    return num / z;
}

GibbsValue dense_gibbs_oracle(const HeisenbergParams& p) {
    DenseHeisenberg model(p.n, p.spin, p.delta);
    return {model.generating_function(p.beta, p.h), p};
}

FalkBruchResult falk_bruch_check(int n, Spin spin, double beta, double h, double u) {
    if (!(h > 0.0)) throw DomainError("Falk-Bruch check needs h > 0");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("u must lie in [0, 1]");
    ProductSpace ps(n, spin);
    auto m = spin_matrices(spin);

    const Eigen::MatrixXd sigma1 = ps.one_body(m.s1);
    Eigen::MatrixXd ham = transverse_coupling(ps, m) + (1.0 - u) * ps.two_body(m.s3, m.s3);
    ham *= -2.0 / n;
    ham -= h * sigma1;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(ham);
    if (eh.info() != Eigen::Success) throw NumericError("dense eigendecomposition failed");
    const Eigen::VectorXd& e = eh.eigenvalues();
    const Eigen::MatrixXd& v = eh.eigenvectors();
    const Eigen::Index dim = e.size();

    Eigen::VectorXd p(dim);
    for (Eigen::Index k = 0; k < dim; ++k) p(k) = std::exp(-beta * (e(k) - e(0)));
    const double z = p.sum();
    p /= z;

    // M = i K with K real antisymmetric, expressed in the energy basis
    const Eigen::MatrixXd k = v.transpose() * (ps.one_body(m.s2_imag) / std::sqrt(double(n))) * v;
    const Eigen::MatrixXd s1e = v.transpose() * sigma1 * v;

    FalkBruchResult r;
    r.magnetization = p.dot(s1e.diagonal()) / n;
    // <M^2> = -<K^2> = sum_k p_k sum_m K_km^2
    r.chi_perp = p.dot(k.array().square().rowwise().sum().matrix());

    double duhamel = 0.0;
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b) {
            const double amp = k(a, b) * k(a, b);
            if (amp == 0.0) continue;
            const double x = beta * (e(b) - e(a));
            const double ea = std::exp(-beta * (e(a) - e(0)));
            double kernel;
            if (std::abs(x) < 1e-10) {
                kernel = std::exp(-beta * (0.5 * (e(a) + e(b)) - e(0)));
            } else {
                const double eb = std::exp(-beta * (e(b) - e(0)));
                kernel = (ea - eb) / x;
            }
            duhamel += amp * kernel;
        }
    r.duhamel = duhamel / z;

    // [M,[H,M]] with M = iK and H diagonal: -(K X - X K), X = E K - K E
    const Eigen::MatrixXd x = e.asDiagonal() * k - k * e.asDiagonal();
    const Eigen::MatrixXd dc = x * k - k * x;
    r.double_commutator = p.dot(dc.diagonal());

    r.m_over_bh = r.magnetization / (beta * h);
    r.lower_bound = r.chi_perp - 0.5 * std::sqrt(beta * r.chi_perp * r.double_commutator);
    return r;
}

}  // namespace qloops::spectra
