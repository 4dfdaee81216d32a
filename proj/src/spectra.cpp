#include "qloops/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qloops/stats.hpp"

namespace qloops::spectra {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_basic(int n, Spin spin) {
    if (n < 1) throw DomainError("site count n must be positive");
    if (spin.two_s < 1) throw DomainError("spin must be positive");
}

}  // namespace

MultiplicityTable::MultiplicityTable(int n, Spin spin, std::vector<BigInt> counts)
    : n_(n), spin_(spin), counts_(std::move(counts)) {
    if (counts_.size() != static_cast<std::size_t>(n * spin.two_s + 1))
        throw IntegrityError("multiplicity table has the wrong number of entries");
}

const BigInt& MultiplicityTable::count(int two_m) const {
    static const BigInt zero = 0;
    const int top = max_two_m();
    if (two_m < -top || two_m > top || (two_m + top) % 2 != 0) return zero;
    return counts_[static_cast<std::size_t>((two_m + top) / 2)];
}

MultiplicityTable multiplicity_table(int n, Spin spin, int cap) {
    check_basic(n, spin);
    if (static_cast<long long>(n) * spin.two_s > cap)
        throw SizeError("n*2S = " + std::to_string(static_cast<long long>(n) * spin.two_s) +
                        " exceeds the exact-count cap " + std::to_string(cap));
    const int w = spin.two_s;
    std::vector<BigInt> cur{1};
    for (int step = 0; step < n; ++step) {
        std::vector<BigInt> next(cur.size() + static_cast<std::size_t>(w));
        // running window sum over w+1 consecutive entries
        BigInt window = 0;
        for (std::size_t k = 0; k < next.size(); ++k) {
            if (k < cur.size()) window += cur[k];
            if (k >= static_cast<std::size_t>(w) + 1) window -= cur[k - static_cast<std::size_t>(w) - 1];
            next[k] = window;
        }
        cur = std::move(next);
    }
    return MultiplicityTable(n, spin, std::move(cur));
}

IrrepSpectrum::IrrepSpectrum(int n, Spin spin, std::vector<int> two_j, std::vector<BigInt> degeneracy)
    : n_(n), spin_(spin), two_j_(std::move(two_j)), degeneracy_(std::move(degeneracy)) {
    if (two_j_.size() != degeneracy_.size()) throw IntegrityError("irrep spectrum size mismatch");
}

BigInt IrrepSpectrum::degeneracy(int two_j) const {
    auto it = std::lower_bound(two_j_.begin(), two_j_.end(), two_j);
    if (it == two_j_.end() || *it != two_j) return 0;
    return degeneracy_[static_cast<std::size_t>(it - two_j_.begin())];
}

IrrepSpectrum irrep_spectrum(const MultiplicityTable& table) {
    const int top = table.max_two_m();
    std::vector<int> two_j;
    std::vector<BigInt> deg;
    for (int tj = top % 2; tj <= top; tj += 2) {
        BigInt d = table.count(tj) - table.count(tj + 2);
        if (d < 0) throw IntegrityError("negative irrep degeneracy");
        two_j.push_back(tj);
        deg.push_back(std::move(d));
    }
    return IrrepSpectrum(table.n(), table.spin(), std::move(two_j), std::move(deg));
}

std::vector<double> log_multiplicities(int n, Spin spin) {
    check_basic(n, spin);
    const int w = spin.two_s;
    std::vector<double> cur{0.0};
    std::vector<double> terms(static_cast<std::size_t>(w) + 1);
    for (int step = 0; step < n; ++step) {
        std::vector<double> next(cur.size() + static_cast<std::size_t>(w));
        for (std::size_t k = 0; k < next.size(); ++k) {
            terms.clear();
            for (int j = 0; j <= w; ++j) {
                if (k < static_cast<std::size_t>(j)) break;
                std::size_t src = k - static_cast<std::size_t>(j);
                if (src < cur.size()) terms.push_back(cur[src]);
            }
            next[k] = stats::log_sum_exp(terms);
        }
        cur = std::move(next);
    }
    return cur;
}

LogDegeneracies log_degeneracies(int n, Spin spin, CountMode mode) {
    check_basic(n, spin);
    const int top = n * spin.two_s;
    if (mode == CountMode::automatic) mode = top <= kAutoExactLimit ? CountMode::exact : CountMode::log_space;

    LogDegeneracies out;
    if (mode == CountMode::exact) {
        auto spec = irrep_spectrum(multiplicity_table(n, spin));
        out.two_j.assign(spec.two_j().begin(), spec.two_j().end());
        for (const auto& d : spec.degeneracies()) out.log_d.push_back(log_bigint(d));
        return out;
    }
    auto logl = log_multiplicities(n, spin);
    for (int tj = top % 2; tj <= top; tj += 2) {
        const auto k = static_cast<std::size_t>((tj + top) / 2);
        double ld = logl[k];
        if (k + 1 < logl.size()) {
            const double ratio = std::exp(logl[k + 1] - logl[k]);
            ld = ratio >= 1.0 ? kNegInf : logl[k] + std::log1p(-ratio);
        }
        out.two_j.push_back(tj);
        out.log_d.push_back(ld);
    }
    return out;
}

namespace {

// Average of exp(t M) over M = -J..J, i.e. sinh((2J+1)t/2) / ((2J+1) sinh(t/2)).
Complex isotropic_block_average(int two_j, Complex t) {
    const double dim = two_j + 1.0;
    const Complex half = 0.5 * t;
    const Complex den = std::sinh(half);
    if (std::abs(den) > 1e-8) return std::sinh(dim * half) / (dim * den);
    Complex sum = 0.0;
    for (int tm = -two_j; tm <= two_j; tm += 2) sum += std::exp(0.5 * tm * t);
    return sum / dim;
}

struct BlockTerm {
    double log_weight;  // log of the block's share of the partition function
    Complex average;    // weighted average of <M|exp(t Sigma1)|M> inside the block
};

// Sigma^(1) restricted to the spin-J irrep in the |J,M> basis, M = J, J-1, ..., -J.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sigma1_block(int two_j) {
    const int dim = two_j + 1;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd off(std::max(dim - 1, 0));
    for (int a = 0; a + 1 < dim; ++a) {
        const int tm = two_j - 2 * (a + 1);  // lower state of the ladder pair
        const double jj = two_j * (two_j + 2.0) / 4.0;
        const double mm = tm * (tm + 2.0) / 4.0;
        off(a) = 0.5 * std::sqrt(jj - mm);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (dim == 1) {
        es.compute(Eigen::MatrixXd::Zero(1, 1));
        return es;
    }
    es.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
    return es;
}

BlockTerm anisotropic_block(int two_j, double c, Complex t) {
    const int dim = two_j + 1;
    std::vector<double> logw(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        const double m = 0.5 * (two_j - 2 * a);
        logw[static_cast<std::size_t>(a)] = -c * m * m;
    }
    const double lmax = *std::max_element(logw.begin(), logw.end());
    double wsum = 0.0;
    for (double& lw : logw) {
        lw = std::exp(lw - lmax);
        wsum += lw;
    }
    BlockTerm out{lmax + std::log(wsum), 1.0};
    if (t == Complex(0.0)) return out;

    auto es = sigma1_block(two_j);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    std::vector<Complex> ev(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) ev[static_cast<std::size_t>(k)] = std::exp(t * vals(k));
    Complex acc = 0.0;
    for (int a = 0; a < dim; ++a) {
        Complex diag = 0.0;
        for (int k = 0; k < dim; ++k) diag += vecs(a, k) * vecs(a, k) * ev[static_cast<std::size_t>(k)];
        acc += logw[static_cast<std::size_t>(a)] * diag;
    }
    out.average = acc / wsum;
    return out;
}

}  // namespace

GibbsValue heisenberg_expectation_exact(const HeisenbergParams& p, CountMode mode) {
    check_basic(p.n, p.spin);
    if (!(p.beta >= 0.0) || !std::isfinite(p.beta)) throw DomainError("beta must be finite and nonnegative");
    if (!(p.delta >= -1.0 && p.delta <= 1.0)) throw DomainError("delta must lie in [-1, 1]");
    if (!std::isfinite(p.h.real()) || !std::isfinite(p.h.imag())) throw DomainError("h must be finite");

    const auto degs = log_degeneracies(p.n, p.spin, mode);
    const double n = p.n;
    const Complex t = p.h / n;
    const double c = (1.0 - p.delta) * p.beta / n;
    const bool isotropic = c == 0.0;

    // log weights first, so blocks whose share underflows can be skipped
    const std::size_t nj = degs.two_j.size();
    std::vector<double> base(nj);
    for (std::size_t i = 0; i < nj; ++i) {
        const double j = 0.5 * degs.two_j[i];
        base[i] = degs.log_d[i] + p.beta * j * (j + 1.0) / n;
    }

    std::vector<BlockTerm> terms(nj);
    double top = kNegInf;
    for (std::size_t i = 0; i < nj; ++i) {
        const int tj = degs.two_j[i];
        double lw = base[i];
        if (isotropic) {
            lw += std::log(tj + 1.0);
        } else {
            // block normaliser sum_M exp(-c M^2), cheap
            double mx = kNegInf, s = 0.0;
            for (int tm = tj % 2; tm <= tj; tm += 2) mx = std::max(mx, -c * 0.25 * tm * tm);
            for (int tm = -tj; tm <= tj; tm += 2) s += std::exp(-c * 0.25 * tm * tm - mx);
            lw += mx + std::log(s);
        }
        terms[i].log_weight = lw;
        top = std::max(top, lw);
    }
    if (!std::isfinite(top)) throw NumericError("partition function is not finite");

    // |<exp(t Sigma1)>| inside any block is at most exp(|Re t| * n S)
    const double growth = std::abs(t.real()) * 0.5 * p.n * p.spin.two_s;
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < nj; ++i) {
        const double rel = terms[i].log_weight - top;
        const double w = std::exp(rel);
        den += w;
        if (rel + growth < -745.0) continue;
        const int tj = degs.two_j[i];
        Complex avg = isotropic ? isotropic_block_average(tj, t) : anisotropic_block(tj, c, t).average;
        num += w * avg;
    }
    Complex value = num / den;
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw NumericError("Gibbs expectation overflowed");
    return {value, p};
}

}  // namespace qloops::spectra
