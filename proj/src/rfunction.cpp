#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include <Eigen/Dense>

#include "qloops/pd.hpp"

namespace qloops::pd {

namespace {

// Index of the single entry separated from an otherwise coincident cluster, or -1.
int odd_one_out(std::span<const double> v) {
    const int k = static_cast<int>(v.size());
    if (k < 3) return -1;
    for (int cand = 0; cand < k; ++cand) {
        double lo = 1e300, hi = -1e300;
        for (int j = 0; j < k; ++j)
            if (j != cand) {
                lo = std::min(lo, v[j]);
                hi = std::max(hi, v[j]);
            }
        if (hi - lo < kConfluenceThreshold) {
            const double mid = 0.5 * (lo + hi);
            return std::abs(v[cand] - mid) >= kConfluenceThreshold ? cand : -1;
        }
    }
    return -1;
}

int odd_one_out(std::span<const Complex> v) {
    const int k = static_cast<int>(v.size());
    if (k < 3) return -1;
    for (int cand = 0; cand < k; ++cand) {
        const int ref = cand == 0 ? 1 : 0;
        bool tight = true;
        for (int j = 0; j < k && tight; ++j)
            if (j != cand && std::abs(v[j] - v[ref]) >= kConfluenceThreshold) tight = false;
        if (tight) return std::abs(v[cand] - v[ref]) >= kConfluenceThreshold ? cand : -1;
    }
    return -1;
}

template <class T>
bool has_coincidence(std::span<const T> v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (std::abs(v[i] - v[j]) < kConfluenceThreshold) return true;
    return false;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// x = (x1, y, ..., y), h distinct:
// e^{y sum h} (theta-1)! (y-x1)^{-(theta-1)} det[e^{h_i z}, 1, h_i, ..., h_i^{theta-2}] / prod_{i<j} (h_j - h_i)
Complex r_two_level_x(std::span<const Complex> h, double x1, double y) {
    const int k = static_cast<int>(h.size());
    const double z = x1 - y;
    Eigen::MatrixXcd m(k, k);
    for (int i = 0; i < k; ++i) {
        m(i, 0) = std::exp(h[i] * z);
        Complex p = 1.0;
        for (int j = 1; j < k; ++j) {
            m(i, j) = p;
            p *= h[i];
        }
    }
    Complex out = m.partialPivLu().determinant();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) out /= (h[j] - h[i]);
    Complex hs = 0.0;
    for (auto v : h) hs += v;
    return out * std::exp(y * hs) * factorial(k - 1) * std::pow(-z, -(k - 1));
}

// h = (c + a, c, ..., c), x = (x1, y, ..., y):
// e^{c sum x} e^{a y} (theta-1)! / (a z)^{theta-1} sum_{j >= theta-1} (a z)^j / j!
Complex r_rank_one(Complex a, Complex c, int k, double x1, double y) {
    const double z = x1 - y;
    const Complex w = a * z;
    // (theta-1)! w^{-(theta-1)} sum_{j>=theta-1} w^j/j! = sum_{m>=0} w^m (theta-1)!/(m+theta-1)!
    Complex sum = 0.0, term = 1.0;
    const int cap = 500 + static_cast<int>(4.0 * std::abs(w));
    for (int m = 0; m < cap; ++m) {
        sum += term;
        term *= w / double(m + k);
        if (std::abs(term) < 1e-17 * std::abs(sum) && double(m) > std::abs(w)) break;
    }
    const double sx = x1 + (k - 1) * y;
    return std::exp(c * sx + a * y) * sum;
}

// Evaluation through the Newton (divided-difference) basis, valid for any arguments:
// R = prod_{i<j} (j-i) det T,  T_ij = sum_k H_{k-i+1}(h_1..h_i) H_{k-j+1}(x_1..x_j) / k!
// with H_d the complete homogeneous symmetric polynomials. Empty when the Taylor series
// would need more than 170 terms.
std::optional<Complex> r_confluent(std::span<const Complex> h_in, std::span<const double> x_in) {
    const int k = static_cast<int>(h_in.size());
    Complex ch = 0.0;
    for (auto v : h_in) ch += v;
    ch /= double(k);
    double cx = std::accumulate(x_in.begin(), x_in.end(), 0.0) / k;
    std::vector<Complex> h(h_in.begin(), h_in.end());
    std::vector<double> x(x_in.begin(), x_in.end());
    for (auto& v : h) v -= ch;
    for (auto& v : x) v -= cx;
    const double sx = std::accumulate(x_in.begin(), x_in.end(), 0.0);

    double amax = 0.0, bmax = 0.0;
    for (auto v : h) amax = std::max(amax, std::abs(v));
    for (auto v : x) bmax = std::max(bmax, std::abs(v));
    const double need = 2.0 * k + 30.0 + std::ceil(4.0 * k * amax * bmax);
    if (need > 170.0) return std::nullopt;
    const int order = static_cast<int>(need);

    // hh[m][d] = H_d(h_1..h_{m+1})
    std::vector<std::vector<Complex>> hh(k, std::vector<Complex>(order + 1));
    std::vector<std::vector<double>> hx(k, std::vector<double>(order + 1));
    for (int m = 0; m < k; ++m)
        for (int d = 0; d <= order; ++d) {
            const Complex prev_h = m > 0 ? hh[m - 1][d] : (d == 0 ? 1.0 : 0.0);
            const double prev_x = m > 0 ? hx[m - 1][d] : (d == 0 ? 1.0 : 0.0);
            hh[m][d] = prev_h + (d > 0 ? h[m] * hh[m][d - 1] : 0.0);
            hx[m][d] = prev_x + (d > 0 ? x[m] * hx[m][d - 1] : 0.0);
        }

    std::vector<double> inv_fact(order + 1);
    inv_fact[0] = 1.0;
    for (int d = 1; d <= order; ++d) inv_fact[d] = inv_fact[d - 1] / d;

    Eigen::MatrixXcd t(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Complex acc = 0.0;
            for (int kk = std::max(i, j); kk <= order; ++kk)
                acc += hh[i][kk - i] * hx[j][kk - j] * inv_fact[kk];
            t(i, j) = acc;
        }
    Complex out = t.partialPivLu().determinant();
    for (int m = 1; m < k; ++m) out *= factorial(m);
    return out * std::exp(ch * sx);
}

}  // namespace

Complex r_function(const FieldVector& hv, std::span<const double> x) {
    const int k = hv.theta();
    if (static_cast<int>(x.size()) != k || k == 0) throw DomainError("r_function needs theta values of h and of x");
    const auto h = hv.values();
    for (double v : x)
        if (!std::isfinite(v)) throw DomainError("r_function needs finite x");

    const bool hc = has_coincidence(h);
    const bool xc = has_coincidence(x);
    if (!hc && !xc) {
        // the raw determinant cancels badly whenever two arguments are merely close
        if (auto v = r_confluent(h, x)) return *v;
        return r_function_generic<Complex>(h, std::vector<Complex>(x.begin(), x.end()));
    }

    const int xo = odd_one_out(x);
    if (xo >= 0) {
        double y = 0.0;
        for (int j = 0; j < k; ++j)
            if (j != xo) y += x[j];
        y /= (k - 1);
        if (!hc) return r_two_level_x(h, x[xo], y);
        const int ho = odd_one_out(h);
        if (ho >= 0) {
            Complex c = 0.0;
            for (int j = 0; j < k; ++j)
                if (j != ho) c += h[j];
            c /= double(k - 1);
            return r_rank_one(h[ho] - c, c, k, x[xo], y);
        }
    }
    if (auto v = r_confluent(h, x)) return *v;
    throw NumericError("confluent R-function arguments are too spread out for the Taylor evaluation");
}

}  // namespace qloops::pd
