#include "qloops/symfunc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <Eigen/Dense>

namespace qloops::symfunc {

namespace {

void partitions_rec(int remaining, int max_part, int slots, std::vector<int>& cur, std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (slots == 0) return;
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        // the rest must fit into the remaining slots
        if (static_cast<long long>(p) * slots < remaining) break;
        cur.push_back(p);
        partitions_rec(remaining - p, p, slots - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions(int n, int max_length) {
    if (n < 0) throw DomainError("partitions of a negative integer");
    std::vector<Partition> out;
    std::vector<int> cur;
    const int slots = max_length < 0 ? n : max_length;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    partitions_rec(n, n, slots, cur, out);
    return out;
}

Complex schur_eval(const Partition& lambda, std::span<const Complex> x) {
    const int r = static_cast<int>(x.size());
    if (lambda.length() > r) throw DomainError("Schur function needs l(lambda) <= number of variables");
    if (r == 0) return 1.0;

    // Divided differences of the bialternant columns:
    // s_lambda = (-1)^{C(r,2)} det[H_{a_j - i}(x_0..x_i)], a_j = lambda_j + r - 1 - j (0-based).
    // Exact for any arguments and free of the 0/0 of the bialternant at close ones.
    const int top = lambda[0] + r;
    std::vector<std::vector<Complex>> hh(r, std::vector<Complex>(top + 1));
    for (int i = 0; i < r; ++i)
        for (int d = 0; d <= top; ++d) {
            const Complex prev = i > 0 ? hh[i - 1][d] : (d == 0 ? 1.0 : 0.0);
            hh[i][d] = prev + (d > 0 ? x[i] * hh[i][d - 1] : 0.0);
        }
    Eigen::MatrixXcd m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const int d = lambda[j] + r - 1 - j - i;
            m(i, j) = d >= 0 ? hh[i][d] : 0.0;
        }
    Complex out = m.partialPivLu().determinant();
    if ((r * (r - 1) / 2) % 2) out = -out;
    return out;
}

BigInt schur_at_ones(const Partition& lambda, int r) {
    if (lambda.length() > r) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            num *= (lambda[i] - i - lambda[j] + j);
            den *= (j - i);
        }
    return num / den;
}

Complex power_sum_eval(const Partition& mu, std::span<const Complex> x) {
    Complex out = 1.0;
    for (int part : mu.parts()) {
        Complex s = 0.0;
        for (auto v : x) s += std::pow(v, part);
        out *= s;
    }
    return out;
}

namespace {

using BetaSet = std::vector<int>;  // increasing bead positions

class MnSolver {
public:
    explicit MnSolver(const Partition& mu) : mu_(mu.parts()) {}

    BigInt solve(const BetaSet& beads, std::size_t step) {
        if (step == mu_.size()) return 1;  // all beads packed at the bottom by size counting
        auto key = std::make_pair(beads, step);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        const int k = mu_[step];
        BigInt total = 0;
        for (std::size_t b = 0; b < beads.size(); ++b) {
            const int target = beads[b] - k;
            if (target < 0 || std::binary_search(beads.begin(), beads.end(), target)) continue;
            // beads strictly between target and beads[b] give the leg length
            const auto lo = std::upper_bound(beads.begin(), beads.end(), target);
            const int between = static_cast<int>((beads.begin() + static_cast<std::ptrdiff_t>(b)) - lo);
            BetaSet next = beads;
            next[b] = target;
            std::sort(next.begin(), next.end());
            BigInt sub = solve(next, step + 1);
            if (between % 2) total -= sub; else total += sub;
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

private:
    std::vector<int> mu_;
    std::map<std::pair<BetaSet, std::size_t>, BigInt> memo_;
};

}  // namespace

CharacterValue character(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) throw DomainError("character needs partitions of the same integer");
    const int len = lambda.length();
    BetaSet beads(static_cast<std::size_t>(len));
    for (int j = 0; j < len; ++j) beads[static_cast<std::size_t>(len - 1 - j)] = lambda[j] + len - 1 - j;
    MnSolver solver(mu);
    return {lambda, mu, solver.solve(beads, 0)};
}

BigInt dimension(const Partition& lambda) {
    const Partition conj = lambda.conjugate();
    BigInt num = 1;
    for (int k = 2; k <= lambda.size(); ++k) num *= k;
    BigInt hooks = 1;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda[i]; ++j) hooks *= (lambda[i] - j) + (conj[j] - i) - 1;
    return num / hooks;
}

namespace {

std::int64_t content_sum(const Partition& lambda) {
    std::int64_t c = 0;
    for (int i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda[i]; ++j) c += j - i;
    return c;
}

}  // namespace

boost::rational<std::int64_t> transposition_ratio(const Partition& lambda) {
    const std::int64_t n = lambda.size();
    if (n < 2) throw DomainError("transposition ratio needs n >= 2");
    return {content_sum(lambda), n * (n - 1) / 2};
}

Complex interchange_expectation_exact(int n, double beta, const pd::FieldVector& h) {
    if (n < 2) throw DomainError("interchange expectation needs n >= 2");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and nonnegative");
    const int theta = h.theta();
    std::vector<Complex> x(static_cast<std::size_t>(theta));
    for (int i = 0; i < theta; ++i) x[static_cast<std::size_t>(i)] = std::exp(h[i] / double(n));

    const double lam = 0.5 * beta * (n - 1);
    const double pairs = 0.5 * n * (n - 1.0);
    const auto parts = partitions(n, theta);
    std::vector<double> logw(parts.size());
    std::vector<Complex> ratio(parts.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const auto& lambda = parts[k];
        const BigInt ones = schur_at_ones(lambda, theta);
        const double r = static_cast<double>(content_sum(lambda)) / pairs;
        logw[k] = log_bigint(dimension(lambda)) + lam * (r - 1.0) + log_bigint(ones);
        ratio[k] = schur_eval(lambda, x) / ones.convert_to<double>();
        top = std::max(top, logw[k]);
    }
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        const double w = std::exp(logw[k] - top);
        num += w * ratio[k];
        den += w;
    }
    return num / den;
}

SchurRatioReport schur_ratio_limit_check(std::span<const Partition> sequence, const pd::FieldVector& h,
                                         std::span<const double> x) {
    const int theta = h.theta();
    if (static_cast<int>(x.size()) != theta) throw DomainError("limit point must have theta entries");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i > 0 && x[i] > x[i - 1] + 1e-12) throw DomainError("limit point must be weakly decreasing");
        sum += x[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("limit point must sum to 1");

    SchurRatioReport rep;
    rep.target = pd::r_function(h, x);
    for (const auto& lambda : sequence) {
        const int n = lambda.size();
        if (n == 0) throw DomainError("empty partition in sequence");
        std::vector<Complex> args(static_cast<std::size_t>(theta));
        for (int i = 0; i < theta; ++i) args[static_cast<std::size_t>(i)] = std::exp(h[i] / double(n));
        SchurRatioPoint pt;
        pt.n = n;
        pt.lambda = lambda;
        pt.ratio = schur_eval(lambda, args) / schur_at_ones(lambda, theta).convert_to<double>();
        pt.distance = std::abs(pt.ratio - rep.target);
        rep.points.push_back(std::move(pt));
    }
    return rep;
}

}  // namespace qloops::symfunc
