// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qloops/asymptotics.hpp"
#include "qloops/dense.hpp"
#include "qloops/loops.hpp"
#include "qloops/pd.hpp"
#include "qloops/rng.hpp"
#include "qloops/spectra.hpp"
#include "qloops/stats.hpp"
#include "qloops/symfunc.hpp"

using namespace qloops;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;
using Q = boost::rational<BigInt>;

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Least-squares slope of log y against log t.
double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(pts.size());
    for (auto [t, y] : pts) {
        const double lx = std::log(t), ly = std::log(std::abs(y));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

stats::MeanEstimate pooled(const std::vector<loops::McmcResult>& runs,
                           const std::function<double(const loops::LoopSpectrum&)>& obs) {
    std::vector<stats::MeanEstimate> parts;
    for (const auto& r : runs) {
        std::vector<double> v;
        v.reserve(r.samples.size());
        for (const auto& s : r.samples) v.push_back(obs(s));
        parts.push_back(stats::batch_means(v));
    }
    return stats::pool(parts);
}

// ---- 1
Outcome multiplicities() {
    Outcome o;
    int checked = 0;
    for (int two_s : {1, 2, 3})
        for (int n = 1; n <= 20; ++n) {
            const Spin spin{two_s};
            const BigInt total = boost::multiprecision::pow(BigInt(two_s + 1), static_cast<unsigned>(n));
            const auto table = spectra::multiplicity_table(n, spin);
            BigInt sum_m = 0, sum_j = 0;
            for (int two_m = -n * two_s; two_m <= n * two_s; two_m += 2) sum_m += table.count(two_m);
            for (int two_j = (n * two_s) % 2; two_j <= n * two_s; two_j += 2)
                sum_j += BigInt(two_j + 1) * BigInt(table.count(two_j) - table.count(two_j + 2));
            o.ok = o.ok && sum_m == total && sum_j == total;
            ++checked;
            if (n <= 7) {
                // brute-force count of product states by 2M
                std::vector<long> brute(static_cast<std::size_t>(n * two_s + 1), 0);
                std::vector<int> digits(static_cast<std::size_t>(n), 0);
                for (;;) {
                    int k = 0;
                    for (int d : digits) k += d;
                    ++brute[static_cast<std::size_t>(k)];
                    int i = 0;
                    while (i < n && ++digits[static_cast<std::size_t>(i)] > two_s) digits[static_cast<std::size_t>(i++)] = 0;
                    if (i == n) break;
                }
                for (int k = 0; k <= n * two_s; ++k)
                    o.ok = o.ok && table.count(2 * k - n * two_s) == BigInt(brute[static_cast<std::size_t>(k)]);
            }
        }
    o.detail = std::to_string(checked) + " (n, S) pairs, both sums equal (2S+1)^n";
    return o;
}

// ---- 2
Outcome oracle_equivalence() {
    Outcome o;
    double worst = 0.0;
    for (int two_s : {1, 2})
        for (int n = 2; n <= 6; ++n)
            for (double delta : {1.0, 0.0, -1.0}) {
                const spectra::DenseHeisenberg dense(n, Spin{two_s}, delta);
                for (double beta : {0.5, 2.0, 4.0})
                    for (double h : {0.0, 1.0, 2.0}) {
                        const double exact =
                            spectra::heisenberg_expectation_exact({n, Spin{two_s}, beta, delta, {h, 0.0}}).value.real();
                        const double want = dense.generating_function(beta, h).real();
                        worst = std::max(worst, rel(exact, want));
                    }
            }
    o.ok = worst <= 1e-9;
    o.detail = fmt("max relative deviation %.3g over 270 points (tol 1e-9)", worst);
    return o;
}

// ---- 3
Outcome heisenberg_convergence() {
    Outcome o;
    const asymptotics::SpinContext ctx(Spin{1});
    const double beta = 2.2, h = 1.0;
    const auto m = asymptotics::m_star(beta, ctx);
    const double residual = std::abs(2 * beta * m.location - asymptotics::x_star(m.location, ctx));
    const double limit = std::sinh(h * m.location) / (h * m.location);
    double prev = 1e9, gap = 0.0;
    bool decreasing = true;
    for (int n : {128, 256, 512, 1024, 2048}) {
        gap = std::abs(spectra::heisenberg_expectation_exact({n, Spin{1}, beta, 1.0, {h, 0.0}}).value.real() - limit);
        decreasing = decreasing && gap < prev;
        prev = gap;
    }
    o.ok = decreasing && gap < 0.02 && residual < 1e-9;
    o.detail = fmt("gap(2048) = %.4g (tol 0.02), stationarity residual %.2g (tol 1e-9)", gap, residual) +
               (decreasing ? ", gaps decreasing" : ", gaps NOT decreasing");
    return o;
}

// ---- 4
Outcome xy_convergence() {
    Outcome o;
    const asymptotics::SpinContext ctx(Spin{1});
    const double beta = 3.0, h = 1.0;
    const double ms = asymptotics::m_star(beta, ctx).location;
    const double limit = boost::math::cyl_bessel_i(0, h * ms);
    double prev = 1e9, gap = 0.0;
    bool decreasing = true;
    for (int n : {64, 128, 256, 512}) {
        gap = std::abs(spectra::heisenberg_expectation_exact({n, Spin{1}, beta, 0.0, {h, 0.0}}).value.real() - limit);
        decreasing = decreasing && gap < prev;
        prev = gap;
    }
    o.ok = decreasing && gap < 0.05;
    o.detail = fmt("gap(512) = %.4g (tol 0.05) over n = 64..512", gap) + (decreasing ? ", decreasing" : ", NOT decreasing");
    return o;
}

// ---- 5
Outcome saddle_point() {
    Outcome o;
    const asymptotics::SpinContext ctx(Spin{1});
    double prev = 1e9, err = 0.0;
    bool decreasing = true;
    for (int n : {100, 200, 400}) {
        const auto table = spectra::multiplicity_table(n, Spin{1});
        const int two_m = 2 * static_cast<int>(std::floor(0.2 * n));
        const BigInt d = table.count(two_m) - table.count(two_m + 2);
        err = std::abs(std::exp(log_bigint(d) - asymptotics::saddle_multiplicity(n, 0.2, ctx)) - 1.0);
        decreasing = decreasing && err < prev;
        prev = err;
    }
    o.ok = decreasing && err < 0.03;
    o.detail = fmt("|exact/asymptotic - 1| = %.4g at n = 400 (tol 0.03)", err) + (decreasing ? ", decreasing" : ", NOT decreasing");
    return o;
}

// ---- 6
Outcome exponents() {
    Outcome o;
    std::string d;
    for (int two_s : {1, 2}) {
        const asymptotics::SpinContext ctx(Spin{two_s});
        const double bc = ctx.beta_c();
        std::vector<std::pair<double, double>> mag, chi, chi_fd, crit, trans;
        for (double e : {1e-2, 1e-3, 1e-4, 1e-5}) {
            mag.emplace_back(e, asymptotics::m_star(bc + e, ctx).location);
            chi.emplace_back(e, asymptotics::susceptibility(bc - e, ctx));
            // the linear-response window closes like e^{3/2}
            const double dh = 1e-4 * std::pow(e, 1.5);
            chi_fd.emplace_back(e, asymptotics::magnetization(bc - e, dh, ctx) / dh);
        }
        for (double h : {1e-3, 1e-4, 1e-5, 1e-6}) {
            const double m = asymptotics::magnetization(bc, h, ctx);
            crit.emplace_back(h, m);
            trans.emplace_back(h, m / h);
        }
        const double a = loglog_slope(mag), b = loglog_slope(chi), bf = loglog_slope(chi_fd), c = loglog_slope(crit),
                     t = loglog_slope(trans);
        o.ok = o.ok && std::abs(a - 0.5) <= 0.05 && std::abs(b + 1.0) <= 0.05 && std::abs(bf + 1.0) <= 0.05 &&
               std::abs(c - 1.0 / 3) <= 0.05 && std::abs(t + 2.0 / 3) <= 0.07;
        d += (two_s == 1 ? "S=1/2: " : "; S=1: ");
        d += fmt("%.4f, %.4f", a, b) + fmt(" (fd %.4f), ", bf) + fmt("%.4f, %.4f", c, t);
    }
    o.detail = d + "; targets 1/2, -1, 1/3, -2/3";
    return o;
}

// ---- 7
Outcome pd_identities() {
    Outcome o;
    double worst_series = 0.0, worst_z = 0.0;
    for (double h : {0.5, 1.0, 2.0, 5.0}) {
        worst_series = std::max(worst_series, rel(pd::pd_cosh_series(2.0, h).real(), std::sinh(h) / h));
        worst_series = std::max(worst_series, rel(pd::pd_cosh_series(1.0, h).real(), boost::math::cyl_bessel_i(0, h)));
    }
    Rng rng(2024);
    for (double theta : {1.0, 2.0}) {
        std::vector<pd::PDSample> draws;
        draws.reserve(100000);
        for (int s = 0; s < 100000; ++s) draws.push_back(pd::stick_breaking_sample(theta, rng));
        for (double h : {0.5, 1.0, 2.0, 5.0}) {
            std::vector<double> v;
            v.reserve(draws.size());
            for (const auto& p : draws) {
                double prod = 1.0;
                for (double x : p.parts) prod *= std::cosh(h * x);
                v.push_back(prod);
            }
            const auto est = stats::iid_mean(v);
            worst_z = std::max(worst_z, std::abs(est.mean - pd::pd_cosh_series(theta, h).real()) / est.std_error);
        }
    }
    int cases = 0;
    for (int theta : {2, 3})
        for (double z : {0.3, 0.7}) {
            std::vector<pd::FieldVector> grid;
            for (double s : {0.5, 1.0, 2.0}) {
                grid.push_back(pd::FieldVector::spin(Spin{theta - 1}, s));
                std::vector<double> one(static_cast<std::size_t>(theta), 0.0);
                one[0] = s;
                grid.push_back(pd::FieldVector::real(one));
            }
            for (const auto& h : grid) {
                const auto est = pd::pd_q_expectation_mc(theta, h, z, 100000, rng);
                const double closed = pd::pd_q_expectation_closed(h, z).real();
                worst_z = std::max(worst_z, std::abs(est.mean - closed) / est.std_error);
                ++cases;
            }
        }
    o.ok = worst_series <= 1e-10 && worst_z < 3.0;
    o.detail = fmt("series max rel err %.2g (tol 1e-10); max |z| %.3f over %.0f MC comparisons (tol 3)", worst_series,
                   worst_z, 8 + cases);
    return o;
}

// ---- 8
Big generic_at(const std::vector<double>& h, const std::vector<double>& x, Big eps) {
    std::vector<Big> hb, xb;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double di = static_cast<double>(i);
        hb.push_back(Big(h[i]) + eps * (0.37 * di - 0.11 * di * di));
        xb.push_back(Big(x[i]) + eps * (0.23 * di * di - 0.5 * di));
    }
    return pd::r_function_generic<Big>(hb, xb);
}

double perturbed_oracle(const std::vector<double>& h, const std::vector<double>& x) {
    const Big eps(1e-4);
    auto sym = [&](Big e) { return (generic_at(h, x, e) + generic_at(h, x, -e)) / 2; };
    const Big a = sym(eps), b = sym(eps / 2);
    return static_cast<double>((4 * b - a) / 3);
}

Outcome r_function_forms() {
    Outcome o;
    double worst = 0.0;
    int cases = 0;
    for (int two_s : {2, 3}) {
        const int k = two_s + 1;
        for (double z : {0.2, 0.5, 0.8}) {
            const double y = (1.0 - z) / k, x1 = y + z;
            std::vector<double> x(static_cast<std::size_t>(k), y);
            x[0] = x1;
            for (double s : {0.5, 1.0, 2.5}) {
                // spin field: [sinh(s z/2)/(s z/2)]^{2S}
                const auto hv = pd::FieldVector::spin(Spin{two_s}, s);
                std::vector<double> hs;
                for (auto v : hv.values()) hs.push_back(v.real());
                const double arg = 0.5 * s * z;
                const double product = std::pow(std::sinh(arg) / arg, two_s);
                const double oracle = perturbed_oracle(hs, x);
                worst = std::max({worst, rel(product, oracle), rel(pd::r_function(hv, x).real(), oracle)});

                // one nonzero field: e^{s y} (k-1)!/(s z)^{k-1} sum_{j >= k-1} (s z)^j / j!
                std::vector<double> h1(static_cast<std::size_t>(k), 0.0);
                h1[0] = s;
                const double w = s * z;
                double tail = 0.0, term = std::pow(w, k - 1) / boost::math::factorial<double>(static_cast<unsigned>(k - 1));
                for (int j = k - 1; j < k + 60; ++j) {
                    tail += term;
                    term *= w / (j + 1);
                }
                const double dk = std::exp(s * y) * boost::math::factorial<double>(static_cast<unsigned>(k - 1)) /
                                  std::pow(w, k - 1) * tail;
                const double oracle1 = perturbed_oracle(h1, x);
                worst = std::max({worst, rel(dk, oracle1), rel(pd::r_function(pd::FieldVector::real(h1), x).real(), oracle1)});
                cases += 2;
            }
        }
    }
    o.ok = worst <= 1e-10;
    o.detail = fmt("max relative deviation %.2g over %.0f points (tol 1e-10)", worst, cases);
    return o;
}

// ---- 9
Outcome characters() {
    Outcome o;
    Rng rng(8);
    int identities = 0;
    for (int r = 1; r <= 4; ++r)
        for (int n = 1; n <= 6; ++n) {
            std::vector<Q> x;
            while (static_cast<int>(x.size()) < r) {
                const Q v(BigInt(static_cast<long>(rng.index(19)) - 9), BigInt(static_cast<long>(rng.index(5)) + 1));
                if (std::find(x.begin(), x.end(), v) == x.end()) x.push_back(v);
            }
            for (const auto& mu : symfunc::partitions(n)) {
                Q rhs(0);
                for (const auto& lam : symfunc::partitions(n, r))
                    rhs += Q(symfunc::character(lam, mu).value) * symfunc::schur_bialternant<Q>(lam, x);
                o.ok = o.ok && symfunc::power_sum_exact<Q>(mu, x) == rhs;
                ++identities;
            }
        }
    for (int n = 1; n <= 7; ++n) {
        BigInt sum = 0, fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        for (const auto& lam : symfunc::partitions(n)) {
            const BigInt d = symfunc::dimension(lam);
            sum += d * d;
        }
        o.ok = o.ok && sum == fact;
    }
    int ratios = 0;
    for (int n = 2; n <= 8; ++n) {
        Partition tr;
        {
            std::vector<int> parts{2};
            for (int i = 2; i < n; ++i) parts.push_back(1);
            tr = Partition(parts);
        }
        for (const auto& lam : symfunc::partitions(n)) {
            const auto r = symfunc::transposition_ratio(lam);
            const BigInt chi = symfunc::character(lam, tr).value, d = symfunc::dimension(lam);
            const BigInt lhs = BigInt(r.numerator()) * d, rhs = chi * BigInt(r.denominator());
            // also against the content sum directly
            long contents = 0;
            for (int i = 0; i < lam.length(); ++i)
                for (int j = 0; j < lam[i]; ++j) contents += j - i;
            const boost::rational<std::int64_t> by_content(contents, static_cast<std::int64_t>(n) * (n - 1) / 2);
            o.ok = o.ok && lhs == rhs && r == by_content;
            ++ratios;
        }
    }
    o.detail = std::to_string(identities) + " power-Schur identities, sum d^2 = n! for n <= 7, " + std::to_string(ratios) +
               " transposition ratios";
    return o;
}

// ---- 10
Outcome interchange_cross_engine() {
    Outcome o;
    double worst = 0.0;
    const std::vector<double> half{0.5, -0.5};
    for (double beta : {1.0, 2.0, 4.0}) {
        const double ic = symfunc::interchange_expectation_exact(4, beta, pd::FieldVector::real(half)).real();
        const double hb = spectra::heisenberg_expectation_exact({4, Spin{1}, beta, 1.0, {1.0, 0.0}}).value.real();
        worst = std::max(worst, rel(ic, hb));
    }
    double worst_z = 0.0;
    loops::McmcOptions opt;
    opt.sweeps = 200000;
    std::uint64_t seed = 501;
    for (int theta : {2, 3})
        for (int n : {4, 6}) {
            const std::vector<double> h = theta == 2 ? std::vector<double>{1.0, -0.3} : std::vector<double>{1.0, 0.2, -0.4};
            const auto hv = pd::FieldVector::real(h);
            opt.theta = theta;
            const double beta = 1.5;
            auto runs = loops::run_chains({n, Spin{1}, beta, 1.0}, opt, 2, seed++);
            const auto est = pooled(runs, [&](const loops::LoopSpectrum& s) { return loops::observable_q(s, hv, n).real(); });
            const double exact = symfunc::interchange_expectation_exact(n, beta, hv).real();
            worst_z = std::max(worst_z, std::abs(est.mean - exact) / est.std_error);
        }
    o.ok = worst <= 1e-9 && worst_z < 3.0;
    o.detail = fmt("exact vs Heisenberg max rel dev %.2g (tol 1e-9); MC max |z| %.3f over 4 runs of 2 x 2e5 sweeps", worst,
                   worst_z);
    return o;
}

// ---- 11
Outcome loops_vs_quantum() {
    Outcome o;
    loops::McmcOptions opt;
    opt.theta = 2.0;
    opt.sweeps = 200000;
    std::string d;
    for (double u : {1.0, 0.5}) {
        auto runs = loops::run_chains({4, Spin{1}, 2.0, u}, opt, 2, u == 1.0 ? 11 : 12);
        const auto est = pooled(runs, [](const loops::LoopSpectrum& s) { return loops::observable_cosh_spin(s, 1.0, 4); });
        const double exact = spectra::heisenberg_expectation_exact({4, Spin{1}, 2.0, 2 * u - 1, {1.0, 0.0}}).value.real();
        const double z = std::abs(est.mean - exact) / est.std_error;
        o.ok = o.ok && z < 3.0;
        d += fmt("u=%.1f: MC %.6f, exact %.6f", u, est.mean, exact) + fmt(", |z| %.3f; ", z);
    }
    o.detail = d + "tol 3 SE";
    return o;
}

// ---- 12
Outcome ewens_to_pd() {
    Outcome o;
    Rng rng(77);
    std::vector<double> ewens, pdl;
    for (int s = 0; s < 10000; ++s) ewens.push_back(pd::ewens_sample(2000, 2.0, rng).cycle_type[0] / 2000.0);
    for (int s = 0; s < 10000; ++s) pdl.push_back(pd::stick_breaking_sample(2.0, rng).parts.front());
    const auto ks = stats::ks_two_sample(ewens, pdl);
    o.ok = ks.p_value > 0.01;
    o.detail = fmt("KS statistic %.4f, p-value %.3f (alpha 0.01)", ks.statistic, ks.p_value);
    return o;
}

// ---- 13
double phi_sorted(std::vector<double> x, double beta) {
    std::sort(x.begin(), x.end(), std::greater<>());
    return asymptotics::phi_beta(x, beta);
}

Outcome simplex_uniqueness() {
    Outcome o;
    const asymptotics::SpinContext ctx(Spin{2});
    double worst = 0.0, overshoot = -1e300;
    std::string d;
    for (double beta : {2.0, 3.0, 4.0}) {
        const auto fam = asymptotics::interchange_maximizer(beta, ctx);
        const double y = (1.0 - fam.location) / 2;
        const double family = phi_sorted({fam.location, y, y}, beta);

        const int k = 200;
        double grid = -1e300;
        int best_a = 0, best_b = 0;
        for (int a = 0; a <= k; ++a)
            for (int b = 0; b <= k - a; ++b) {
                const double v = phi_sorted({a / 200.0, b / 200.0, (k - a - b) / 200.0}, beta);
                if (v > grid) {
                    grid = v;
                    best_a = a;
                    best_b = b;
                }
            }
        overshoot = std::max(overshoot, grid - family);

        // polish the grid maximiser over the whole simplex, off the family as well
        const double a0 = best_a / 200.0, b0 = best_b / 200.0;
        auto inner = [&](double x1) {
            auto r = boost::math::tools::brent_find_minima(
                [&](double x2) { return -phi_sorted({x1, x2, 1.0 - x1 - x2}, beta); }, std::max(0.0, b0 - 0.01),
                std::min(1.0 - x1, b0 + 0.01), 40);
            return r;
        };
        auto outer = boost::math::tools::brent_find_minima([&](double x1) { return inner(x1).second; },
                                                           std::max(0.0, a0 - 0.01), std::min(1.0, a0 + 0.01), 40);
        const double refined = -outer.second;
        worst = std::max(worst, std::abs(refined - family));
        d += fmt("beta=%.0f: grid-seeded max %.10f, family %.10f; ", beta, refined, family);
    }
    o.ok = worst <= 1e-6 && overshoot <= 1e-6;
    o.detail = d + fmt("max |diff| %.2g (tol 1e-6); raw grid exceeds family by at most %.2g", worst, overshoot);
    return o;
}

// ---- 14
Outcome falk_bruch() {
    Outcome o;
    int cases = 0;
    double slack = 1e300;
    for (int n : {3, 4, 5})
        for (double beta : {0.5, 1.0, 2.0})
            for (double h : {0.1, 0.5, 1.0})
                for (double u : {0.0, 0.5}) {
                    const auto r = spectra::falk_bruch_check(n, Spin{1}, beta, h, u);
                    o.ok = o.ok && r.chi_perp > r.m_over_bh && r.m_over_bh > r.lower_bound && r.double_commutator > 0.0;
                    slack = std::min({slack, r.chi_perp - r.m_over_bh, r.m_over_bh - r.lower_bound});
                    ++cases;
                }
    o.detail = std::to_string(cases) + " points, smallest strict margin " + fmt("%.3g", slack);
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    Outcome (*run)();
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "multiplicity identities", 1, multiplicities},
        {2, "exact vs dense oracle", 30, oracle_equivalence},
        {3, "isotropic finite-size convergence", 120, heisenberg_convergence},
        {4, "XY finite-size convergence", 300, xy_convergence},
        {5, "saddle-point multiplicities", 10, saddle_point},
        {6, "critical exponents", 30, exponents},
        {7, "Poisson-Dirichlet identities", 120, pd_identities},
        {8, "R-function special forms", 5, r_function_forms},
        {9, "character machinery", 30, characters},
        {10, "interchange cross-engine", 600, interchange_cross_engine},
        {11, "loop Monte Carlo vs quantum oracle", 600, loops_vs_quantum},
        {12, "Ewens to Poisson-Dirichlet", 120, ewens_to_pd},
        {13, "simplex maximiser uniqueness", 60, simplex_uniqueness},
        {14, "Falk-Bruch chain", 60, falk_bruch},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = out.ok && secs < c.budget_s;
        failures += !ok;
        std::printf("%s [%2d] %s: %s (%.2f s, budget %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(), secs,
                    c.budget_s);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
