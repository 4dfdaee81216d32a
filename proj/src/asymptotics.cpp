#include "qloops/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include <boost/math/tools/roots.hpp>

namespace qloops::asymptotics {

namespace {

constexpr double kSeriesSwitch = 0.05;
constexpr int kGridPoints = 512;
constexpr double kTieTolerance = 1e-13;

// Helpers for log(sinh(a)/a) and its derivatives, stable at a = 0 and for large a.

double log_sinhc(double a) {
    a = std::abs(a);
    if (a < kSeriesSwitch) {
        const double a2 = a * a;
        return a2 * (1.0 / 6 + a2 * (-1.0 / 180 + a2 * (1.0 / 2835 - a2 / 37800)));
    }
    // log sinh a = a + log1p(-e^{-2a}) - log 2
    return a + std::log1p(-std::exp(-2.0 * a)) - std::numbers::ln2 - std::log(a);
}

// coth a - 1/a (the Langevin function)
double langevin(double a) {
    if (std::abs(a) < kSeriesSwitch) {
        const double a2 = a * a;
        return a * (1.0 / 3 + a2 * (-1.0 / 45 + a2 * (2.0 / 945 - a2 / 4725)));
    }
    return 1.0 / std::tanh(a) - 1.0 / a;
}

// 1/a^2 - 1/sinh^2 a
double langevin_prime(double a) {
    if (std::abs(a) < kSeriesSwitch) {
        const double a2 = a * a;
        return 1.0 / 3 + a2 * (-1.0 / 15 + a2 * (2.0 / 189 - a2 / 675));
    }
    const double sh = std::sinh(a);
    return 1.0 / (a * a) - (std::isinf(sh) ? 0.0 : 1.0 / (sh * sh));
}

// 1/sinh^2 a without overflow
double inv_sinh2(double a) {
    const double e = std::exp(-2.0 * std::abs(a));
    const double d = -std::expm1(-2.0 * std::abs(a));
    return 4.0 * e / (d * d);
}

// Increasing odd function f with f(+inf) = sup; solve f(x) = y for |y| < sup.
template <class F, class FPrime>
double invert_increasing(F f, FPrime fp, double y) {
    if (y == 0.0) return 0.0;
    const double sign = y < 0 ? -1.0 : 1.0;
    y = std::abs(y);
    double lo = 0.0, hi = 1.0;
    while (f(hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e15) throw NumericError("root bracket for inverse function escaped");
    }
    while (hi - lo > 1e-4 * (1.0 + hi)) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < y ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const double r = f(x) - y;
        const double d = fp(x);
        if (r < 0) lo = x; else hi = x;
        double next = (d > 0) ? x - r / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    return sign * x;
}

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

}  // namespace

double eta(double x, const SpinContext& ctx) {
    const double th = ctx.theta();
    x = std::abs(x);
    // log(sinh(th x/2)/sinh(x/2)) = log th + log sinhc(th x/2) - log sinhc(x/2)
    return std::log(th) + log_sinhc(0.5 * th * x) - log_sinhc(0.5 * x);
}

double eta_prime(double x, const SpinContext& ctx) {
    const double th = ctx.theta();
    if (std::abs(th * x) < 1.0) return 0.5 * th * langevin(0.5 * th * x) - 0.5 * langevin(0.5 * x);
    // the 1/x parts cancel
    return 0.5 * (th / std::tanh(0.5 * th * x) - 1.0 / std::tanh(0.5 * x));
}

double eta_second(double x, const SpinContext& ctx) {
    const double th = ctx.theta();
    if (std::abs(th * x) < 1.0)
        return 0.25 * th * th * langevin_prime(0.5 * th * x) - 0.25 * langevin_prime(0.5 * x);
    return 0.25 * (inv_sinh2(0.5 * x) - th * th * inv_sinh2(0.5 * th * x));
}

double x_star(double m, const SpinContext& ctx) {
    check_finite(m, "m");
    if (std::abs(m) >= ctx.s()) throw DomainError("x_star needs |m| < S");
    return invert_increasing([&](double x) { return eta_prime(x, ctx); },
                             [&](double x) { return eta_second(x, ctx); }, m);
}

double g_beta(double m, double beta, const SpinContext& ctx) {
    if (m == ctx.s()) return beta * m * m;  // limit of the entropy term is 0
    const double x = x_star(m, ctx);
    return eta(x, ctx) - m * x + beta * m * m;
}

double g_beta_prime(double m, double beta, const SpinContext& ctx) {
    return 2.0 * beta * m - x_star(m, ctx);
}

double g_beta_second(double m, double beta, const SpinContext& ctx) {
    return 2.0 * beta - 1.0 / eta_second(x_star(m, ctx), ctx);
}

MaximizerResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                const std::function<double(double)>& fprime) {
    if (!(hi > lo)) throw DomainError("empty maximisation interval");
    MaximizerResult r;
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<double> grid(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i) {
        grid[i] = lo + (hi - lo) * i / (kGridPoints - 1);
        const double v = f(grid[i]);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = grid[std::max(best - 1, 0)];
    double b = grid[std::min(best + 1, kGridPoints - 1)];

    // golden-section search on [a, b]
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    int it = 0;
    while (b - a > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b)) && it < 200) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
        ++it;
    }
    double x = 0.5 * (a + b);

    // sharpen with a bracketed root of f' around the golden-section estimate
    if (fprime) {
        const double w = std::max(1e-6, 4.0 * (hi - lo) / kGridPoints);
        // shrink each side until it lies strictly inside and has the right sign
        auto probe = [&](double dir, double& p, double& dp) {
            for (double step = w; step > 1e-300 && step > 1e-15 * std::abs(x); step *= 0.5) {
                p = x + dir * step;
                if (p <= lo || p >= hi) continue;
                dp = fprime(p);
                if (dir * dp < 0) return true;
            }
            return false;
        };
        double pa = x, pb = x, da = 0, db = 0;
        if (probe(-1.0, pa, da) && probe(1.0, pb, db)) {
            boost::uintmax_t max_iter = 200;
            auto tol = boost::math::tools::eps_tolerance<double>(52);
            auto root = boost::math::tools::toms748_solve(fprime, pa, pb, da, db, tol, max_iter);
            const double cand = 0.5 * (root.first + root.second);
            if (std::abs(fprime(cand)) <= std::abs(fprime(x))) x = cand;
            it += static_cast<int>(max_iter);
        }
    }
    double fx = f(x);
    // keep whichever endpoint beats the interior estimate
    if (f(lo) >= fx) {
        x = lo;
        fx = f(lo);
    }
    if (f(hi) > fx) {
        x = hi;
        fx = f(hi);
    }
    r.location = x;
    r.value = fx;
    r.iterations = it;
    r.converged = true;
    const double step = 1e-4 * std::max(1e-3, hi - lo);
    if (x - step >= lo && x + step <= hi)
        r.second_derivative = (f(x + step) - 2.0 * fx + f(x - step)) / (step * step);
    return r;
}

MaximizerResult maximize_g(double beta, double h, const SpinContext& ctx) {
    check_finite(beta, "beta");
    check_finite(h, "h");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    const double s = ctx.s();
    const double top = s * (1.0 - 1e-12);
    auto f = [&](double m) { return g_beta(m, beta, ctx) + h * m; };
    auto fp = [&](double m) { return g_beta_prime(m, beta, ctx) + h; };
    auto r = maximize_scalar(f, 0.0, top, fp);
    if (h > 0.0) {
        // f is too flat to resolve by value at small h; the maximiser is the root of f' in the positive well
        const double lo = beta <= ctx.beta_c() ? 0.0 : maximize_scalar(
            [&](double m) { return g_beta(m, beta, ctx); }, 0.0, top,
            [&](double m) { return g_beta_prime(m, beta, ctx); }).location;
        const double flo = fp(lo), ftop = fp(top);
        if (flo > 0.0 && ftop < 0.0) {
            std::uintmax_t max_iter = 200;
            auto tol = boost::math::tools::eps_tolerance<double>(52);
            auto root = boost::math::tools::toms748_solve(fp, lo, top, flo, ftop, tol, max_iter);
            const double cand = 0.5 * (root.first + root.second);
            if (std::abs(fp(cand)) <= std::abs(fp(r.location)) || f(cand) >= r.value) {
                r.location = cand;
                r.value = f(cand);
            }
        }
    }
    const double f0 = f(0.0);
    if (r.location != 0.0 && r.value - f0 < kTieTolerance && h <= 0.0) {
        r.location = 0.0;
        r.value = f0;
    }
    if (r.location >= top) r.clamped = true;
    r.second_derivative = g_beta_second(r.location, beta, ctx);
    return r;
}

MaximizerResult m_star(double beta, const SpinContext& ctx) { return maximize_g(beta, 0.0, ctx); }

double saddle_multiplicity(int n, double m, const SpinContext& ctx) {
    if (n < 1) throw DomainError("n must be positive");
    if (!(m > 0.0 && m < ctx.s()))
        throw DomainError("saddle-point asymptotics need 0 < m < S (the prefactor vanishes at m = 0)");
    const double x = x_star(m, ctx);
    const double pre = std::log(-std::expm1(-x)) - 0.5 * std::log(2.0 * std::numbers::pi * eta_second(x, ctx) * n);
    return pre + n * (eta(x, ctx) - m * x);
}

double pressure(double beta, double h, const SpinContext& ctx) {
    if (h < 0.0) throw DomainError("pressure is defined here for h >= 0");
    return maximize_g(beta, h, ctx).value;
}

double magnetization(double beta, double h, const SpinContext& ctx) {
    if (h < 0.0) return -magnetization(beta, -h, ctx);
    return maximize_g(beta, h, ctx).location;
}

double susceptibility(double beta, const SpinContext& ctx) {
    if (!(beta < ctx.beta_c())) throw DomainError("closed-form susceptibility needs beta < beta_c");
    return 1.0 / (2.0 * (ctx.beta_c() - beta));
}

ExponentFit fit_exponent(std::span<const std::pair<double, double>> samples) {
    if (samples.size() < 4) throw DomainError("exponent fit needs at least 4 points");
    std::vector<std::pair<double, double>> pts(samples.begin(), samples.end());
    for (auto [t, y] : pts)
        if (!(t > 0.0) || !(y > 0.0)) throw DomainError("exponent fit needs positive data");
    std::sort(pts.begin(), pts.end());
    pts.resize(4);

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (auto [t, y] : pts) {
        const double lx = std::log(t), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        syy += ly * ly;
    }
    const double k = static_cast<double>(pts.size());
    const double vx = sxx - sx * sx / k;
    const double vy = syy - sy * sy / k;
    const double cxy = sxy - sx * sy / k;
    if (vx <= 0.0) throw DomainError("exponent fit needs distinct parameter values");
    ExponentFit fit;
    fit.exponent = cxy / vx;
    fit.intercept = (sy - fit.exponent * sx) / k;
    fit.r_squared = vy <= 0.0 ? 1.0 : std::clamp(cxy * cxy / (vx * vy), 0.0, 1.0);
    fit.sample_points = std::move(pts);
    return fit;
}

double phi_beta(std::span<const double> x, double beta) {
    if (x.empty()) throw DomainError("phi_beta needs a nonempty vector");
    double sum = 0.0, sq = 0.0, ent = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0) throw DomainError("phi_beta needs nonnegative entries");
        if (i > 0 && x[i] > x[i - 1] + 1e-12) throw DomainError("phi_beta needs weakly decreasing entries");
        sum += x[i];
        sq += x[i] * x[i];
        if (x[i] > 0.0) ent -= x[i] * std::log(x[i]);
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError("phi_beta needs entries summing to 1");
    return 0.5 * beta * (sq - 1.0) + ent;
}

double interchange_beta_c(const SpinContext& ctx) {
    if (ctx.two_s == 1) return 2.0;
    const double s2 = ctx.two_s;
    return 2.0 * s2 / (s2 - 1.0) * std::log(s2);
}

MaximizerResult interchange_maximizer(double beta, const SpinContext& ctx) {
    check_finite(beta, "beta");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    const double th = ctx.theta();
    auto f = [&](double t) {
        const double rest = (1.0 - t) / (th - 1.0);
        double v = 0.5 * beta * (t * t + (th - 1.0) * rest * rest - 1.0);
        if (t > 0.0) v -= t * std::log(t);
        if (rest > 0.0) v -= (1.0 - t) * std::log(rest);
        return v;
    };
    auto fp = [&](double t) { return beta * (th * t - 1.0) / (th - 1.0) - std::log(t * (th - 1.0) / (1.0 - t)); };
    const double lo = 1.0 / th, hi = 1.0 - 1e-15;
    auto r = maximize_scalar(f, lo, hi, fp);
    if (r.location != lo && r.value - f(lo) < kTieTolerance) {
        r.location = lo;
        r.value = f(lo);
    }
    r.secondary = (th * r.location - 1.0) / (th - 1.0);
    if (r.location >= hi) r.clamped = true;
    return r;
}

double langevin_inverse(double mu) {
    check_finite(mu, "mu");
    if (std::abs(mu) >= 1.0) throw DomainError("Langevin inverse needs |mu| < 1");
    return invert_increasing(langevin, langevin_prime, mu);
}

MaximizerResult classical_maximizer(double beta) {
    check_finite(beta, "beta");
    if (!(beta > 0.0)) throw DomainError("beta must be positive");
    auto f = [&](double mu) {
        const double x = langevin_inverse(mu);
        return log_sinhc(x) - mu * x + beta * mu * mu;
    };
    auto fp = [&](double mu) { return 2.0 * beta * mu - langevin_inverse(mu); };
    auto r = maximize_scalar(f, 0.0, 1.0 - 1e-12, fp);
    if (r.location != 0.0 && r.value - f(0.0) < kTieTolerance) {
        r.location = 0.0;
        r.value = f(0.0);
    }
    r.secondary = langevin_inverse(r.location);
    return r;
}

}  // namespace qloops::asymptotics
