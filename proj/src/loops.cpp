#include "qloops/loops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include <boost/math/special_functions/bessel.hpp>

namespace qloops::loops {

LoopConfiguration::LoopConfiguration(const LoopParams& params) : params_(params) {
    if (params.n < 2) throw DomainError("loop model needs n >= 2");
    if (params.spin.two_s < 1) throw DomainError("spin must be positive");
    if (!(params.beta >= 0.0) || !std::isfinite(params.beta)) throw DomainError("beta must be finite and nonnegative");
    if (!(params.u >= 0.0 && params.u <= 1.0)) throw DomainError("u must lie in [0, 1]");
    const double len = params.beta / params.n;
    if (params.spin.two_s == 1) {
        time_lo_ = 0.0;
        time_hi_ = len;
    } else {
        time_lo_ = -0.5 * len;
        time_hi_ = 0.5 * len;
    }
    std::vector<int> id(static_cast<std::size_t>(params.spin.two_s));
    std::iota(id.begin(), id.end(), 0);
    perms_.assign(static_cast<std::size_t>(params.n), id);
}

long long LoopConfiguration::pseudo_edge_count() const {
    const long long n = params_.n, w = params_.spin.two_s;
    return n * (n - 1) / 2 * w * w;
}

double LoopConfiguration::total_mass() const { return static_cast<double>(pseudo_edge_count()) * params_.beta / params_.n; }

void LoopConfiguration::add_link(Link link) {
    const int np = pseudo_sites();
    if (link.p < 0 || link.q < 0 || link.p >= np || link.q >= np) throw IntegrityError("link endpoint out of range");
    if (site_of(link.p) == site_of(link.q)) throw IntegrityError("link endpoints must be on different sites");
    if (!(link.time >= time_lo_ && link.time < time_hi_)) throw IntegrityError("link time outside the interval");
    if (link.kind == LinkKind::bar && params_.u == 1.0) throw IntegrityError("u = 1 configurations carry no bars");
    if (link.p > link.q) std::swap(link.p, link.q);
    for (const auto& l : links_)
        if (l.time == link.time && (l.p == link.p || l.q == link.p || l.p == link.q || l.q == link.q))
            throw IntegrityError("coincident link times on a pseudo-site");
    links_.push_back(link);
}

Link LoopConfiguration::remove_link(std::size_t i) {
    if (i >= links_.size()) throw IntegrityError("link index out of range");
    Link out = links_[i];
    links_[i] = links_.back();
    links_.pop_back();
    return out;
}

void LoopConfiguration::restore_link(std::size_t i, Link link) {
    if (i > links_.size()) throw IntegrityError("link index out of range");
    if (i == links_.size()) {
        links_.push_back(link);
        return;
    }
    links_.push_back(links_[i]);
    links_[i] = link;
}

std::vector<Link> LoopConfiguration::links_on_edge(int p, int q) const {
    if (p > q) std::swap(p, q);
    std::vector<Link> out;
    for (const auto& l : links_)
        if (l.p == p && l.q == q) out.push_back(l);
    std::sort(out.begin(), out.end(), [](const Link& a, const Link& b) { return a.time < b.time; });
    return out;
}

void LoopConfiguration::set_site_perm(int site, std::vector<int> perm) {
    if (site < 0 || site >= n()) throw IntegrityError("site index out of range");
    if (static_cast<int>(perm.size()) != two_s()) throw IntegrityError("site permutation has the wrong size");
    std::vector<int> seen(perm.size(), 0);
    for (int v : perm) {
        if (v < 0 || v >= two_s() || seen[static_cast<std::size_t>(v)]++) throw IntegrityError("not a permutation");
    }
    perms_[static_cast<std::size_t>(site)] = std::move(perm);
}

namespace {

std::vector<int> random_perm(int k, Rng& rng) {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = k - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)], perm[rng.index(static_cast<std::uint64_t>(i) + 1)]);
    return perm;
}

// Poisson(mean) by counting exponential inter-arrival times.
std::size_t poisson(double mean, Rng& rng) {
    std::size_t k = 0;
    double t = rng.exponential(1.0);
    while (t < mean) {
        ++k;
        t += rng.exponential(1.0);
    }
    return k;
}

}  // namespace

LoopConfiguration sample_free_links(const LoopParams& params, Rng& rng) {
    LoopConfiguration c(params);
    const double len = c.time_hi() - c.time_lo();
    const int w = c.two_s();
    for (int p = 0; p < c.pseudo_sites(); ++p)
        for (int q = (c.site_of(p) + 1) * w; q < c.pseudo_sites(); ++q) {
            const std::size_t k = poisson(len, rng);
            for (std::size_t j = 0; j < k; ++j) {
                Link l{p, q, c.time_lo() + len * rng.uniform(), rng.bernoulli(params.u) ? LinkKind::cross : LinkKind::bar};
                if (params.u == 1.0) l.kind = LinkKind::cross;
                c.add_link(l);
            }
        }
    if (w > 1)
        for (int i = 0; i < c.n(); ++i) c.set_site_perm(i, random_perm(w, rng));
    return c;
}

int LoopTracer::find(int a) {
    while (parent_[static_cast<std::size_t>(a)] != a) {
        parent_[static_cast<std::size_t>(a)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(a)])];
        a = parent_[static_cast<std::size_t>(a)];
    }
    return a;
}

// Builds the segment union-find; returns the number of loops.
int LoopTracer::build(const LoopConfiguration& c) {
    const int np = c.pseudo_sites();
    const int w = c.two_s();
    const auto links = c.links();
    const std::size_t k = links.size();

    events_.resize(static_cast<std::size_t>(np));
    for (auto& e : events_) e.clear();
    for (std::size_t i = 0; i < k; ++i) {
        const auto& l = links[i];
        if (l.p < 0 || l.q < 0 || l.p >= np || l.q >= np || c.site_of(l.p) == c.site_of(l.q))
            throw IntegrityError("malformed link reference");
        events_[static_cast<std::size_t>(l.p)].emplace_back(l.time, static_cast<int>(2 * i));
        events_[static_cast<std::size_t>(l.q)].emplace_back(l.time, static_cast<int>(2 * i + 1));
    }

    pos_p_.resize(k);
    pos_q_.resize(k);
    base_.resize(static_cast<std::size_t>(np) + 1);
    level0_.resize(static_cast<std::size_t>(np));
    int total = 0;
    for (int p = 0; p < np; ++p) {
        auto& ev = events_[static_cast<std::size_t>(p)];
        std::sort(ev.begin(), ev.end());
        base_[static_cast<std::size_t>(p)] = total;
        int below_zero = 0;
        for (std::size_t j = 0; j < ev.size(); ++j) {
            const int tag = ev[j].second;
            (tag % 2 == 0 ? pos_p_ : pos_q_)[static_cast<std::size_t>(tag / 2)] = static_cast<int>(j);
            if (ev[j].first < 0.0) ++below_zero;
        }
        level0_[static_cast<std::size_t>(p)] = total + (w == 1 ? 0 : below_zero);
        total += static_cast<int>(ev.size()) + 1;
    }
    base_[static_cast<std::size_t>(np)] = total;

    parent_.resize(static_cast<std::size_t>(total));
    std::iota(parent_.begin(), parent_.end(), 0);
    int components = total;
    auto join = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[static_cast<std::size_t>(a)] = b;
            --components;
        }
    };

    for (std::size_t i = 0; i < k; ++i) {
        const auto& l = links[i];
        const int below_p = base_[static_cast<std::size_t>(l.p)] + pos_p_[i];
        const int below_q = base_[static_cast<std::size_t>(l.q)] + pos_q_[i];
        if (l.kind == LinkKind::cross) {
            join(below_p, below_q + 1);
            join(below_p + 1, below_q);
        } else {
            join(below_p, below_q);
            join(below_p + 1, below_q + 1);
        }
    }
    for (int site = 0; site < c.n(); ++site) {
        const auto& perm = c.site_perm(site);
        for (int a = 0; a < w; ++a) {
            const int p = site * w + a;
            const int top = base_[static_cast<std::size_t>(p) + 1] - 1;
            const int target = site * w + perm[static_cast<std::size_t>(a)];
            join(top, base_[static_cast<std::size_t>(target)]);
        }
    }
    return components;
}

int LoopTracer::count(const LoopConfiguration& c) { return build(c); }

LoopSpectrum LoopTracer::trace(const LoopConfiguration& c) {
    LoopSpectrum out;
    out.n_loops_total = build(c);
    tally_.assign(parent_.size(), 0);
    for (int seg : level0_) ++tally_[static_cast<std::size_t>(find(seg))];
    std::vector<int> lengths;
    for (int t : tally_)
        if (t > 0) lengths.push_back(t);
    out.lengths = Partition::from_unsorted(std::move(lengths));
    return out;
}

LoopSpectrum trace_loops(const LoopConfiguration& config) {
    LoopTracer tracer;
    return tracer.trace(config);
}

MetropolisChain::MetropolisChain(const LoopParams& params, double theta, std::optional<std::size_t> link_cap)
    : config_(params), theta_(theta), link_cap_(link_cap) {
    if (!(theta >= 1.0) || !std::isfinite(theta)) throw DomainError("loop weight theta must be >= 1");
    loops_ = tracer_.count(config_);
}

bool MetropolisChain::accept(int new_loops, double ratio, Rng& rng) {
    const double a = std::pow(theta_, new_loops - loops_) * ratio;
    return a >= 1.0 || rng.uniform() < a;
}

void MetropolisChain::link_move(Rng& rng) {
    const double mass = config_.total_mass();
    const std::size_t k = config_.link_count();
    if (rng.bernoulli(0.5)) {
        ++stats_.proposed_inserts;
        if (link_cap_ && k >= *link_cap_) return;
        if (mass <= 0.0) return;
        const int np = config_.pseudo_sites();
        const int w = config_.two_s();
        const int p = static_cast<int>(rng.index(static_cast<std::uint64_t>(np)));
        // uniform pseudo-site on another site
        int q = static_cast<int>(rng.index(static_cast<std::uint64_t>(np - w)));
        if (q >= config_.site_of(p) * w) q += w;
        Link l{p, q, config_.time_lo() + (config_.time_hi() - config_.time_lo()) * rng.uniform(),
               rng.bernoulli(config_.params().u) ? LinkKind::cross : LinkKind::bar};
        if (config_.params().u == 1.0) l.kind = LinkKind::cross;
        try {
            config_.add_link(l);
        } catch (const IntegrityError&) {
            return;  // time collision, probability zero
        }
        const int nl = tracer_.count(config_);
        if (accept(nl, mass / static_cast<double>(k + 1), rng)) {
            loops_ = nl;
            ++stats_.accepted_inserts;
        } else {
            config_.pop_link();
        }
    } else {
        ++stats_.proposed_deletes;
        if (k == 0) return;
        const std::size_t i = rng.index(k);
        Link removed = config_.remove_link(i);
        const int nl = tracer_.count(config_);
        if (accept(nl, static_cast<double>(k) / mass, rng)) {
            loops_ = nl;
            ++stats_.accepted_deletes;
        } else {
            config_.restore_link(i, removed);
        }
    }
}

void MetropolisChain::perm_move(Rng& rng) {
    const int w = config_.two_s();
    if (w == 1) return;
    ++stats_.proposed_perm_moves;
    const int site = static_cast<int>(rng.index(static_cast<std::uint64_t>(config_.n())));
    auto old = config_.site_perm(site);
    config_.set_site_perm(site, random_perm(w, rng));
    const int nl = tracer_.count(config_);
    if (accept(nl, 1.0, rng)) {
        loops_ = nl;
        ++stats_.accepted_perm_moves;
    } else {
        config_.set_site_perm(site, std::move(old));
    }
}

void MetropolisChain::sweep(Rng& rng, std::size_t link_moves) {
    for (std::size_t m = 0; m < link_moves; ++m) link_move(rng);
    if (config_.two_s() > 1)
        for (int i = 0; i < config_.n(); ++i) perm_move(rng);
    ++stats_.sweeps;
}

McmcResult mcmc_run(const LoopParams& params, const McmcOptions& options, Rng& rng) {
    MetropolisChain chain(params, options.theta, options.link_cap);
    const std::size_t burn = options.burn_in.value_or(options.sweeps / 5);
    if (burn >= options.sweeps) throw DomainError("burn-in must be shorter than the run");
    const std::size_t moves = options.moves_per_sweep.value_or(
        std::max<std::size_t>(static_cast<std::size_t>(chain.config().pseudo_sites()),
                              static_cast<std::size_t>(std::ceil(chain.config().total_mass()))));
    McmcResult out;
    if (options.keep_samples) out.samples.reserve(options.sweeps - burn);
    for (std::size_t s = 0; s < options.sweeps; ++s) {
        chain.sweep(rng, moves);
        if (s < burn) continue;
        if (!options.keep_samples && !options.observable) continue;
        auto spec = chain.spectrum();
        if (options.observable) chain.stats().observable_trace.push_back(options.observable(spec));
        if (options.keep_samples) out.samples.push_back(std::move(spec));
    }
    out.stats = std::move(chain.stats());
    return out;
}

std::vector<McmcResult> run_chains(const LoopParams& params, const McmcOptions& options, std::size_t chains,
                                   std::uint64_t seed, unsigned threads) {
    if (chains == 0) throw DomainError("need at least one chain");
    std::vector<McmcResult> results(chains);
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, chains));
    std::vector<std::exception_ptr> errors(chains);
    auto work = [&](unsigned worker) {
        for (std::size_t c = worker; c < chains; c += threads) {
            try {
                Rng rng = Rng::for_stream(seed, c);
                results[c] = mcmc_run(params, options, rng);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

double observable_cosh(const LoopSpectrum& s, double h, int n, Spin spin) {
    double out = 1.0;
    const double scale = h / (static_cast<double>(spin.two_s) * n);
    for (int l : s.lengths.parts()) out *= std::cosh(scale * l);
    return out;
}

double observable_cosh_spin(const LoopSpectrum& s, double h, int n) {
    double out = 1.0;
    for (int l : s.lengths.parts()) out *= std::cosh(h * l / (2.0 * n));
    return out;
}

Complex observable_q(const LoopSpectrum& s, const pd::FieldVector& h, int n) {
    Complex out = 1.0;
    for (int l : s.lengths.parts()) out *= pd::q_eval(h, static_cast<double>(l) / n);
    return out;
}

PdComparisonReport pd_comparison(std::span<const LoopSpectrum> samples, const LoopParams& params, double pd_theta,
                                 double z_star, std::span<const double> h_grid, Rng& rng, std::size_t pd_samples) {
    if (samples.empty()) throw DomainError("no loop samples to compare");
    PdComparisonReport rep;
    for (double h : h_grid) {
        std::vector<double> vals;
        vals.reserve(samples.size());
        for (const auto& s : samples) vals.push_back(observable_cosh(s, h, params.n, params.spin));
        PdComparisonRow row;
        row.h = h;
        row.mc = stats::batch_means(vals);
        const double x = h * z_star;
        if (x == 0.0) {
            row.limit = 1.0;
        } else if (params.u == 1.0) {
            row.limit = std::sinh(x) / x;
        } else {
            row.limit = boost::math::cyl_bessel_i(0, x);
        }
        rep.rows.push_back(row);
    }
    if (!(z_star > 0.0)) {
        rep.macroscopic_skipped = true;
        rep.notice = "z* = 0: no macroscopic loops, largest-loop comparison skipped";
        return rep;
    }
    const double total = static_cast<double>(params.spin.two_s) * params.n;
    std::vector<double> loop_side, pd_side;
    loop_side.reserve(samples.size());
    for (const auto& s : samples) loop_side.push_back(s.lengths[0] / total / z_star);
    pd_side.reserve(pd_samples);
    for (std::size_t i = 0; i < pd_samples; ++i) pd_side.push_back(pd::stick_breaking_sample(pd_theta, rng).parts.front());
    rep.ks = stats::ks_two_sample(std::move(loop_side), std::move(pd_side));
    return rep;
}

}  // namespace qloops::loops
