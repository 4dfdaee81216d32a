#pragma once

// Random loop soup on the complete graph with pseudo-sites, and a Metropolis sampler for
// the theta^{#loops}-weighted measure.
//
// Pseudo-site p = site * 2S + alpha. Links join pseudo-sites of different sites.
// For 2S = 1 the time interval is [0, beta/n) and level 0 sits at the periodic wrap;
// for 2S > 1 it is [-beta/2n, beta/2n), level 0 is interior and the site permutation
// rewires the threads at the wrap.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qloops/common.hpp"
#include "qloops/partition.hpp"
#include "qloops/pd.hpp"
#include "qloops/rng.hpp"
#include "qloops/stats.hpp"

namespace qloops::loops {

enum class LinkKind : std::uint8_t { cross, bar };

struct Link {
    int p = 0;
    int q = 0;
    double time = 0.0;
    LinkKind kind = LinkKind::cross;
};

struct LoopParams {
    int n = 2;
    Spin spin{1};
    double beta = 1.0;
    double u = 1.0;  // probability that a link is a cross
};

class LoopConfiguration {
public:
    explicit LoopConfiguration(const LoopParams& params);

    const LoopParams& params() const { return params_; }
    int n() const { return params_.n; }
    int two_s() const { return params_.spin.two_s; }
    int pseudo_sites() const { return params_.n * params_.spin.two_s; }
    int site_of(int p) const { return p / two_s(); }
    /// C(n,2) (2S)^2
    long long pseudo_edge_count() const;
    double time_lo() const { return time_lo_; }
    double time_hi() const { return time_hi_; }
    /// Expected number of links, pseudo_edge_count() * beta / n.
    double total_mass() const;

    std::span<const Link> links() const { return links_; }
    std::size_t link_count() const { return links_.size(); }
    /// Appends a link; throws IntegrityError for same-site endpoints, out-of-range times
    /// or a time already used on either endpoint.
    void add_link(Link link);
    /// Removes link i by swapping in the last one; returns the removed link.
    Link remove_link(std::size_t i);
    void pop_link() { links_.pop_back(); }
    /// Inverse of remove_link(i).
    void restore_link(std::size_t i, Link link);

    /// Time-sorted links on the pseudo-edge {p, q}.
    std::vector<Link> links_on_edge(int p, int q) const;

    const std::vector<int>& site_perm(int site) const { return perms_[static_cast<std::size_t>(site)]; }
    void set_site_perm(int site, std::vector<int> perm);

private:
    LoopParams params_;
    double time_lo_, time_hi_;
    std::vector<Link> links_;
    std::vector<std::vector<int>> perms_;
};

/// Independent Poisson links on every pseudo-edge and uniform site permutations.
LoopConfiguration sample_free_links(const LoopParams& params, Rng& rng);

struct LoopSpectrum {
    Partition lengths;      // positive lengths only
    int n_loops_total = 0;  // including loops of length 0
};

/// Reusable loop tracer (keeps its scratch buffers between calls).
class LoopTracer {
public:
    LoopSpectrum trace(const LoopConfiguration& config);
    /// Number of loops only, skipping the length bookkeeping.
    int count(const LoopConfiguration& config);

private:
    int build(const LoopConfiguration& config);
    int find(int a);

    std::vector<std::vector<std::pair<double, int>>> events_;
    std::vector<int> base_, parent_, pos_p_, pos_q_, level0_;
    std::vector<int> tally_;
};

LoopSpectrum trace_loops(const LoopConfiguration& config);

struct McmcStats {
    std::size_t sweeps = 0;
    std::size_t proposed_inserts = 0, accepted_inserts = 0;
    std::size_t proposed_deletes = 0, accepted_deletes = 0;
    std::size_t proposed_perm_moves = 0, accepted_perm_moves = 0;
    std::vector<double> observable_trace;
};

struct McmcOptions {
    double theta = 2.0;
    std::size_t sweeps = 10000;
    /// Defaults to 20% of sweeps.
    std::optional<std::size_t> burn_in;
    /// Link proposals per sweep; defaults to max(pseudo-sites, ceil(total mass)).
    std::optional<std::size_t> moves_per_sweep;
    /// Inserts beyond this many links are rejected (restricts the chain to a finite state space).
    std::optional<std::size_t> link_cap;
    /// Recorded after every post-burn-in sweep into McmcStats::observable_trace.
    std::function<double(const LoopSpectrum&)> observable;
    bool keep_samples = true;
};

/// Metropolis chain for theta^{#loops} times the Poisson link measure.
class MetropolisChain {
public:
    MetropolisChain(const LoopParams& params, double theta, std::optional<std::size_t> link_cap = {});

    const LoopConfiguration& config() const { return config_; }
    int loops() const { return loops_; }
    const McmcStats& stats() const { return stats_; }
    McmcStats& stats() { return stats_; }

    /// One insert-or-delete proposal (each with probability 1/2).
    void link_move(Rng& rng);
    /// Resamples one site permutation uniformly (no-op for 2S = 1).
    void perm_move(Rng& rng);
    /// Link moves plus n permutation moves when 2S > 1.
    void sweep(Rng& rng, std::size_t link_moves);
    LoopSpectrum spectrum() { return tracer_.trace(config_); }

private:
    bool accept(int new_loops, double ratio, Rng& rng);

    LoopConfiguration config_;
    double theta_;
    std::optional<std::size_t> link_cap_;
    LoopTracer tracer_;
    int loops_;
    McmcStats stats_;
};

struct McmcResult {
    std::vector<LoopSpectrum> samples;
    McmcStats stats;
};

McmcResult mcmc_run(const LoopParams& params, const McmcOptions& options, Rng& rng);

/// Independent chains, chain c seeded with Rng::for_stream(seed, c); results in chain order.
std::vector<McmcResult> run_chains(const LoopParams& params, const McmcOptions& options, std::size_t chains,
                                   std::uint64_t seed, unsigned threads = 0);

/// prod_i cosh(h l_i / (2 S n)).
double observable_cosh(const LoopSpectrum& s, double h, int n, Spin spin);
/// prod_i cosh(h l_i / (2 n)), the loop side of the spin generating function.
double observable_cosh_spin(const LoopSpectrum& s, double h, int n);
/// prod_i q_h(l_i / n).
Complex observable_q(const LoopSpectrum& s, const pd::FieldVector& h, int n);

struct PdComparisonRow {
    double h = 0.0;
    stats::MeanEstimate mc;
    double limit = 0.0;
};

struct PdComparisonReport {
    std::vector<PdComparisonRow> rows;
    bool macroscopic_skipped = false;
    std::string notice;
    stats::KsResult ks;
};

/// Compares loop samples with their Poisson-Dirichlet limits: product observables against
/// sinh(h z)/(h z) (u = 1) or I_0(h z) (u < 1), and l_1/(2Sn z) against the largest PD part.
PdComparisonReport pd_comparison(std::span<const LoopSpectrum> samples, const LoopParams& params, double pd_theta,
                                 double z_star, std::span<const double> h_grid, Rng& rng,
                                 std::size_t pd_samples = 10000);

}  // namespace qloops::loops
