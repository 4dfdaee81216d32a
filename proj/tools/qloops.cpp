// qloops command-line front end.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qloops/asymptotics.hpp"
#include "qloops/common.hpp"
#include "qloops/loops.hpp"
#include "qloops/pd.hpp"
#include "qloops/spectra.hpp"
#include "qloops/stats.hpp"
#include "qloops/symfunc.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace qloops;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// A table is a list of rows with a fixed column order; cells are JSON scalars (null prints empty).
struct Table {
    std::vector<std::string> columns;
    std::vector<json> rows;

    void add(json row) { rows.push_back(std::move(row)); }
};

std::string csv_cell(const json& v) {
    std::string s;
    if (v.is_null()) return s;
    if (v.is_number_float()) s = num(v.get<double>());
    else if (v.is_number()) s = v.dump();
    else if (v.is_boolean()) s = v.get<bool>() ? "true" : "false";
    else s = v.get<std::string>();
    if (s.find_first_of(",\"\n") != std::string::npos) {
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return s;
}

std::string render(const Table& t, const std::string& format, const json& meta) {
    std::ostringstream out;
    if (format == "json") {
        json doc = meta;
        doc["rows"] = json::array();
        for (const auto& r : t.rows) {
            json row;
            for (const auto& c : t.columns) row[c] = r.contains(c) ? r[c] : json();
            doc["rows"].push_back(row);
        }
        out << doc.dump(2) << "\n";
        return out.str();
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << csv_cell(r.contains(t.columns[i]) ? r[t.columns[i]] : json());
        out << "\n";
    }
    return out.str();
}

fs::path resolve_output(const std::string& path) {
    fs::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("QLOOPS_OUTPUT_DIR"); dir && *dir) p = fs::path(dir) / p;
    }
    return p;
}

void write_file(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    f.close();
    if (!f) throw IoError("failed writing " + path.string());
}

void emit(const Table& t, const std::string& format, const std::string& output, const json& meta) {
    const std::string text = render(t, format, meta);
    if (output.empty()) {
        std::cout << text;
    } else {
        write_file(resolve_output(output), text);
    }
}

std::vector<double> parse_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size() || !std::isfinite(v)) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw UsageError(std::string("cannot parse ") + what + " value '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    const auto colon = std::count(text.begin(), text.end(), ':');
    if (colon != 2) throw UsageError("grid must look like start:stop:step");
    std::string s = text;
    std::replace(s.begin(), s.end(), ':', ',');
    const auto v = parse_list(s, "grid");
    const double a = v[0], b = v[1], step = v[2];
    if (!(step > 0.0) || b < a) throw UsageError("grid needs start <= stop and a positive step");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 100000) throw UsageError("grid has too many points");
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
}

bool ci_mode() {
    const char* ci = std::getenv("CI");
    if (!ci || !*ci) return false;
    const std::string v = ci;
    return v != "0" && v != "false";
}

// Model options shared by exact and simulate.
struct ModelOptions {
    std::string model = "heisenberg";
    int n = 0;
    std::optional<std::string> spin;
    std::optional<int> theta;
    double beta = 1.0;
    std::optional<double> delta;
    std::optional<double> u;
    std::string h = "1";
};

void add_model_options(CLI::App* cmd, ModelOptions& o) {
    cmd->add_option("--model", o.model, "heisenberg, xy or interchange")
        ->check(CLI::IsMember({"heisenberg", "xy", "interchange"}))
        ->capture_default_str();
    cmd->add_option("--n", o.n, "number of sites")->required();
    cmd->add_option("--spin", o.spin, "spin as a fraction (1/2, 1, 3/2, ...)");
    cmd->add_option("--theta", o.theta, "interchange: local dimension 2S+1");
    cmd->add_option("--beta", o.beta, "inverse temperature")->capture_default_str();
    cmd->add_option("--delta", o.delta, "anisotropy (heisenberg: 1; xy: [-1, 1))");
    cmd->add_option("--u", o.u, "cross intensity, u = (1 + delta)/2");
    cmd->add_option("--h", o.h, "field; interchange takes theta comma-separated values")->capture_default_str();
}

struct Model {
    std::string name;
    int n = 2;
    Spin spin{1};
    int theta = 2;  // loop weight
    double beta = 1.0;
    double delta = 1.0;
    double u = 1.0;
    std::vector<double> h;
    pd::FieldVector field;  // interchange only
};

Model resolve(const ModelOptions& o) {
    Model m;
    m.name = o.model;
    if (o.n < 2) throw UsageError("--n must be at least 2");
    if (!(o.beta > 0.0) || !std::isfinite(o.beta)) throw UsageError("--beta must be positive");
    m.n = o.n;
    m.beta = o.beta;
    m.h = parse_list(o.h, "--h");
    if (o.model == "interchange") {
        if (o.delta) throw UsageError("--delta does not apply to the interchange model");
        if (o.u && *o.u != 1.0) throw UsageError("the interchange model forces u = 1");
        if (o.theta && *o.theta < 2) throw UsageError("--theta must be an integer >= 2");
        Spin s = o.spin ? parse_spin(*o.spin) : Spin{o.theta ? *o.theta - 1 : 1};
        if (o.theta && *o.theta != s.theta()) throw UsageError("--theta and --spin disagree (theta = 2S+1)");
        m.spin = s;
        m.theta = s.theta();
        if (m.h.size() == 1) {
            m.field = pd::FieldVector::spin(s, m.h[0]);
        } else if (static_cast<int>(m.h.size()) == m.theta) {
            m.field = pd::FieldVector::real(m.h);
        } else {
            throw UsageError("--h needs 1 or theta values for the interchange model");
        }
        return m;
    }
    if (o.theta) throw UsageError("--theta applies to the interchange model only");
    if (m.h.size() != 1) throw UsageError("--h takes a single value for this model");
    m.spin = o.spin ? parse_spin(*o.spin) : Spin{1};
    m.theta = 2;
    double delta = o.model == "xy" ? 0.0 : 1.0;
    if (o.u) {
        if (!(*o.u >= 0.0 && *o.u <= 1.0)) throw UsageError("--u must lie in [0, 1]");
        delta = 2.0 * *o.u - 1.0;
        if (o.delta && std::abs(*o.delta - delta) > 1e-12) throw UsageError("--u and --delta disagree (delta = 2u - 1)");
    } else if (o.delta) {
        delta = *o.delta;
    }
    if (o.model == "heisenberg" && delta != 1.0) throw UsageError("the heisenberg model forces delta = 1; use --model xy");
    if (o.model == "xy" && !(delta >= -1.0 && delta < 1.0)) throw UsageError("the xy model needs delta in [-1, 1)");
    m.delta = delta;
    m.u = 0.5 * (1.0 + delta);
    return m;
}

json model_meta(const Model& m) {
    json j;
    j["model"] = m.name;
    j["n"] = m.n;
    j["spin"] = format_spin(m.spin);
    j["theta"] = m.theta;
    j["beta"] = m.beta;
    if (m.name != "interchange") {
        j["delta"] = m.delta;
        j["u"] = m.u;
    } else {
        j["u"] = 1.0;
    }
    j["h"] = m.h;
    return j;
}

struct Limit {
    double value = 1.0;
    double order_parameter = 0.0;
};

Limit limit_value(const Model& m) {
    Limit out;
    asymptotics::SpinContext ctx(m.spin);
    if (m.name == "interchange") {
        const auto r = asymptotics::interchange_maximizer(m.beta, ctx);
        std::vector<double> x(static_cast<std::size_t>(m.theta), (1.0 - r.location) / (m.theta - 1));
        x[0] = r.location;
        out.value = pd::r_function(m.field, x).real();
        out.order_parameter = r.secondary;
        return out;
    }
    const double ms = asymptotics::m_star(m.beta, ctx).location;
    const double x = m.h[0] * ms;
    out.order_parameter = ms;
    if (x != 0.0) out.value = m.name == "heisenberg" ? std::sinh(x) / x : std::cyl_bessel_i(0.0, x);
    return out;
}

double exact_value(const Model& m) {
    if (m.name == "interchange") return symfunc::interchange_expectation_exact(m.n, m.beta, m.field).real();
    return spectra::heisenberg_expectation_exact({m.n, m.spin, m.beta, m.delta, {m.h[0], 0.0}}).value.real();
}

int cmd_exact(const ModelOptions& o, const std::string& format, const std::string& output) {
    const Model m = resolve(o);
    const double exact = exact_value(m);
    const Limit lim = limit_value(m);
    Table t;
    t.columns = {"model", "n", "spin", "theta", "beta", "delta", "h", "exact", "limit", "gap", "order_parameter"};
    json row = {{"model", m.name},    {"n", m.n},         {"spin", format_spin(m.spin)},
                {"theta", m.theta},   {"beta", m.beta},   {"delta", m.name == "interchange" ? json() : json(m.delta)},
                {"h", join(m.h)},     {"exact", exact},   {"limit", lim.value},
                {"gap", std::abs(exact - lim.value)}, {"order_parameter", lim.order_parameter}};
    t.add(row);
    json meta = {{"command", "exact"}};
    meta["parameters"] = model_meta(m);
    emit(t, format, output, meta);
    return 0;
}

struct SimulateOptions {
    std::size_t sweeps = 10000;
    std::optional<std::size_t> burn_in;
    std::size_t chains = 1;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::size_t thin = 1;
    bool no_spectra = false;
};

int cmd_simulate(const ModelOptions& o, const SimulateOptions& s, const std::string& format, const std::string& output) {
    const Model m = resolve(o);
    if (!s.seed && ci_mode()) throw UsageError("--seed is mandatory for simulate when CI is set");
    if (s.chains == 0) throw UsageError("--chains must be positive");
    if (s.sweeps == 0) throw UsageError("--sweeps must be positive");
    if (s.thin == 0) throw UsageError("--thin must be positive");
    const std::uint64_t seed = s.seed ? *s.seed : (std::uint64_t(std::random_device{}()) << 32) ^ std::random_device{}();

    const Spin loop_spin = m.name == "interchange" ? Spin{1} : m.spin;
    const loops::LoopParams params{m.n, loop_spin, m.beta, m.u};
    loops::McmcOptions mo;
    mo.theta = m.theta;
    mo.sweeps = s.sweeps;
    mo.burn_in = s.burn_in;
    const std::size_t burn = s.burn_in.value_or(s.sweeps / 5);
    if (burn >= s.sweeps) throw UsageError("--burn-in must be shorter than --sweeps");

    auto observable = [&](const loops::LoopSpectrum& sp) {
        if (m.name == "interchange") return loops::observable_q(sp, m.field, m.n).real();
        return loops::observable_cosh_spin(sp, m.h[0], m.n);
    };
    const auto runs = loops::run_chains(params, mo, s.chains, seed, s.threads);

    // the loop observable equals the spin expectation except for the xy model at S > 1/2
    std::optional<double> reference;
    if (!(m.name == "xy" && m.spin.two_s > 1)) reference = exact_value(m);

    Table summary;
    summary.columns = {"chain", "mean", "std_error", "samples", "three_se"};
    json per_chain = json::array();
    std::vector<stats::MeanEstimate> parts;
    std::size_t max_parts = 0;
    for (std::size_t c = 0; c < runs.size(); ++c) {
        std::vector<double> vals;
        vals.reserve(runs[c].samples.size());
        for (const auto& sp : runs[c].samples) {
            vals.push_back(observable(sp));
            max_parts = std::max<std::size_t>(max_parts, static_cast<std::size_t>(sp.lengths.length()));
        }
        const auto est = stats::batch_means(vals);
        parts.push_back(est);
        const auto& st = runs[c].stats;
        per_chain.push_back({{"chain", c},
                             {"mean", est.mean},
                             {"std_error", est.std_error},
                             {"samples", est.samples},
                             {"accepted_inserts", st.accepted_inserts},
                             {"proposed_inserts", st.proposed_inserts},
                             {"accepted_deletes", st.accepted_deletes},
                             {"proposed_deletes", st.proposed_deletes},
                             {"accepted_perm_moves", st.accepted_perm_moves},
                             {"proposed_perm_moves", st.proposed_perm_moves}});
        summary.add({{"chain", std::to_string(c)},
                     {"mean", est.mean},
                     {"std_error", est.std_error},
                     {"samples", est.samples},
                     {"three_se", 3 * est.std_error}});
    }
    const auto pooled = stats::pool(parts);
    summary.add({{"chain", "pooled"},
                 {"mean", pooled.mean},
                 {"std_error", pooled.std_error},
                 {"samples", pooled.samples},
                 {"three_se", 3 * pooled.std_error}});
    if (reference) {
        summary.columns.push_back("reference");
        summary.columns.push_back("within_3se");
        summary.rows.back()["reference"] = *reference;
        summary.rows.back()["within_3se"] = std::abs(pooled.mean - *reference) <= 3 * pooled.std_error;
    }

    json meta = {{"command", "simulate"}};
    meta["parameters"] = model_meta(m);
    meta["sweeps"] = s.sweeps;
    meta["burn_in"] = burn;
    meta["chains"] = s.chains;
    meta["seed"] = seed;
    meta["thin"] = s.thin;
    meta["observable"] = m.name == "interchange" ? "prod q_h(l_i/n)" : "prod cosh(h l_i/(2n))";
    meta["per_chain"] = per_chain;
    meta["pooled"] = {{"mean", pooled.mean},
                      {"std_error", pooled.std_error},
                      {"samples", pooled.samples},
                      {"three_se", 3 * pooled.std_error}};
    meta["reference"] = reference ? json(*reference) : json();

    const std::string prefix = output.empty() ? "simulate_" + m.name : output;
    const fs::path base = resolve_output(prefix);
    if (!s.no_spectra) {
        std::ostringstream csv;
        csv << "chain,sweep,n_loops,observable";
        for (std::size_t i = 1; i <= max_parts; ++i) csv << ",l" << i;
        csv << "\n";
        for (std::size_t c = 0; c < runs.size(); ++c)
            for (std::size_t i = 0; i < runs[c].samples.size(); i += s.thin) {
                const auto& sp = runs[c].samples[i];
                csv << c << "," << burn + i + 1 << "," << sp.n_loops_total << "," << num(observable(sp));
                const auto& ls = sp.lengths.parts();
                for (std::size_t k = 0; k < max_parts; ++k) csv << "," << (k < ls.size() ? ls[k] : 0);
                csv << "\n";
            }
        fs::path p = base;
        p += "_spectra.csv";
        write_file(p, csv.str());
        meta["spectra_file"] = p.filename().string();
    }
    fs::path mp = base;
    mp += ".json";
    write_file(mp, meta.dump(2) + "\n");

    std::cout << render(summary, format, json{{"command", "simulate"}});
    return 0;
}

int cmd_exponents(const std::string& spin_text, const std::string& which, const std::string& format,
                  const std::string& output) {
    const Spin spin = parse_spin(spin_text);
    asymptotics::SpinContext ctx(spin);
    const double bc = ctx.beta_c();
    Table t;
    t.columns = {"which", "target", "exponent", "r_squared", "tolerance", "verdict"};
    auto add = [&](const std::string& name, double target, double tol, std::vector<std::pair<double, double>> pts) {
        const auto fit = asymptotics::fit_exponent(pts);
        const bool ok = std::abs(fit.exponent - target) <= tol;
        t.add({{"which", name},
               {"target", target},
               {"exponent", fit.exponent},
               {"r_squared", fit.r_squared},
               {"tolerance", tol},
               {"verdict", ok ? "PASS" : "FAIL"}});
    };
    const bool all = which == "all";
    if (all || which == "magnetization") {
        std::vector<std::pair<double, double>> pts;
        for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) pts.emplace_back(d, asymptotics::m_star(bc + d, ctx).location);
        add("magnetization", 0.5, 0.05, pts);
    }
    if (all || which == "susceptibility") {
        std::vector<std::pair<double, double>> closed, fd;
        for (double d : {1e-1, 1e-2, 1e-3, 1e-4}) {
            closed.emplace_back(d, asymptotics::susceptibility(bc - d, ctx));
            const double dh = 1e-7;
            fd.emplace_back(d, asymptotics::magnetization(bc - d, dh, ctx) / dh);
        }
        add("susceptibility", -1.0, 0.05, closed);
        add("susceptibility-finite-difference", -1.0, 0.05, fd);
    }
    if (all || which == "critical-magnetization" || which == "critical-transverse") {
        std::vector<std::pair<double, double>> mpts, tpts;
        for (double h : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
            const double m = asymptotics::magnetization(bc, h, ctx);
            mpts.emplace_back(h, m);
            tpts.emplace_back(h, m / h);
        }
        if (all || which == "critical-magnetization") add("critical-magnetization", 1.0 / 3, 0.05, mpts);
        if (all || which == "critical-transverse") add("critical-transverse", -2.0 / 3, 0.07, tpts);
    }
    if (all || which == "transverse") {
        std::vector<std::pair<double, double>> pts;
        for (double h : {1e-3, 1e-4, 1e-5, 1e-6}) pts.emplace_back(h, asymptotics::magnetization(bc + 0.5, h, ctx) / h);
        add("transverse", -1.0, 0.05, pts);
    }
    json meta = {{"command", "exponents"}, {"spin", format_spin(spin)}, {"beta_c", bc}};
    emit(t, format, output, meta);
    return 0;
}

int cmd_maximize(const std::string& model, const std::string& spin_text, const std::optional<int>& theta,
                 const std::vector<double>& betas, const std::string& format, const std::string& output) {
    Spin spin = parse_spin(spin_text);
    if (theta) {
        if (model != "interchange") throw UsageError("--theta applies to the interchange model only");
        if (*theta < 2) throw UsageError("--theta must be an integer >= 2");
        spin = Spin{*theta - 1};
    }
    asymptotics::SpinContext ctx(spin);
    Table t;
    json meta = {{"command", "maximize"}, {"model", model}, {"spin", format_spin(spin)}};
    if (model == "interchange") {
        const double bc = asymptotics::interchange_beta_c(ctx);
        meta["beta_c"] = bc;
        t.columns = {"beta", "beta_c", "x1_star", "z_star", "clamped"};
        for (double b : betas) {
            const auto r = asymptotics::interchange_maximizer(b, ctx);
            t.add({{"beta", b}, {"beta_c", bc}, {"x1_star", r.location}, {"z_star", r.secondary}, {"clamped", r.clamped}});
        }
    } else {
        const double bc = ctx.beta_c();
        meta["beta_c"] = bc;
        t.columns = {"beta", "beta_c", "m_star", "g_second", "clamped"};
        for (double b : betas) {
            const auto r = asymptotics::m_star(b, ctx);
            t.add({{"beta", b},
                   {"beta_c", bc},
                   {"m_star", r.location},
                   {"g_second", r.second_derivative},
                   {"clamped", r.clamped}});
        }
    }
    emit(t, format, output, meta);
    return 0;
}

int cmd_pd(double theta, const std::vector<double>& hs, std::size_t samples, std::uint64_t seed,
           const std::string& format, const std::string& output) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw UsageError("--theta must be positive");
    if (samples < 2) throw UsageError("--samples must be at least 2");
    Table t;
    t.columns = {"theta", "h", "series", "closed_form", "mc_mean", "mc_std_error", "z_score", "verdict"};
    for (std::size_t k = 0; k < hs.size(); ++k) {
        const double h = hs[k];
        const double series = pd::pd_cosh_series(theta, h).real();
        json closed;
        if (theta == 2.0) closed = h == 0.0 ? 1.0 : std::sinh(h) / h;
        if (theta == 1.0) closed = std::cyl_bessel_i(0.0, h);
        Rng rng = Rng::for_stream(seed, k);
        std::vector<double> vals;
        vals.reserve(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            const auto s = pd::stick_breaking_sample(theta, rng);
            double v = 1.0;
            for (double x : s.parts) v *= std::cosh(h * x);
            vals.push_back(v);
        }
        const auto est = stats::iid_mean(vals);
        const double z = est.std_error > 0 ? (est.mean - series) / est.std_error : 0.0;
        t.add({{"theta", theta},
               {"h", h},
               {"series", series},
               {"closed_form", closed},
               {"mc_mean", est.mean},
               {"mc_std_error", est.std_error},
               {"z_score", z},
               {"verdict", std::abs(z) <= 3.0 ? "PASS" : "FAIL"}});
    }
    json meta = {{"command", "pd"}, {"theta", theta}, {"samples", samples}, {"seed", seed}};
    emit(t, format, output, meta);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qloops: quantum spin systems on the complete graph and their random loop representations"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    std::string format = "csv";
    std::string output;
    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
        cmd->add_option("--output", output, "output file (simulate: path prefix); relative paths use QLOOPS_OUTPUT_DIR");
    };

    ModelOptions exact_opts;
    auto* exact = app.add_subcommand("exact", "finite-n exact value next to its n -> infinity limit");
    add_model_options(exact, exact_opts);
    add_io(exact);

    ModelOptions sim_opts;
    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "loop Monte Carlo with spectra CSV and metadata JSON");
    add_model_options(simulate, sim_opts);
    simulate->add_option("--sweeps", sim.sweeps, "sweeps per chain")->capture_default_str();
    simulate->add_option("--burn-in", sim.burn_in, "discarded sweeps (default 20%)");
    simulate->add_option("--chains", sim.chains, "independent chains")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "64-bit seed (mandatory when CI is set)");
    simulate->add_option("--threads", sim.threads, "worker threads (0: all cores); output does not depend on it");
    simulate->add_option("--thin", sim.thin, "write every k-th sample to the spectra CSV")->capture_default_str();
    simulate->add_flag("--no-spectra", sim.no_spectra, "skip the spectra CSV");
    add_io(simulate);

    std::string exp_spin = "1/2", which = "all";
    auto* exponents = app.add_subcommand("exponents", "critical exponent fits");
    exponents->add_option("--spin", exp_spin, "spin as a fraction")->capture_default_str();
    exponents->add_option("--which", which)
        ->check(CLI::IsMember({"all", "magnetization", "susceptibility", "critical-magnetization",
                               "critical-transverse", "transverse"}))
        ->capture_default_str();
    add_io(exponents);

    std::string max_model = "heisenberg", max_spin = "1/2", grid;
    std::optional<int> max_theta;
    std::optional<double> max_beta;
    auto* maximize = app.add_subcommand("maximize", "maximiser tables over a beta grid");
    maximize->add_option("--model", max_model)
        ->check(CLI::IsMember({"heisenberg", "xy", "interchange"}))
        ->capture_default_str();
    maximize->add_option("--spin", max_spin, "spin as a fraction")->capture_default_str();
    maximize->add_option("--theta", max_theta, "interchange: 2S+1");
    auto* grid_opt = maximize->add_option("--beta-grid", grid, "start:stop:step");
    auto* beta_opt = maximize->add_option("--beta", max_beta, "single beta");
    grid_opt->excludes(beta_opt);
    add_io(maximize);

    double pd_theta = 2.0;
    std::string pd_h = "1";
    std::size_t pd_samples = 100000;
    std::uint64_t pd_seed = 1;
    auto* pdcmd = app.add_subcommand("pd", "Poisson-Dirichlet cosh series against stick-breaking Monte Carlo");
    pdcmd->add_option("--theta", pd_theta)->capture_default_str();
    pdcmd->add_option("--h", pd_h, "comma-separated fields")->capture_default_str();
    pdcmd->add_option("--samples", pd_samples)->capture_default_str();
    pdcmd->add_option("--seed", pd_seed)->capture_default_str();
    add_io(pdcmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (exact->parsed()) return cmd_exact(exact_opts, format, output);
        if (simulate->parsed()) return cmd_simulate(sim_opts, sim, format, output);
        if (exponents->parsed()) return cmd_exponents(exp_spin, which, format, output);
        if (maximize->parsed()) {
            std::vector<double> betas;
            if (max_beta) betas = {*max_beta};
            else if (!grid.empty()) betas = parse_grid(grid);
            else throw UsageError("maximize needs --beta or --beta-grid");
            return cmd_maximize(max_model, max_spin, max_theta, betas, format, output);
        }
        if (pdcmd->parsed()) return cmd_pd(pd_theta, parse_list(pd_h, "--h"), pd_samples, pd_seed, format, output);
    } catch (const UsageError& e) {
        std::cerr << "qloops: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "qloops: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SizeError& e) {
        std::cerr << "qloops: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "qloops: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "qloops: numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
