#include "app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ctphs/ctphs.hpp"
#include "ctphs/version.hpp"

namespace ctphs::cli {
namespace {

using nlohmann::json;

struct Ctx {
  std::ostream& out;
  std::ostream& err;
};

/// Problem that should surface as exit code 2 before any work is done.
struct ConfigError : ParameterError {
  using ParameterError::ParameterError;
};

double parse_real(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "infinity") return kInf;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_reals(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& s : items) out.push_back(parse_real(s));
  return out;
}

std::vector<int> parse_ints(const std::vector<std::string>& items, const char* what, int min_value) {
  std::vector<int> out;
  for (const auto& s : items) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(std::string(what) + ": not an integer: '" + s + "'");
    if (v < min_value) throw ConfigError(std::string(what) + " must be >= " + std::to_string(min_value));
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(std::string(what) + ": empty list");
  return out;
}

json reals_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(format_double(x)));
  return a;
}

int default_d(Kind k) {
  switch (k) {
    case Kind::Sphere:
    case Kind::RealProjective: return 3;
    case Kind::ComplexProjective: return 5;
    case Kind::QuaternionProjective: return 9;
    case Kind::CayleyPlane: return 17;
  }
  return 3;
}

/// Options shared by every command.
struct Common {
  std::string manifold = "sphere";
  int d = 0;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string out;

  ManifoldSpec spec() const {
    const Kind k = parse_kind(manifold);
    return make_spec(k, d == 0 ? default_d(k) : d);
  }
  void add_to(CLI::App* sub, bool with_seed = true) {
    sub->add_option("--manifold", manifold, "sphere | real-projective | complex-projective | "
                                            "quaternion-projective | cayley (or s, rp, cp, hp, cay)")
        ->capture_default_str();
    sub->add_option("--d", d, "ambient parameter d (space dimension d-1); 0 picks the smallest valid d");
    if (with_seed) sub->add_option("--seed", seed, "random seed")->capture_default_str();
    sub->add_option("--threads", threads, "worker threads (0 = all cores); never changes results");
    sub->add_option("--out", out, "output file (default: standard output)");
  }
  /// Result-affecting settings common to all commands.
  json config(const std::string& command, const ManifoldSpec& s) const {
    return {{"command", command}, {"manifold", std::string(kind_name(s.kind))}, {"d", s.d}, {"seed", seed}};
  }
};

void emit(Ctx& ctx, const std::string& path, const std::string& text) {
  if (path.empty()) {
    ctx.out << text;
  } else {
    write_file(path, text);
  }
}

std::string csv_text(const ExperimentReport& rep) {
  std::ostringstream os;
  rep.write_csv(os);
  return os.str();
}

void stamp(json& j, const json& config) {
  j["config"] = config;
  j["version"] = kVersion;
}

void warn(Ctx& ctx, const std::string& category, const std::string& message, json extra = json::object()) {
  json j{{"error", {{"category", category}, {"message", message}}}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j["error"][it.key()] = it.value();
  ctx.err << j.dump() << '\n';
}

using Runner = std::function<int(Ctx&)>;

// ---------------------------------------------------------------- spec

Runner add_spec(CLI::App& app) {
  auto* sub = app.add_subcommand("spec", "print the structure constants of a space");
  auto c = std::make_shared<Common>();
  auto kmax = std::make_shared<int>(5);
  c->add_to(sub, false);
  sub->add_option("--kmax", *kmax, "list dim H_k for k <= kmax")->capture_default_str()->check(CLI::Range(0, 1000));
  return [c, kmax](Ctx& ctx) {
    const auto s = c->spec();
    json j;
    j["spec"] = to_json(s);
    j["spec"]["dimension"] = s.dimension();
    j["spec"]["radial_constant"] = s.radial_constant;
    j["spec"]["supports_points"] = s.supports_points();
    json dims = json::array();
    for (int k = 0; k <= *kmax; ++k) dims.push_back(harmonic_dimension(s, k));
    j["harmonic_dimensions"] = dims;
    json cfg{{"command", "spec"}, {"manifold", std::string(kind_name(s.kind))}, {"d", s.d}, {"kmax", *kmax}};
    stamp(j, cfg);
    emit(ctx, c->out, dump_artifact(j));
    return kOk;
  };
}

// ---------------------------------------------------------------- cover

struct CoverArgs {
  int n = 8;
  double delta = 0.5;
  double r = 0.0;
  int probes = 100000;
  std::size_t max_nodes = 100000;
  int budget = 10000;

  void add_to(CLI::App* sub) {
    sub->add_option("--n", n, "degree parameter n (covering radius delta/n)")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--delta", delta, "delta in the covering radius delta/n")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--r", r, "explicit covering radius (overrides delta/n)");
    sub->add_option("--probes", probes, "verification probes")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-nodes", max_nodes, "node budget")->capture_default_str();
    sub->add_option("--budget", budget, "consecutive rejections before stopping")->capture_default_str()->check(CLI::PositiveNumber);
  }
  double radius() const { return r > 0.0 ? r : delta / n; }
  json config() const {
    return {{"n", n}, {"delta", delta}, {"r", radius()}, {"probes", probes}, {"max_nodes", max_nodes}, {"budget", budget}};
  }
  Covering build(const ManifoldSpec& s, std::uint64_t seed, int threads) const {
    CoveringOptions o;
    o.verify_probes = probes;
    o.max_nodes = max_nodes;
    o.rejection_budget = budget;
    o.threads = threads;
    return build_covering(s, radius(), seed, o);
  }
};

Runner add_cover(CLI::App& app) {
  auto* sub = app.add_subcommand("cover", "build and verify a covering; writes covering JSON");
  auto c = std::make_shared<Common>();
  auto a = std::make_shared<CoverArgs>();
  c->add_to(sub);
  a->add_to(sub);
  return [c, a](Ctx& ctx) {
    const auto s = c->spec();
    if (!(a->radius() > 0.0 && a->radius() <= std::numbers::pi)) throw ConfigError("covering radius must lie in (0, pi]");
    const auto cov = a->build(s, c->seed, c->threads);
    json j = to_json(cov);
    json cfg = c->config("cover", s);
    cfg.update(a->config());
    stamp(j, cfg);
    emit(ctx, c->out, dump_artifact(j));
    if (!cov.verification.covered) {
      warn(ctx, "not-covered", "verification found a gap of " + format_double(cov.verification.max_gap));
      return kNotConverged;
    }
    return kOk;
  };
}

// ---------------------------------------------------------------- cubature

struct SolveArgs {
  int degree = 0;
  double tol = 1e-10;
  int max_iters = 20000;

  void add_to(CLI::App* sub) {
    sub->add_option("--degree", degree, "exactness degree D (0 = 4n)");
    sub->add_option("--tol", tol, "relative residual tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", max_iters, "solver iteration budget")->capture_default_str()->check(CLI::PositiveNumber);
  }
  SolverOptions options(int threads) const {
    SolverOptions o;
    o.tol_rel = tol;
    o.max_iters = max_iters;
    o.threads = threads;
    return o;
  }
  json config(int D) const { return {{"degree", D}, {"tol", tol}, {"max_iters", max_iters}}; }
};

json exactness_json(const ExactnessReport& ex) {
  return {{"trials", ex.trials},
          {"max_error", ex.max_error},
          {"max_error_kernel", ex.max_error_kernel},
          {"max_error_random", ex.max_error_random},
          {"bound_holds", ex.bound_holds}};
}

json weight_json(const WeightBoundReport& wb) {
  return {{"n", wb.n},
          {"max_scaled", wb.max_scaled},
          {"min_scaled", wb.min_scaled},
          {"mean_scaled", wb.mean_scaled},
          {"negative", wb.negative},
          {"bin_edges", wb.bin_edges},
          {"bin_counts", wb.bin_counts}};
}

Runner add_cubature(CLI::App& app) {
  auto* sub = app.add_subcommand("cubature", "solve for positive cubature weights; writes rule JSON");
  auto c = std::make_shared<Common>();
  auto cv = std::make_shared<CoverArgs>();
  auto sv = std::make_shared<SolveArgs>();
  auto covering_path = std::make_shared<std::string>();
  auto trials = std::make_shared<int>(100);
  c->add_to(sub);
  cv->add_to(sub);
  sv->add_to(sub);
  sub->add_option("--covering", *covering_path, "covering JSON from `cover` (otherwise one is built)");
  sub->add_option("--trials", *trials, "exactness verification trials")->capture_default_str()->check(CLI::PositiveNumber);
  return [=](Ctx& ctx) {
    json cfg;
    Covering cov;
    std::string covering_hash;
    if (!covering_path->empty()) {
      const std::string text = read_file(*covering_path);
      covering_hash = sha256_hex(text);
      cov = covering_from_json(json::parse(text));
      cfg = c->config("cubature", cov.spec);
      cfg["covering_sha256"] = covering_hash;
      cfg["n"] = cv->n;
    } else {
      const auto s = c->spec();
      cov = cv->build(s, c->seed, c->threads);
      cfg = c->config("cubature", s);
      cfg.update(cv->config());
    }
    const int D = sv->degree > 0 ? sv->degree : 4 * cv->n;
    cfg.update(sv->config(D));
    cfg["trials"] = *trials;
    const auto rule = build_rule(cov, D, cv->n, sv->options(c->threads));
    json j = to_json(rule);
    j["exactness"] = exactness_json(verify_exactness(rule, *trials, mix_seed(c->seed, 0xe8ac7), c->threads));
    j["weight_bound"] = weight_json(weight_bound_report(rule, cv->n));
    j["covering"] = {{"r", cov.r}, {"nodes", cov.nodes.size()}, {"covered", cov.verification.covered}};
    stamp(j, cfg);
    emit(ctx, c->out, dump_artifact(j));
    if (!rule.converged) {
      warn(ctx, "not-converged", "residual " + format_double(rule.residual) + " above tolerance " + format_double(rule.tolerance),
           {{"residual", rule.residual}, {"tolerance", rule.tolerance}, {"iterations", rule.iterations}});
      return kNotConverged;
    }
    return kOk;
  };
}

// ---------------------------------------------------------------- mz

Runner add_mz(CLI::App& app) {
  auto* sub = app.add_subcommand("mz", "Marcinkiewicz-Zygmund ratio bands; writes CSV");
  auto c = std::make_shared<Common>();
  auto rules = std::make_shared<std::vector<std::string>>();
  auto n_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"8"});
  auto delta = std::make_shared<double>(0.5);
  auto degree_factor = std::make_shared<int>(4);
  auto p_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"0.5", "1", "2", "inf"});
  auto t_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"0", "max"});
  auto trials = std::make_shared<int>(20);
  auto centers = std::make_shared<int>(12);
  auto json_out = std::make_shared<std::string>();
  auto sv = std::make_shared<SolveArgs>();
  c->add_to(sub);
  sub->add_option("--rule", *rules, "rule JSON from `cubature` (repeatable); otherwise rules are built");
  sub->add_option("--n", *n_list, "degree parameters when building rules")->delimiter(',')->capture_default_str();
  sub->add_option("--delta", *delta, "covering radius delta/n when building rules")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--degree-factor", *degree_factor, "built rules are exact on degree factor*n")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--tol", sv->tol, "solver tolerance when building rules")->capture_default_str();
  sub->add_option("--p", *p_list, "exponents (inf allowed)")->delimiter(',')->capture_default_str();
  sub->add_option("--t", *t_list, "weight exponents t (max = min(p, 1))")->delimiter(',')->capture_default_str();
  sub->add_option("--trials", *trials, "random functions per n")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--centers", *centers, "centers per random function")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--json", *json_out, "also write the JSON report here");
  return [=](Ctx& ctx) {
    const auto ps = parse_reals(*p_list);
    std::vector<double> ts;
    for (const auto& t : *t_list) ts.push_back(t == "max" ? kTMax : parse_real(t));
    for (double p : ps) {
      if (!(p > 0.0)) throw ConfigError("--p values must be positive");
    }
    for (double t : ts) {
      if (t != kTMax && t < 0.0) throw ConfigError("--t values must be >= 0 or 'max'");
    }
    std::map<int, CubatureRule> by_n;
    json sources = json::array();
    json cfg;
    if (!rules->empty()) {
      for (const auto& path : *rules) {
        const std::string text = read_file(path);
        auto rule = rule_from_json(json::parse(text));
        sources.push_back({{"n", rule.n}, {"sha256", sha256_hex(text)}, {"nodes", rule.nodes.size()},
                           {"degree", rule.degree}, {"residual", rule.residual}, {"converged", rule.converged}});
        by_n[rule.n] = std::move(rule);
      }
      cfg = c->config("mz", by_n.begin()->second.spec);
    } else {
      const auto s = c->spec();
      const auto ns = parse_ints(*n_list, "--n", 1);
      cfg = c->config("mz", s);
      cfg["n"] = ns;
      cfg["delta"] = *delta;
      cfg["degree_factor"] = *degree_factor;
      cfg["tol"] = sv->tol;
      for (int n : ns) {
        CoverArgs cv;
        cv.n = n;
        cv.delta = *delta;
        const auto cov = cv.build(s, mix_seed(c->seed, static_cast<std::uint64_t>(n)), c->threads);
        auto rule = build_rule(cov, *degree_factor * n, n, sv->options(c->threads));
        sources.push_back({{"n", n}, {"nodes", rule.nodes.size()}, {"degree", rule.degree},
                           {"residual", rule.residual}, {"converged", rule.converged}});
        by_n[n] = std::move(rule);
      }
    }
    cfg["p"] = reals_json(ps);
    cfg["t"] = *t_list;
    cfg["trials"] = *trials;
    cfg["centers"] = *centers;
    MzOptions mo;
    mo.centers = *centers;
    mo.threads = c->threads;
    auto rep = mz_report(by_n, ps, ts, *trials, c->seed, mo);
    rep.provenance["config"] = cfg;
    rep.provenance["version"] = kVersion;
    rep.provenance["rules"] = sources;
    emit(ctx, c->out, csv_text(rep));
    if (!json_out->empty()) write_file(*json_out, dump_artifact(rep.to_json()));
    bool all_converged = std::all_of(by_n.begin(), by_n.end(), [](const auto& kv) { return kv.second.converged; });
    if (!all_converged) {
      warn(ctx, "not-converged", "at least one rule did not reach its residual tolerance");
      return kNotConverged;
    }
    return kOk;
  };
}

// ---------------------------------------------------------------- oscillation

Runner add_oscillation(CLI::App& app) {
  auto* sub = app.add_subcommand("oscillation", "oscillation inequality constants; writes CSV");
  auto c = std::make_shared<Common>();
  auto n_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"8"});
  auto d_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"0.5"});
  auto p = std::make_shared<double>(1.0);
  auto trials = std::make_shared<int>(5);
  c->add_to(sub);
  sub->add_option("--n", *n_list, "degree parameters")->delimiter(',')->capture_default_str();
  sub->add_option("--delta", *d_list, "covering radii delta/n")->delimiter(',')->capture_default_str();
  sub->add_option("--p", *p, "exponent, 1 <= p < inf")->capture_default_str();
  sub->add_option("--trials", *trials, "random functions per (n, delta)")->capture_default_str()->check(CLI::PositiveNumber);
  return [=](Ctx& ctx) {
    const auto s = c->spec();
    const auto ns = parse_ints(*n_list, "--n", 1);
    const auto deltas = parse_reals(*d_list);
    if (!(*p >= 1.0) || std::isinf(*p)) throw ConfigError("--p must satisfy 1 <= p < inf");
    for (double dl : deltas) {
      if (!(dl > 0.0)) throw ConfigError("--delta values must be positive");
    }
    ExperimentReport rep;
    rep.experiment = "oscillation";
    rep.key_columns = {"n", "delta", "p"};
    json cfg = c->config("oscillation", s);
    cfg["n"] = ns;
    cfg["delta"] = reals_json(deltas);
    cfg["p"] = *p;
    cfg["trials"] = *trials;
    for (int n : ns) {
      for (double dl : deltas) {
        CoverArgs cv;
        cv.n = n;
        cv.delta = dl;
        const std::uint64_t sd = mix_seed(mix_seed(c->seed, static_cast<std::uint64_t>(n)), std::hash<double>{}(dl));
        const auto cov = cv.build(s, sd, c->threads);
        OscillationOptions oo;
        oo.threads = c->threads;
        const auto res = oscillation_check(cov, n, *p, *trials, mix_seed(sd, 1), oo);
        const std::vector<double> key{static_cast<double>(n), dl, *p};
        rep.add(key, "max_constant", res.max_constant);
        rep.add(key, "mean_constant", res.mean_constant);
        rep.add(key, "multiplicity", res.multiplicity);
        rep.add(key, "nodes", static_cast<double>(cov.nodes.size()));
      }
    }
    rep.provenance["config"] = cfg;
    rep.provenance["version"] = kVersion;
    emit(ctx, c->out, csv_text(rep));
    return kOk;
  };
}

// ---------------------------------------------------------------- kernel-decay

Runner add_kernel_decay(CLI::App& app) {
  auto* sub = app.add_subcommand("kernel-decay", "localized kernel decay fits; writes CSV");
  auto c = std::make_shared<Common>();
  auto N_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"32", "64", "128"});
  auto ell_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"2", "4", "6", "8"});
  auto order_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"0"});
  auto grid = std::make_shared<int>(8192);
  auto profile_out = std::make_shared<std::string>();
  c->add_to(sub, false);
  sub->add_option("--N", *N_list, "kernel degrees N")->delimiter(',')->capture_default_str();
  sub->add_option("--ell", *ell_list, "decay exponents ell")->delimiter(',')->capture_default_str();
  sub->add_option("--order", *order_list, "derivative orders i")->delimiter(',')->capture_default_str();
  sub->add_option("--grid", *grid, "theta grid size")->capture_default_str()->check(CLI::Range(16, 1 << 22));
  sub->add_option("--profile-out", *profile_out, "also write |K^(i)(cos theta)| profiles as CSV");
  return [=](Ctx& ctx) {
    const auto s = c->spec();
    const auto Ns = parse_ints(*N_list, "--N", 1);
    const auto ells = parse_ints(*ell_list, "--ell", 0);
    const auto orders = parse_ints(*order_list, "--order", 0);
    const KernelSpec probe{1, Cutoff::canonical()};
    kernel_eval(s, probe, 1.0);  // rejects ε = 2 before any work
    ExperimentReport rep, prof;
    rep.experiment = "kernel-decay";
    rep.key_columns = {"N", "ell", "order"};
    prof.experiment = "kernel-decay-profile";
    prof.key_columns = {"N", "ell", "order", "theta"};
    json cfg{{"command", "kernel-decay"}, {"manifold", std::string(kind_name(s.kind))}, {"d", s.d},
             {"N", Ns}, {"ell", ells}, {"order", orders}, {"grid", *grid}, {"eta", probe.eta.name()}};
    for (int N : Ns) {
      for (int ell : ells) {
        for (int i : orders) {
          const auto r = kernel_decay_profile(s, {N, Cutoff::canonical()}, ell, i, *grid);
          const std::vector<double> key{static_cast<double>(N), static_cast<double>(ell), static_cast<double>(i)};
          rep.add(key, "tail_slope", r.tail_slope);
          rep.add(key, "implied_constant", r.implied_constant);
          rep.add(key, "argmax_theta", r.argmax_theta);
          rep.add(key, "tail_points", r.tail_points);
          rep.add(key, "value_at_one", r.value_at_one);
          if (!profile_out->empty()) {
            for (const auto& row : r.rows) {
              prof.add({key[0], key[1], key[2], row.theta}, "abs_value", row.value);
              prof.add({key[0], key[1], key[2], row.theta}, "ratio", row.ratio);
            }
          }
        }
      }
    }
    rep.provenance["config"] = cfg;
    rep.provenance["version"] = kVersion;
    emit(ctx, c->out, csv_text(rep));
    if (!profile_out->empty()) {
      prof.provenance = rep.provenance;
      write_file(*profile_out, csv_text(prof));
    }
    return kOk;
  };
}

// ---------------------------------------------------------------- rate

Runner add_rate(CLI::App& app) {
  auto* sub = app.add_subcommand("rate", "approximation-rate fits for delayed means; writes CSV");
  auto c = std::make_shared<Common>();
  auto r_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"1", "2"});
  auto N_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"8", "16", "32", "64"});
  auto p = std::make_shared<std::string>("2");
  auto spectrum = std::make_shared<std::string>("scale-balanced");
  auto centers = std::make_shared<int>(16);
  c->add_to(sub);
  sub->add_option("--r", *r_list, "smoothness orders")->delimiter(',')->capture_default_str();
  sub->add_option("--N", *N_list, "ascending degrees (at least 3)")->delimiter(',')->capture_default_str();
  sub->add_option("--p", *p, "error norm exponent")->capture_default_str();
  sub->add_option("--spectrum", *spectrum, "test-function spectrum")
      ->capture_default_str()
      ->check(CLI::IsMember({"scale-balanced", "white"}));
  sub->add_option("--centers", *centers, "centers of the random test function")->capture_default_str()->check(CLI::PositiveNumber);
  return [=](Ctx& ctx) {
    const auto s = c->spec();
    const auto rs = parse_reals(*r_list);
    const auto Ns = parse_ints(*N_list, "--N", 1);
    const double pv = parse_real(*p);
    if (!(pv > 0.0)) throw ConfigError("--p must be positive");
    if (Ns.size() < 3 || !std::is_sorted(Ns.begin(), Ns.end())) throw ConfigError("--N must be ascending with >= 3 entries");
    for (double r : rs) {
      if (!(r > 0.0)) throw ConfigError("--r values must be positive");
    }
    RateOptions ro;
    ro.profile = *spectrum == "white" ? SpectrumProfile::White : SpectrumProfile::ScaleBalanced;
    ro.centers = *centers;
    ro.threads = c->threads;
    ExperimentReport rep;
    rep.experiment = "rate";
    rep.key_columns = {"r", "N"};
    for (double r : rs) {
      const auto fit = approx_rate(s, r, pv, Ns, c->seed, ro);
      for (std::size_t i = 0; i < Ns.size(); ++i) rep.add({r, static_cast<double>(Ns[i])}, "error", std::exp(fit.y[i]));
      rep.add({r, 0.0}, "slope", fit.slope);
      rep.add({r, 0.0}, "intercept", fit.intercept);
      rep.add({r, 0.0}, "r2", fit.r2);
      rep.add({r, 0.0}, "degenerate", fit.degenerate ? 1.0 : 0.0);
    }
    json cfg = c->config("rate", s);
    cfg["r"] = reals_json(rs);
    cfg["N"] = Ns;
    cfg["p"] = reals_json({pv})[0];
    cfg["spectrum"] = *spectrum;
    cfg["centers"] = *centers;
    rep.provenance["config"] = cfg;
    rep.provenance["version"] = kVersion;
    emit(ctx, c->out, csv_text(rep));
    return kOk;
  };
}

// ---------------------------------------------------------------- bumps

Runner add_bumps(CLI::App& app) {
  auto* sub = app.add_subcommand("bumps", "bump-function fixtures and their scale diagnostics; writes CSV");
  auto c = std::make_shared<Common>();
  auto m_list = std::make_shared<std::vector<std::string>>(std::vector<std::string>{"8", "16", "32"});
  auto count = std::make_shared<int>(5);
  c->add_to(sub);
  sub->add_option("--m", *m_list, "bump scales m")->delimiter(',')->capture_default_str();
  sub->add_option("--count", *count, "separated centers per scale")->capture_default_str()->check(CLI::PositiveNumber);
  return [=](Ctx& ctx) {
    const auto s = c->spec();
    const auto ms = parse_reals(*m_list);
    for (double m : ms) {
      if (!(m >= 1.0) || std::isinf(m)) throw ConfigError("--m values must be finite and >= 1");
    }
    ExperimentReport rep;
    rep.experiment = "bumps";
    rep.key_columns = {"m"};
    for (double m : ms) {
      const auto fx = bump_fixture(s, m, *count, mix_seed(c->seed, std::hash<double>{}(m)));
      rep.add({m}, "norm1", fx.norm1);
      rep.add({m}, "norm2", fx.norm2);
      rep.add({m}, "norm1_scaled", fx.norm1_scaled);
      rep.add({m}, "norm2_scaled", fx.norm2_scaled);
      rep.add({m}, "laplacian_scaled", fx.laplacian_scaled);
      rep.add({m}, "min_center_distance", fx.min_center_distance);
    }
    json cfg = c->config("bumps", s);
    cfg["m"] = reals_json(ms);
    cfg["count"] = *count;
    rep.provenance["config"] = cfg;
    rep.provenance["version"] = kVersion;
    emit(ctx, c->out, csv_text(rep));
    return kOk;
  };
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximation experiments on compact two-point homogeneous spaces", "ctphs"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  std::vector<std::pair<CLI::App*, Runner>> commands;
  for (auto add : {add_spec, add_cover, add_cubature, add_mz, add_oscillation, add_kernel_decay, add_rate, add_bumps}) {
    auto runner = add(app);
    commands.emplace_back(app.get_subcommands({}).back(), std::move(runner));
  }

  Ctx ctx{out, err};
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help / --version
      std::ostringstream msg;
      app.exit(e, msg, msg);
      out << msg.str();
      return kOk;
    }
    warn(ctx, "usage", e.what());
    return kInvalidConfig;
  }

  for (auto& [sub, runner] : commands) {
    if (!sub->parsed()) continue;
    try {
      return runner(ctx);
    } catch (const BudgetExceeded& e) {
      json diag = json::parse(e.diagnostics(), nullptr, false);
      warn(ctx, e.category(), e.what(), {{"diagnostics", diag.is_discarded() ? json(e.diagnostics()) : diag}});
      return kBudgetExceeded;
    } catch (const ParameterError& e) {
      warn(ctx, e.category(), e.what());
      return kInvalidConfig;
    } catch (const UnsupportedKind& e) {
      warn(ctx, e.category(), e.what());
      return kInvalidConfig;
    } catch (const json::exception& e) {
      warn(ctx, "parameter", std::string("malformed JSON input: ") + e.what());
      return kInvalidConfig;
    } catch (const Error& e) {
      warn(ctx, e.category(), e.what());
      return kFailure;
    } catch (const std::exception& e) {
      warn(ctx, "error", e.what());
      return kFailure;
    }
  }
  return kFailure;
}

}  // namespace ctphs::cli
