// bigcheck: M-bigness checks for finite matrix groups, the trichotomy corpus
// experiment and the lemma sweeps.
//
// Exit codes: 0 ok, 1 other error, 2 parse/config error, 3 budget or cap,
// 4 oracle mismatch, 5 lemma-predicted property failed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bigcheck/harness.hpp"
#include "bigcheck/regular.hpp"

using namespace bigcheck;

namespace {

constexpr int kExitOk = 0, kExitError = 1, kExitParse = 2, kExitBudget = 3, kExitOracle = 4,
              kExitLemma = 5;

std::size_t default_cap() {
  if (const char *env = std::getenv("BIGCHECK_CAP")) {
    char *end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0)
      return static_cast<std::size_t>(v);
    throw ParseError("BIGCHECK_CAP must be a positive integer");
  }
  return kDefaultClosureCap;
}

class Output {
public:
  explicit Output(const std::string &path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_)
        throw ParseError("cannot write " + path);
    }
  }
  std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

std::string csv_join(const std::vector<std::int64_t> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

// --- check ---

struct CheckArgs {
  std::string group;
  unsigned M = 1;
  bool oracle = false, timing = false, short_circuit = false;
  std::size_t submodule_cap = kDefaultSubmoduleCap;
  std::uint64_t seed = kDefaultModuleSeed;
  std::string out;
};

int cmd_check(const CheckArgs &a, std::size_t cap) {
  Group g = group_from_json(read_json_file(a.group), cap);
  BignessOptions opts;
  opts.short_circuit = a.short_circuit;
  opts.submodule_cap = a.submodule_cap;
  opts.seed = a.seed;
  opts.timing = a.timing;
  auto rep = check_m_big(g, a.M, opts);
  Json j = report_to_json(rep, *g);
  int code = kExitOk;
  if (a.oracle) {
    auto o = naive_oracle_check(g, a.M);
    std::vector<std::string> mismatched;
    auto cmp = [&](const char *name, bool x, bool y) {
      if (x != y)
        mismatched.push_back(name);
    };
    if (!a.short_circuit) {
      cmp("no_l_power_quotient", rep.cond_quotient, o.cond_quotient);
      cmp("h0", rep.cond_h0, o.cond_h0);
      cmp("h1", rep.cond_h1, o.cond_h1);
      cmp("witnesses", rep.cond_witnesses, o.cond_witnesses);
    }
    cmp("verdict", rep.big, o.big);
    Json oj;
    oj["verdict"] = o.verdict();
    oj["failing_conditions"] = o.failing_conditions();
    oj["agrees"] = mismatched.empty();
    oj["mismatched"] = mismatched;
    j["oracle"] = std::move(oj);
    if (!mismatched.empty())
      code = kExitOracle;
  }
  Output out(a.out);
  out.stream() << j.dump(2) << "\n";
  return code;
}

// --- trichotomy ---

struct TrichotomyArgs {
  std::string config, out, summary;
};

int cmd_trichotomy(const TrichotomyArgs &a, unsigned jobs, std::size_t cap, bool cap_from_env) {
  auto cfg = trichotomy_config_from_json(read_json_file(a.config));
  if (cap_from_env)
    cfg.closure_cap = cap;
  auto records = run_trichotomy(cfg, jobs);
  auto summary = summarize(records);
  Output out(a.out);
  for (const auto &r : records)
    out.stream() << record_to_json(r).dump() << "\n";
  Json s = summary_to_json(summary);
  if (a.summary.empty()) {
    Json wrapped;
    wrapped["summary"] = std::move(s);
    out.stream() << wrapped.dump() << "\n";
  } else {
    Output so(a.summary);
    so.stream() << s.dump(2) << "\n";
  }
  return kExitOk;
}

// --- lemmas ---

struct LemmaArgs {
  std::string suite, format = "json", out;
  bool rows = false;
  // forced_zero
  unsigned dmax = 8;
  // niveau
  std::uint64_t N = 3, delta = 2, max_modulus = 1'000'000;
  std::vector<std::uint64_t> l;
  unsigned d = 3;
  // convolution
  std::size_t random = 1000;
  std::uint64_t seed = 7;
  // orbit_bound
  std::vector<unsigned> ds{3, 4, 6};
  std::uint64_t lmin = 11, lmax = 97;
  std::vector<std::size_t> xi{1, 2};
  std::vector<std::int64_t> nbound{1, 2};
  // regular_t
  unsigned M = 1;
};

int emit(const LemmaArgs &a, Json summary, const std::vector<std::string> &header,
         const std::vector<std::vector<std::string>> &rows, const Json &json_rows, bool pass) {
  summary["pass"] = pass;
  Output out(a.out);
  if (a.format == "csv") {
    auto &s = out.stream();
    for (std::size_t i = 0; i < header.size(); ++i)
      s << (i ? "," : "") << header[i];
    s << "\n";
    for (const auto &r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i)
        s << (i ? "," : "") << r[i];
      s << "\n";
    }
  } else {
    if (a.rows)
      summary["rows"] = json_rows;
    out.stream() << summary.dump(2) << "\n";
  }
  return pass ? kExitOk : kExitLemma;
}

int suite_forced_zero(const LemmaArgs &a, unsigned jobs) {
  auto s = forced_zero_sweep(a.dmax, jobs);
  Json j;
  j["suite"] = "forced_zero";
  j["d_max"] = s.d_max;
  j["examined"] = s.examined;
  j["hypotheses_hold"] = s.hypotheses_hold;
  j["counterexamples"] = s.counterexamples;
  j["counterexamples_without_unit"] = s.counterexamples_without_unit.size();
  std::vector<std::vector<std::string>> rows;
  for (const auto &m : s.counterexamples)
    rows.push_back({csv_join(m), "with_unit"});
  for (const auto &m : s.counterexamples_without_unit)
    rows.push_back({csv_join(m), "without_unit"});
  Json jr = Json::array();
  for (const auto &m : s.counterexamples_without_unit)
    jr.push_back(m);
  return emit(a, j, {"mu", "hypothesis_set"}, rows, jr, s.counterexamples.empty());
}

int suite_niveau(const LemmaArgs &a, unsigned jobs) {
  std::vector<NiveauRow> rows;
  if (!a.l.empty()) {
    for (auto l : a.l)
      rows.push_back({a.N, a.delta, l, a.d, niveau_injectivity_check(a.N, a.delta, l, a.d)});
  } else {
    rows = niveau_sweep(a.N, a.delta, a.d, a.max_modulus, jobs);
  }
  std::size_t applicable = 0, failures = 0, below = 0, below_collisions = 0;
  std::vector<std::vector<std::string>> csv;
  Json jr = Json::array(), fails = Json::array();
  for (const auto &r : rows) {
    const bool app = r.l > (3 * r.delta + 2) * factorial(r.N);
    applicable += app;
    below += !app;
    below_collisions += !app && !r.result.injective;
    failures += app && !r.result.injective;
    csv.push_back({std::to_string(r.N), std::to_string(r.delta), std::to_string(r.l),
                   std::to_string(r.d), app ? "1" : "0", r.result.injective ? "1" : "0"});
    Json x;
    x["N"] = r.N;
    x["delta"] = r.delta;
    x["l"] = r.l;
    x["d"] = r.d;
    x["above_threshold"] = app;
    x["injective"] = r.result.injective;
    if (!r.result.injective) {
      x["r"] = r.result.r;
      x["b1"] = r.result.b1;
      x["b2"] = r.result.b2;
      if (app)
        fails.push_back(x);
    }
    jr.push_back(std::move(x));
  }
  Json j;
  j["suite"] = "niveau";
  j["points"] = rows.size();
  j["above_threshold"] = applicable;
  j["failures"] = std::move(fails);
  j["below_threshold"] = below;
  j["below_threshold_collisions"] = below_collisions;
  if (rows.size() == 1) // a single point always reports its outcome
    j["result"] = jr[0];
  return emit(a, j, {"N", "delta", "l", "d", "above_threshold", "injective"}, csv, jr,
              failures == 0);
}

int suite_convolution(const LemmaArgs &a, unsigned jobs) {
  std::size_t mismatches = 0;
  std::vector<ConvolutionRow> rows;
  try {
    rows = convolution_sweep(a.random, a.seed, 24, 2, jobs);
  } catch (const PreconditionViolation &) {
    mismatches = 1;
  }
  std::vector<std::vector<std::string>> csv;
  Json jr = Json::array();
  for (const auto &r : rows) {
    csv.push_back({csv_join(r.mu), std::to_string(r.rank.fourier),
                   std::to_string(r.rank.elimination)});
    Json x;
    x["mu"] = r.mu;
    x["fourier_rank"] = r.rank.fourier;
    x["elimination_rank"] = r.rank.elimination;
    jr.push_back(std::move(x));
  }
  Json j;
  j["suite"] = "convolution";
  j["profiles"] = a.random;
  j["seed"] = a.seed;
  j["mismatches"] = mismatches;
  return emit(a, j, {"mu", "fourier_rank", "elimination_rank"}, csv, jr, mismatches == 0);
}

int suite_orbit_bound(const LemmaArgs &a, unsigned jobs) {
  auto s = orbit_bound_sweep(a.ds, a.lmin, a.lmax, a.xi, a.nbound, jobs);
  std::vector<std::vector<std::string>> csv;
  Json jr = Json::array(), fails = Json::array();
  for (const auto &r : s.rows) {
    std::ostringstream bound;
    bound.precision(17);
    bound << r.result.bound;
    csv.push_back({std::to_string(r.d), std::to_string(r.l), std::to_string(r.q),
                   std::to_string(r.xi), std::to_string(r.N), std::to_string(r.omega),
                   csv_join(r.mu), std::to_string(r.result.orbit), bound.str(),
                   r.result.pass ? "1" : "0"});
    Json x;
    x["d"] = r.d;
    x["l"] = r.l;
    x["q"] = r.q;
    x["xi"] = r.xi;
    x["N"] = r.N;
    x["omega"] = r.omega;
    x["mu"] = r.mu;
    x["orbit"] = r.result.orbit;
    x["bound"] = r.result.bound;
    x["pass"] = r.result.pass;
    if (!r.result.pass)
      fails.push_back(x);
    jr.push_back(std::move(x));
  }
  Json j;
  j["suite"] = "orbit_bound";
  j["K"] = s.k;
  j["cases"] = s.rows.size();
  j["hypothesis_failed"] = s.skipped_hypothesis;
  j["violations"] = std::move(fails);
  return emit(a, j,
              {"d", "l", "q", "xi", "N", "omega", "mu", "orbit", "bound", "pass"}, csv, jr,
              s.violations == 0);
}

int suite_regular_t(const LemmaArgs &a, unsigned jobs) {
  const std::vector<std::uint64_t> primes = a.l.empty() ? std::vector<std::uint64_t>{11, 13} : a.l;
  const std::int64_t N = a.nbound.empty() ? 1 : a.nbound.front();
  const std::size_t xi = a.xi.empty() ? 2 : a.xi.front();
  auto rows = regular_t_sweep(primes, N, xi, a.M, jobs);
  std::size_t failures = 0;
  std::vector<std::vector<std::string>> csv;
  Json jr = Json::array();
  for (const auto &r : rows) {
    std::string degs;
    for (std::size_t i = 0; i < r.torus.degrees.size(); ++i)
      degs += (i ? " " : "") + std::to_string(r.torus.degrees[i]);
    // the lemma's threshold with Omega = 1 is 2 Xi N
    const bool applicable = r.torus.l > 2 * xi * static_cast<std::uint64_t>(N);
    failures += applicable && !r.result.t;
    std::string t;
    if (r.result.t)
      for (std::size_t i = 0; i < r.result.t->size(); ++i)
        t += (i ? " " : "") + std::to_string((*r.result.t)[i]);
    std::ostringstream frac;
    frac.precision(17);
    frac << r.result.collision_fraction();
    csv.push_back({std::to_string(r.torus.l), std::to_string(r.torus.d), degs,
                   std::to_string(r.profile_count), t, std::to_string(r.result.collisions),
                   frac.str()});
    Json x;
    x["l"] = r.torus.l;
    x["d"] = r.torus.d;
    x["degrees"] = r.torus.degrees;
    x["profiles"] = r.profile_count;
    x["t"] = r.result.t ? Json(*r.result.t) : Json(nullptr);
    x["collisions"] = r.result.collisions;
    x["torus_size"] = r.result.torus_size;
    x["collision_fraction"] = r.result.collision_fraction();
    jr.push_back(std::move(x));
  }
  Json j;
  j["suite"] = "regular_t";
  j["N"] = N;
  j["xi"] = xi;
  j["M"] = a.M;
  j["tori"] = rows.size();
  j["not_found"] = failures;
  return emit(a, j, {"l", "d", "degrees", "profiles", "t", "collisions", "collision_fraction"},
              csv, jr, failures == 0);
}

int cmd_lemmas(const LemmaArgs &a, unsigned jobs) {
  if (a.suite == "forced_zero")
    return suite_forced_zero(a, jobs);
  if (a.suite == "niveau")
    return suite_niveau(a, jobs);
  if (a.suite == "convolution")
    return suite_convolution(a, jobs);
  if (a.suite == "orbit_bound")
    return suite_orbit_bound(a, jobs);
  if (a.suite == "regular_t")
    return suite_regular_t(a, jobs);
  throw ParseError("unknown suite " + a.suite);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"M-bigness checks for finite subgroups of GL_n over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned jobs = 1;
  std::size_t closure_cap = 0;
  app.add_option("--jobs", jobs, "worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);
  app.add_option("--closure-cap", closure_cap, "group closure cap (default: BIGCHECK_CAP or 10^6)")
      ->check(CLI::PositiveNumber);

  CheckArgs check;
  auto *c = app.add_subcommand("check", "check one group given as JSON");
  c->add_option("group", check.group, "group JSON file")->required();
  c->add_option("--M", check.M, "M in M-big")->check(CLI::PositiveNumber);
  c->add_flag("--oracle", check.oracle, "cross-check with the brute-force oracle");
  c->add_flag("--timing", check.timing, "include wall-clock seconds (breaks byte-reproducibility)");
  c->add_flag("--short-circuit", check.short_circuit, "stop at the first failing condition");
  c->add_option("--submodule-cap", check.submodule_cap)->check(CLI::PositiveNumber);
  c->add_option("--seed", check.seed);
  c->add_option("--out", check.out, "write the report here instead of stdout");

  TrichotomyArgs tri;
  auto *t = app.add_subcommand("trichotomy", "classify the non-big groups of a corpus");
  t->add_option("config", tri.config, "corpus config JSON")->required();
  t->add_option("--out", tri.out, "JSON-lines records (default stdout)");
  t->add_option("--summary", tri.summary, "summary JSON (default: last line of the records)");

  LemmaArgs lem;
  auto *l = app.add_subcommand("lemmas", "run a lemma sweep");
  l->add_option("--suite", lem.suite)
      ->required()
      ->check(CLI::IsMember({"convolution", "forced_zero", "regular_t", "niveau", "orbit_bound"}));
  l->add_option("--format", lem.format)->check(CLI::IsMember({"json", "csv"}));
  l->add_option("--out", lem.out);
  l->add_flag("--rows", lem.rows, "include every row in JSON output");
  l->add_option("--dmax", lem.dmax)->check(CLI::PositiveNumber);
  l->add_option("--N", lem.N, "niveau: N (maximum for the grid)");
  l->add_option("--delta", lem.delta);
  l->add_option("--l", lem.l, "niveau/regular_t: primes (single points for niveau)");
  l->add_option("--d", lem.d)->check(CLI::PositiveNumber);
  l->add_option("--max-modulus", lem.max_modulus);
  l->add_option("--random", lem.random);
  l->add_option("--seed", lem.seed);
  l->add_option("--ds", lem.ds, "orbit_bound: values of d (>= 3)");
  l->add_option("--lmin", lem.lmin);
  l->add_option("--lmax", lem.lmax);
  l->add_option("--xi", lem.xi);
  l->add_option("--bound", lem.nbound, "orbit_bound/regular_t: entry bounds N");
  l->add_option("--M", lem.M)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    const bool cap_given = closure_cap != 0 || std::getenv("BIGCHECK_CAP");
    const std::size_t cap = closure_cap ? closure_cap : default_cap();
    if (*c)
      return cmd_check(check, cap);
    if (*t)
      return cmd_trichotomy(tri, jobs, cap, cap_given);
    if (*l)
      return cmd_lemmas(lem, jobs);
  } catch (const ParseError &e) {
    std::cerr << e.what() << "\n";
    return kExitParse;
  } catch (const LimitError &e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception &e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
