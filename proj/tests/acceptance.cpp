// Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
// non-zero when any selected criterion fails.
//
//   acceptance [--criterion N]... --cli <bigcheck binary> --data <data dir>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "bigcheck/harness.hpp"
#include "bigcheck/parallel.hpp"
#include "bigcheck/regular.hpp"

using namespace bigcheck;

namespace {

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Paths {
  std::string cli, data;
};

std::string join(const std::vector<std::string> &v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + v[i];
  return s + "]";
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << " s";
  return o.str();
}

// --- criterion 1 corpus ---

struct CorpusEntry {
  std::string label;
  Group group;
};

constexpr std::size_t kCorpusMaxOrder = 5000;

// Seeded random subgroups of GL_n(F_l) of order <= 5000, plus a few named
// subgroups so that both verdicts and every failing condition occur.
std::vector<CorpusEntry> oracle_corpus() {
  std::vector<CorpusEntry> out;
  struct Slot {
    std::uint64_t l;
    std::size_t n;
    std::size_t want;
  };
  const std::array<Slot, 3> slots{{{5, 2, 20}, {7, 2, 20}, {5, 3, 14}}};
  std::uint64_t seed = 1000;
  for (const auto &s : slots) {
    auto f = make_field(s.l, 1);
    std::size_t got = 0;
    for (std::size_t tries = 0; got < s.want && tries < 2000; ++tries, ++seed) {
      // GL_3(F_5) two-generator subgroups are almost always huge
      const std::size_t gens = (s.n == 3 || seed % 3 == 0) ? 1 : 2;
      try {
        auto g = random_subgroup(f, s.n, gens, seed, kCorpusMaxOrder);
        out.push_back({"random GL" + std::to_string(s.n) + "(F" + std::to_string(s.l) +
                           ") seed=" + std::to_string(seed),
                       g.group});
        ++got;
      } catch (const CapExceeded &) {
      }
    }
  }
  auto f5 = make_field(5, 1), f7 = make_field(7, 1);
  auto add = [&](std::string label, Group g) { out.push_back({std::move(label), std::move(g)}); };
  add("GL2(F5)", MatrixGroup::close(f5, 2, gl_generators(f5, 2)));
  add("SL2(F5)", MatrixGroup::close(f5, 2, sl_generators(f5, 2)));
  add("GL2(F7)", MatrixGroup::close(f7, 2, gl_generators(f7, 2)));
  add("SL2(F7).k^x", sl_scalars(f7, 2).group);
  add("Borel GL2(F5)", reducible_group(f5, 2, 1).group);
  add("Borel GL2(F7)", reducible_group(f7, 2, 1).group);
  add("monomial GL2(F7)", imprimitive_wreath(f7, 1, 2).group);
  add("monomial GL3(F5)", imprimitive_wreath(f5, 1, 3).group);
  add("2.A4 GL2(F7)", binary_tetrahedral(f7));
  add("2.S4 GL2(F7)", binary_octahedral(f7));
  add("{I} GL3(F5)", MatrixGroup::close(f5, 3, {}));
  return out;
}

const char *cond_name(int i) {
  static const char *names[] = {"no_l_power_quotient", "h0", "h1", "witnesses", "verdict"};
  return names[i];
}

std::array<bool, 5> conditions(const BignessReport &r) {
  return {r.cond_quotient, r.cond_h0, r.cond_h1, r.cond_witnesses, r.big};
}

Outcome criterion_1(const Paths &) {
  const auto t0 = std::chrono::steady_clock::now();
  auto corpus = oracle_corpus();
  // per entry and M: fast report and oracle report condition vectors
  using Pair = std::array<std::array<bool, 5>, 2>;
  auto results = parallel_map<Pair>(corpus.size() * 2, jobs(), [&](std::size_t i) {
    const auto &g = corpus[i / 2].group;
    const unsigned M = 1 + i % 2;
    return Pair{conditions(check_m_big(g, M)), conditions(naive_oracle_check(g, M))};
  });
  std::size_t disagreements = 0, big = 0;
  const std::size_t checks = results.size();
  std::string first;
  for (std::size_t i = 0; i < results.size(); ++i) {
    big += results[i][0][4];
    for (int c = 0; c < 5; ++c) {
      if (results[i][0][c] != results[i][1][c]) {
        ++disagreements;
        if (first.empty())
          first = "; first: " + corpus[i / 2].label + " M=" + std::to_string(1 + i % 2) + " " +
                  cond_name(c);
        break;
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << corpus.size() << " groups, " << checks << " checks (" << big << " big), "
    << disagreements << " disagreements" << first << ", " << fmt_seconds(secs);
  return {corpus.size() >= 50 && disagreements == 0 && secs <= 600, d.str()};
}

Outcome criterion_2(const Paths &) {
  std::size_t cases = 0, bad = 0;
  std::string detail;
  for (std::size_t n : {2u, 3u}) {
    for (std::uint64_t l : {5u, 7u, 13u}) {
      auto f = make_field(l, 1);
      auto trivial = MatrixGroup::close(f, n, {});
      auto scalars = adjoin_scalars(*trivial);
      for (const auto &[name, g] : {std::pair{"{I}", trivial}, std::pair{"k^x", scalars}}) {
        auto r = check_m_big(g, 1);
        ++cases;
        const auto failing = r.failing_conditions();
        if (r.big || failing != std::vector<std::string>{"h0"}) {
          ++bad;
          if (detail.empty())
            detail = std::string("; e.g. ") + name + " n=" + std::to_string(n) +
                     " l=" + std::to_string(l) + " fails " + join(failing);
        }
      }
    }
  }
  return {bad == 0, std::to_string(cases) + " groups, " + std::to_string(bad) +
                        " not failing exactly [h0]" + detail};
}

Outcome criterion_3(const Paths &) {
  bool pass = true;
  std::string detail;
  for (std::uint64_t l : {7u, 13u}) {
    auto g = binary_tetrahedral_tensor(l);
    auto r1 = check_m_big(g.group, 1), r2 = check_m_big(g.group, 1);
    const bool stable = r1.failing_conditions() == r2.failing_conditions() &&
                        r1.witness_span_rank == r2.witness_span_rank;
    pass = pass && !r1.big && stable;
    detail += (detail.empty() ? "" : "; ") + std::string("l=") + std::to_string(l) + " " +
              r1.verdict() + " failing " + join(r1.failing_conditions()) + " span " +
              std::to_string(r1.witness_span_rank) + (stable ? " stable" : " unstable");
  }
  return {pass, detail};
}

Outcome criterion_4(const Paths &) {
  auto g = induced_tensor(make_field(13, 1), 3, 4);
  auto r = check_m_big(g.group, 1);
  return {!r.big, "order " + std::to_string(r.order) + ", " + r.verdict() + " failing " +
                      join(r.failing_conditions())};
}

Outcome criterion_5(const Paths &) {
  bool pass = true;
  std::string detail;
  for (std::uint64_t l : {7u, 11u, 13u}) {
    auto f = make_field(l, 1);
    for (const auto &[name, g] :
         {std::pair{std::string("GL2"), MatrixGroup::close(f, 2, gl_generators(f, 2))},
          std::pair{std::string("SL2.k^x"), sl_scalars(f, 2).group}}) {
      for (unsigned M : {1u, 2u}) {
        auto r = check_m_big(g, M);
        bool ok = r.big;
        if (l == 7) {
          auto o = naive_oracle_check(g, M);
          ok = ok && o.big && conditions(o) == conditions(r);
        }
        if (!ok) {
          pass = false;
          detail += name + "(F" + std::to_string(l) + ") M=" + std::to_string(M) + " ";
        }
      }
    }
  }
  return {pass, pass ? "12 checks big, oracle agrees at l=7" : "failed: " + detail};
}

Outcome criterion_6(const Paths &) {
  auto corpus = oracle_corpus();
  std::size_t diffs = 0;
  std::string first;
  for (const auto &e : corpus) {
    auto s = adjoin_scalars(*e.group);
    for (unsigned M : {1u, 2u}) {
      if (check_m_big(e.group, M).big != check_m_big(s, M).big) {
        ++diffs;
        if (first.empty())
          first = "; first: " + e.label + " M=" + std::to_string(M);
      }
    }
  }
  return {diffs == 0, std::to_string(corpus.size()) + " groups x M in {1,2}, " +
                          std::to_string(diffs) + " verdict differences" + first};
}

bool is_normal(const MatrixGroup &g, const MatrixGroup &h) {
  for (const auto &x : g.generators()) {
    const Matrix xi = x.inverse();
    for (const auto &y : h.generators())
      if (!h.contains(x * y * xi))
        return false;
  }
  return true;
}

Outcome criterion_7(const Paths &) {
  bool pass = true;
  std::string detail;
  for (std::uint64_t l : {7u, 11u}) {
    auto f = make_field(l, 1);
    auto gl = MatrixGroup::close(f, 2, gl_generators(f, 2));
    auto h = sl_scalars(f, 2).group;
    bool sub = true;
    for (const auto &y : h->generators())
      sub = sub && gl->contains(y);
    const std::size_t index = gl->order() / h->order();
    const bool hyp = sub && is_normal(*gl, *h) && gl->order() % h->order() == 0 && index % l != 0;
    const bool hb = check_m_big(h, 1).big, gb = check_m_big(gl, 1).big;
    const bool ok = hyp && (!hb || gb);
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + std::string("l=") + std::to_string(l) + " index " +
              std::to_string(index) + (hyp ? " normal" : " hypothesis FAILED") + ", sub " +
              (hb ? "big" : "not_big") + ", super " + (gb ? "big" : "not_big");
  }
  return {pass, detail};
}

Outcome criterion_8(const Paths &) {
  const auto t0 = std::chrono::steady_clock::now();
  auto s = orbit_bound_sweep({3, 4, 6}, 11, 97, {1, 2}, {1, 2}, jobs());
  const double secs = seconds_since(t0);
  return {s.violations == 0 && !s.rows.empty() && secs <= 300,
          std::to_string(s.rows.size()) + " cases, " + std::to_string(s.violations) +
              " violations, " + std::to_string(s.skipped_hypothesis) +
              " outside the hypotheses, " + fmt_seconds(secs)};
}

Outcome criterion_9(const Paths &) {
  auto s = forced_zero_sweep(8, jobs());
  return {s.counterexamples.empty() && s.examined > 0,
          std::to_string(s.examined) + " profiles, " + std::to_string(s.hypotheses_hold) +
              " with all sums zero, " + std::to_string(s.counterexamples.size()) +
              " counterexamples"};
}

Outcome criterion_10(const Paths &) {
  auto rows = niveau_sweep(3, 2, 3, 1'000'000, jobs());
  std::size_t fails = 0;
  for (const auto &r : rows)
    fails += !r.result.injective;
  return {fails == 0 && !rows.empty(),
          std::to_string(rows.size()) + " grid points, " + std::to_string(fails) +
              " non-injective"};
}

Outcome criterion_11(const Paths &p) {
  auto cfg = trichotomy_config_from_json(
      read_json_file(p.data + "/configs/trichotomy_default.json"));
  std::set<std::string> families;
  for (const auto &f : cfg.families)
    families.insert(f.at("family").get<std::string>());
  const std::vector<std::string> required{"reducible",
                                          "wreath",
                                          "tensor_product",
                                          "iterated_tensor",
                                          "sl_scalars",
                                          "almost_simple_lift",
                                          "binary_tetrahedral_tensor",
                                          "induced_tensor",
                                          "random"};
  std::vector<std::string> missing;
  for (const auto &r : required)
    if (!families.count(r) && !(r == "wreath" && families.count("imprimitive")))
      missing.push_back(r);
  auto records = run_trichotomy(cfg, jobs());
  auto s = summarize(records);
  std::ostringstream d;
  d << s.total << " records, " << s.not_big << " not big: " << s.not_abs_irreducible << " (1), "
    << s.induced << " (2), " << s.tensor_prime_to_l << " (3), " << s.unexplained
    << " unexplained, " << s.errors << " errors";
  if (!missing.empty())
    d << "; missing families " << join(missing);
  return {missing.empty() && s.unexplained == 0 && s.errors == 0 && cfg.n == 2 && cfg.M == 1,
          d.str()};
}

std::string run_capture(const std::string &cmd, int &status) {
  std::string out;
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome criterion_12(const Paths &p) {
  if (p.cli.empty())
    return {false, "no --cli binary given"};
  const std::string ex = p.data + "/examples/";
  const std::vector<std::string> commands{
      "check " + ex + "gl2_f7.json --M 2",
      "check " + ex + "identity_gl2_f7.json --oracle",
      "trichotomy " + p.data + "/configs/trichotomy_default.json --jobs 4",
      "lemmas --suite convolution --random 200 --seed 3 --rows",
      "lemmas --suite forced_zero --dmax 6 --format csv",
      "lemmas --suite regular_t --rows --jobs 3",
      "lemmas --suite niveau --N 2 --delta 1 --d 2 --format csv",
      "lemmas --suite orbit_bound --ds 3 --lmin 11 --lmax 31 --format csv",
  };
  std::size_t same = 0;
  std::string bad;
  for (const auto &c : commands) {
    int s1 = 0, s2 = 0;
    const std::string cmd = "'" + p.cli + "' " + c + " 2>&1";
    const auto a = run_capture(cmd, s1), b = run_capture(cmd, s2);
    if (a == b && s1 == s2 && !a.empty() && s1 == 0)
      ++same;
    else
      bad += " [" + c + "]";
  }
  return {same == commands.size(), std::to_string(same) + "/" + std::to_string(commands.size()) +
                                       " commands byte-identical across two runs" +
                                       (bad.empty() ? "" : "; differing or failing:" + bad)};
}

struct Criterion {
  int id;
  const char *title;
  std::function<Outcome(const Paths &)> run;
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> selected;
  Paths paths;
  app.add_option("--criterion", selected, "criterion number (repeatable; default all)")
      ->check(CLI::Range(1, 12));
  app.add_option("--cli", paths.cli, "path to the bigcheck binary");
  app.add_option("--data", paths.data, "path to the data directory")->required();
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "oracle agreement on the seeded corpus", criterion_1},
      {2, "{I} and scalars fail exactly h0", criterion_2},
      {3, "2.A4 tensor square is not 1-big for l in {7,13}", criterion_3},
      {4, "induced tensor over F13 with orders (3,4) is not 1-big", criterion_4},
      {5, "GL2 and SL2.k^x are 1- and 2-big", criterion_5},
      {6, "scalar invariance", criterion_6},
      {7, "normal subgroup of index prime to l", criterion_7},
      {8, "orbit size bound grid", criterion_8},
      {9, "forced vanishing of prime-power sums", criterion_9},
      {10, "niveau injectivity grid", criterion_10},
      {11, "trichotomy on the shipped corpus", criterion_11},
      {12, "CLI reproducibility", criterion_12},
  };
  int failures = 0;
  for (const auto &c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    Outcome o;
    try {
      o = c.run(paths);
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title
              << "): " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
