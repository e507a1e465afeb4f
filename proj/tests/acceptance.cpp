// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>    // for steady_clock
#include <cmath>     // for ceil, log2
#include <cstdio>    // for printf
#include <random>    // for mt19937_64
#include <sstream>   // for ostringstream
#include <string>    // for string

#include "hnnwp/cli.hpp"
#include "hnnwp/engine_general.hpp"
#include "hnnwp/engine_normal.hpp"
#include "hnnwp/fixtures.hpp"
#include "hnnwp/normalizable.hpp"
#include "hnnwp/oracle.hpp"
#include "test-support.hpp"

using namespace hnnwp;

namespace {
  using clock_type = std::chrono::steady_clock;

  int failures = 0;

  void report(int n, bool ok, std::string const& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
  }

  double seconds_since(clock_type::time_point t) {
    return std::chrono::duration<double>(clock_type::now() - t).count();
  }

  struct Tally {
    size_t cases = 0, agree = 0, budget = 0, ledger = 0;
  };

  // Suites 1 and 8 share one word set.
  struct NormalSuite {
    Tally  oracle;       // criterion 1
    Tally  cross;        // criterion 8
    size_t ledger = 0;   // criterion 3
  };

  void normal_case(NormalInstance const& n, GeneralInstance const& g, word_type const& x, NormalSuite& s) {
    HnnWordText hw  = split_syllables(x);
    SolveResult rn  = solve_normal(n, hw);
    auto        ora = naive_solve(n.phi, hw);
    ++s.oracle.cases;
    if (ora == oracle_answer::budget_exceeded) {
      ++s.oracle.budget;
    } else {
      s.oracle.agree += rn.trivial == (ora == oracle_answer::trivial);
    }
    s.ledger += rn.stats.ledger_violations;
    SolveResult rg = solve_general(g, hw);
    ++s.cross.cases;
    s.cross.agree += rg.trivial == rn.trivial;
    s.ledger += rg.stats.ledger_violations;
  }

  std::string tally_text(Tally const& t) {
    return std::to_string(t.agree) + "/" + std::to_string(t.cases) + " agree, "
           + std::to_string(t.budget) + " over oracle budget";
  }

  size_t log2_ceil(size_t m) {
    return m <= 1 ? 0 : static_cast<size_t>(std::ceil(std::log2(static_cast<double>(m))));
  }

  std::string run_cli(std::vector<std::string> const& args, int& code) {
    std::ostringstream out, err;
    code = run(args, out, err);
    return out.str() + err.str();
  }
}  // namespace

int main() {
  size_t ledger_total = 0;
  size_t ledger_solves = 0;

  // 1 and 8: fixtures A and B, all words of length <= 8, 10^4 random words.
  {
    auto        start = clock_type::now();
    NormalSuite s;
    for (auto f : {fixture_a(), fixture_b()}) {
      auto n = precompute_normal(f.rank, f.gens, f.phi_images);
      auto g = precompute_general(f.rank, f.gens, f.phi_images);
      test::for_each_hnn_word(2, 8, [&](word_type const& x) { normal_case(n, g, x, s); });
      std::mt19937_64 rng(20240601);
      for (int i = 0; i < 10000; ++i) {
        normal_case(n, g, test::random_hnn_word(rng, 2, 12, 4), s);
      }
    }
    double secs = seconds_since(start);
    ledger_total += s.ledger;
    ledger_solves += 2 * s.oracle.cases;
    char buf[64];
    std::snprintf(buf, sizeof(buf), ", %.1fs (limit 120s)", secs);
    report(1, s.oracle.agree == s.oracle.cases && secs < 120,
           "normal engine vs oracle on A, B: " + tally_text(s.oracle) + buf);
    report(8, s.cross.agree == s.cross.cases,
           "general vs normal engine on A, B: " + tally_text(s.cross));
  }

  // 2: fixture D with phi = id and with phi = conjugation by bab.
  {
    auto  start = clock_type::now();
    Tally t;
    for (auto f : {fixture_d(), fixture_e()}) {
      auto            g = precompute_general(f.rank, f.gens, f.phi_images);
      std::mt19937_64 rng(77);
      for (int i = 0; i < 10000; ++i) {
        HnnWordText hw  = split_syllables(test::random_hnn_word(rng, 2, 12, 4));
        SolveResult r   = solve_general(g, hw);
        auto        ora = naive_solve(g.phi, hw);
        ++t.cases;
        if (ora == oracle_answer::budget_exceeded) {
          ++t.budget;
        } else {
          t.agree += r.trivial == (ora == oracle_answer::trivial);
        }
        t.ledger += r.stats.ledger_violations;
      }
    }
    double secs = seconds_since(start);
    ledger_total += t.ledger;
    ledger_solves += t.cases;
    char buf[64];
    std::snprintf(buf, sizeof(buf), ", %.1fs (limit 180s)", secs);
    report(2, t.agree == t.cases && secs < 180,
           "general engine vs oracle on D, E: " + tally_text(t) + buf);
  }

  // 3: size ledger over every solve of suites 1 and 2.
  report(3, ledger_total == 0,
         std::to_string(ledger_total) + " size-bound violations over " + std::to_string(ledger_solves)
             + " solves");

  // 4: t^-n aa t^n on fixture C.
  {
    auto        f    = fixture_c();
    auto        inst = precompute_normal(f.rank, f.gens, f.phi_images);
    bool        ok   = true;
    std::string detail;
    for (unsigned n : {10u, 30u, 60u}) {
      word_type x(n, -stable_letter);
      x.push_back(1);
      x.push_back(1);
      x.insert(x.end(), n, stable_letter);
      auto   start = clock_type::now();
      auto   r     = solve_normal(inst, split_syllables(x));
      double secs  = seconds_since(start);
      bool   good  = r.stats.reduced_length == growth_oracle(n) && r.stats.final_size <= 64 * n;
      if (n == 10) {
        word_type expect = {1, 1};
        for (unsigned i = 0; i < n; ++i) {
          expect = inst.phi.apply(expect, 1);
        }
        good = good && decompress(label_slp(r.reduced, inst.graph()), 1 << 20) == expect;
      }
      if (n == 60) {
        good = good && secs < 5 && r.stats.reduced_length > length_type(1000000000000ULL);
      }
      ok = ok && good;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%sn=%u len=%s |P*|=%zu<=%u reduced=%zu %.4fs",
                    detail.empty() ? "" : "; ", n, to_string(r.stats.reduced_length).c_str(),
                    r.stats.final_size, 64 * n, r.stats.reduced_size, secs);
      detail += buf;
    }
    report(4, ok, "fixture C conjugate powers: " + detail);
  }

  // 5: compressed free reduction on 10^3 random SLPs, both equality modes.
  {
    bool        ok = true;
    std::string detail;
    for (auto mode : {equality_mode::fingerprint, equality_mode::recompression}) {
      SlpOps          ops(SlpOptions{mode, 99});
      std::mt19937_64 rng(5);
      size_t          agree = 0;
      for (int i = 0; i < 1000; ++i) {
        Slp p = test::random_slp(rng, 2, 10000, 80);
        agree += test::explicit_value(ops.free_reduce(p)) == test::naive_reduce(test::explicit_value(p));
      }
      uint64_t fp = ops.counters().fingerprint_compares;
      bool     m  = agree == 1000 && (mode == equality_mode::fingerprint || fp == 0);
      ok          = ok && m;
      detail += (detail.empty() ? "" : "; ") + std::string(mode == equality_mode::fingerprint ? "fingerprint" : "deterministic")
                + " " + std::to_string(agree) + "/1000, fingerprint compares " + std::to_string(fp)
                + ", recompression runs " + std::to_string(ops.counters().recompression_runs.load());
    }
    report(5, ok, "SLP free reduction: " + detail);
  }

  // 6: Stallings invariants.
  {
    std::mt19937_64 rng(6);
    size_t          same = 0;
    for (int i = 0; i < 50; ++i) {
      std::vector<word_type> gens;
      for (size_t j = 0, k = 1 + rng() % 4; j < k; ++j) {
        gens.push_back(test::random_word(rng, 2, 10));
      }
      same += fold_from_generators(gens, 2, 11).serialize()
              == fold_from_generators(gens, 2, 0xdeadbeef).serialize();
    }
    auto parity = fold_from_generators({{1, 1}, {2}, {1, 2, -1}}, 2);
    auto d      = fold_from_generators(fixture_d().gens, 2);
    auto core   = normal_core(d);
    bool ok     = same == 50 && regular_index(parity) == 2 && regular_index(core) == 6
              && shift_tables(core).self_similar;
    report(6, ok,
           "folding confluence " + std::to_string(same) + "/50, parity kernel index "
               + std::to_string(regular_index(parity).value_or(0)) + ", core of D index "
               + std::to_string(regular_index(core).value_or(0)) + ", self-similar "
               + (shift_tables(core).self_similar ? "yes" : "no"));
  }

  // 7: normalizability.
  {
    bool        ok = true;
    std::string detail;
    for (auto f : {fixture_a(), fixture_b(), fixture_c(), fixture_d(), fixture_e()}) {
      auto m   = make_basis_map(f.rank, f.gens, f.phi_images);
      auto rep = find_m_phi(m);
      bool good = rep.stabilized && rep.step <= log2_ceil(rep.index());
      if (f.name == "A") {
        good = good && rep.step <= 1 && rep.m_phi == m.graph;
      }
      if (f.name == "D") {
        good = good && rep.index() == 6;
      }
      ok = ok && good;
      detail += (detail.empty() ? "" : ", ") + f.name + ": step " + std::to_string(rep.step)
                + " index " + std::to_string(rep.index());
    }
    report(7, ok, "stable chains: " + detail);
  }

  // 9: oracle-check output is byte-identical across runs.
  {
    bool        ok = true;
    std::string dir = HNNWP_FIXTURE_DIR;
    for (std::string f : {"fixtureB.hnn", "fixtureE.hnn"}) {
      for (bool det : {false, true}) {
        std::vector<std::string> args = {"oracle-check", dir + "/" + f, "--random", "2000", "--seed", "42"};
        if (det) {
          args.insert(args.begin(), "--deterministic");
        }
        int  c1 = 0, c2 = 0;
        auto o1 = run_cli(args, c1);
        auto o2 = run_cli(args, c2);
        ok      = ok && o1 == o2 && c1 == 0 && c2 == 0 && !o1.empty();
      }
    }
    report(9, ok, "repeated oracle-check runs with seed 42 are byte-identical");
  }

  std::printf("%s\n", failures == 0 ? "ALL PASS" : "SOME CRITERIA FAILED");
  return failures == 0 ? 0 : 1;
}
