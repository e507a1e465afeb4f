#include <random>  // for mt19937_64

#include "catch_amalgamated.hpp"

#include "hnnwp/engine_normal.hpp"
#include "hnnwp/error.hpp"
#include "hnnwp/fixtures.hpp"
#include "hnnwp/oracle.hpp"
#include "test-support.hpp"

using namespace hnnwp;

namespace {
  word_type w(char const* s) {
    return parse_word(s, 2);
  }

  NormalInstance instance(Fixture const& f) {
    return precompute_normal(f.rank, f.gens, f.phi_images);
  }

  word_type label_of(NormalInstance const& inst, Slp const& p) {
    return free_reduce(test::explicit_value(label_slp(p, inst.graph())));
  }

  Slp circuit(NormalInstance const& inst, word_type const& h) {
    return Slp::from_word(trace_edges(inst.graph(), 0, h));
  }

  bool solve(NormalInstance const& inst, word_type const& x) {
    return solve_normal(inst, split_syllables(x)).trivial;
  }
}  // namespace

TEST_CASE("precompute: fixture A tables and constant", "[engine_normal]") {
  auto   inst = instance(fixture_a());
  size_t sum  = 0;
  for (auto const& b : inst.tree().basis) {
    sum += Slp::from_word(trace_edges(inst.graph(), 0, b)).size();
  }
  CHECK(inst.C == 4 * sum + 2);
  CHECK(inst.phi.inverse_images == inst.tree().basis);
}

TEST_CASE("precompute: inverse via provenance", "[engine_normal]") {
  auto inst = instance(fixture_c());
  // phi^-1: x -> y, y -> y^-1 x, z -> z.
  CHECK(inst.phi.inverse_images[0] == w("b"));
  CHECK(inst.phi.inverse_images[1] == w("Baa"));
  CHECK(inst.phi.inverse_images[2] == w("abA"));
  auto b = instance(fixture_b());
  CHECK(b.phi.inverse_images == b.phi.images);
}

TEST_CASE("precompute: invalid instances", "[engine_normal]") {
  auto gens = fixture_a().gens;
  CHECK_THROWS_AS(precompute_normal(2, gens, {w("a"), w("b"), w("abA")}), Error);
  CHECK_THROWS_AS(precompute_normal(2, gens, {w("aa"), w("aa"), w("abA")}), Error);
  CHECK_THROWS_AS(precompute_normal(2, gens, {w("aa"), w("b")}), Error);
  CHECK_THROWS_AS(precompute_normal(2, {w("a")}, {w("a")}), Error);
  auto d = fixture_d();
  CHECK_THROWS_AS(precompute_normal(2, d.gens, d.phi_images), Error);
  CHECK_THROWS_AS(precompute_normal(2, gens, fixture_b().phi_images,
                                    std::vector<word_type>{w("aa"), w("b"), w("abA")}),
                  Error);
  try {
    precompute_normal(2, {w("a")}, {w("a")});
  } catch (Error const& e) {
    CHECK(e.kind() == error_kind::invalid_instance);
  }
}

TEST_CASE("compile_input", "[engine_normal]") {
  auto inst = instance(fixture_b());
  auto hw   = compile_input(inst, parse_hnn_word("TaatB", 2));
  REQUIRE(hw.stable_count() == 2);
  CHECK(hw.signs == std::vector<int>{-1, 1});
  CHECK(hw.parts[0].empty_value());
  CHECK(hw.parts[1].length() == 2);
  CHECK(hw.ends[1] == 0);
  CHECK(hw.ends[2] == 0);
  CHECK(label_of(inst, hw.parts[2]) == w("B"));

  auto e = compile_input(inst, parse_hnn_word("", 2));
  CHECK(e.stable_count() == 0);
  CHECK(e.parts.size() == 1);
  auto aa = compile_input(inst, parse_hnn_word("aa", 2));
  CHECK(check_path(aa.parts[0], inst.graph()).terminus == 0);
}

TEST_CASE("apply_phi_slp", "[engine_normal]") {
  auto inst = instance(fixture_b());
  auto p    = apply_phi_slp(inst, circuit(inst, w("aa")), 1);
  CHECK(label_of(inst, p) == w("b"));
  auto pc = check_path(p, inst.graph());
  CHECK(pc.connected);
  CHECK(pc.origin == 0);
  CHECK(pc.terminus == 0);
  CHECK(is_empty_val(apply_phi_slp(inst, Slp(), 1)));
  CHECK_THROWS_AS(apply_phi_slp(inst, circuit(inst, w("a")), 1), Error);

  auto            c = instance(fixture_c());
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    auto h = substitute(test::random_word(rng, 3, 6), c.tree().basis);
    auto p1 = circuit(c, h);
    for (int d : {1, -1}) {
      auto q = apply_phi_slp(c, p1, d);
      CHECK(label_of(c, q) == c.phi.apply(h, d));
      CHECK(q.size() <= p1.size() + c.tables.weight(d));
    }
  }
}

TEST_CASE("britton_step_normal", "[engine_normal]") {
  auto inst = instance(fixture_b());
  auto p    = britton_step_normal(inst, Slp(), circuit(inst, w("aa")), circuit(inst, w("B")), 1);
  REQUIRE(p.has_value());
  CHECK(label_of(inst, *p).empty());
  CHECK(!britton_step_normal(inst, Slp(), circuit(inst, w("a")), Slp(), 1).has_value());

  std::mt19937_64 rng(77);
  for (auto f : {fixture_a(), fixture_b(), fixture_c()}) {
    auto inst2 = instance(f);
    for (int i = 0; i < 1000; ++i) {
      auto l = test::random_word(rng, 2, 10);
      auto h = substitute(test::random_word(rng, 3, 4), inst2.tree().basis);
      auto r = test::random_word(rng, 2, 10);
      int  d = i % 2 == 0 ? 1 : -1;
      auto L = circuit(inst2, l);
      auto M = circuit(inst2, h);
      auto R = circuit(inst2, r);
      auto P = britton_step_normal(inst2, L, M, R, d);
      REQUIRE(P.has_value());
      CHECK(P->size() <= L.size() + M.size() + R.size() + inst2.C);
      auto pc = check_path(*P, inst2.graph());
      CHECK((P->empty_value() || (pc.connected && pc.origin == 0)));
      CHECK(label_of(inst2, *P) == free_reduce(concat(concat(l, inst2.phi.apply(h, d)), r)));
    }
  }
}

TEST_CASE("solve_normal examples", "[engine_normal]") {
  auto a = instance(fixture_a());
  auto b = instance(fixture_b());
  CHECK(solve(b, parse_word("TaatB", 2, true)));
  CHECK(!solve(a, parse_word("Tat", 2, true)));
  CHECK(solve(a, {}));
  CHECK(solve(a, parse_word("abBA", 2, true)));
  CHECK(!solve(a, parse_word("t", 2, true)));
  CHECK(solve(a, parse_word("tT", 2, true)));
  auto r = solve_normal(b, parse_hnn_word("TaatB", 2));
  CHECK(r.stats.pinches == 1);
  CHECK(r.stats.ledger_violations == 0);
}

TEST_CASE("identity: t commutes with H", "[engine_normal]") {
  auto            a = instance(fixture_a());
  std::mt19937_64 rng(3);
  auto            check = [&](word_type const& h) {
    word_type x = {-stable_letter};
    x           = concat(concat(x, h), word_type{stable_letter});
    x           = concat(x, invert(h));
    CHECK(solve(a, x));
  };
  for (auto const& h : a.tree().basis) {
    check(h);
  }
  for (int i = 0; i < 100; ++i) {
    check(substitute(test::random_word(rng, 3, 8), a.tree().basis));
  }
}

TEST_CASE("oracle agreement on random words", "[engine_normal]") {
  std::mt19937_64 rng(12345);
  for (auto f : {fixture_a(), fixture_b(), fixture_c()}) {
    auto inst = instance(f);
    for (int i = 0; i < 3000; ++i) {
      auto x   = test::random_hnn_word(rng, 2, 12, 4);
      auto hw  = split_syllables(x);
      auto res = solve_normal(inst, hw);
      auto ora = naive_solve(inst.phi, hw);
      REQUIRE(ora != oracle_answer::budget_exceeded);
      CHECK(res.trivial == (ora == oracle_answer::trivial));
      CHECK(res.stats.ledger_violations == 0);
      // Padding with a cancelling pair of stable letters.
      word_type padded = concat(x, word_type{stable_letter, -stable_letter});
      CHECK(solve(inst, padded) == res.trivial);
    }
  }
}

TEST_CASE("oracle agreement on all short words", "[engine_normal]") {
  auto   a        = instance(fixture_a());
  size_t count    = 0;
  size_t mismatch = 0;
  test::for_each_hnn_word(2, 5, [&](word_type const& x) {
    auto hw = split_syllables(x);
    ++count;
    mismatch += solve_normal(a, hw).trivial != (naive_solve(a.phi, hw) == oracle_answer::trivial);
  });
  CHECK(count == 9331);
  CHECK(mismatch == 0);
}

TEST_CASE("growth of conjugates under fixture C", "[engine_normal]") {
  auto c = instance(fixture_c());
  for (unsigned n : {0u, 1u, 5u, 10u}) {
    word_type x(n, -stable_letter);
    x = concat(concat(x, w("aa")), word_type(n, stable_letter));
    auto res = solve_normal(c, split_syllables(x));
    CHECK(res.stats.reduced_length == growth_oracle(n));
  }
  CHECK(growth_oracle(0) == 2);
  CHECK(growth_oracle(1) == 3);
  word_type y = w("aa");
  for (int i = 0; i < 5; ++i) {
    y = c.phi.apply(y, 1);
  }
  CHECK(growth_oracle(5) == y.size());
}
