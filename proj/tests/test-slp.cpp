#include <random>  // for mt19937_64

#include "catch_amalgamated.hpp"

#include "grammar.hpp"
#include "hnnwp/error.hpp"
#include "hnnwp/slp.hpp"
#include "hnnwp/stallings.hpp"
#include "test-support.hpp"

using namespace hnnwp;
using P = Slp::Production;

namespace {
  // X_0 -> s, X_{i+1} -> X_i X_i.
  Slp doubling(symbol_type s, size_t k) {
    std::vector<P> prods = {P::leaf(s)};
    for (size_t i = 0; i < k; ++i) {
      prods.push_back(P::pair(static_cast<uint32_t>(i), static_cast<uint32_t>(i)));
    }
    return Slp::from_ordered(prods);
  }

  // (s -s)^{2^k}.
  Slp cancelling_chain(symbol_type s, size_t k) {
    std::vector<P> prods = {P::leaf(s), P::leaf(-s), P::pair(0, 1)};
    for (size_t i = 0; i < k; ++i) {
      prods.push_back(P::pair(static_cast<uint32_t>(2 + i), static_cast<uint32_t>(2 + i)));
    }
    return Slp::from_ordered(prods);
  }

  std::vector<SlpOptions> both_modes() {
    return {SlpOptions{equality_mode::fingerprint, 7},
            SlpOptions{equality_mode::recompression, 7}};
  }
}  // namespace

TEST_CASE("from_word and basic caches", "[slp]") {
  Slp e;
  CHECK(e.size() == 1);
  CHECK(is_empty_val(e));
  CHECK(e.first() == 0);

  word_type w = {1, 2, 1, -2, 1};
  auto      p = Slp::from_word(w);
  CHECK(p.size() == 3 + w.size() - 1);
  CHECK(p.length() == 5);
  CHECK(test::explicit_value(p) == w);
  auto fl = first_last(p);
  CHECK(fl.first == 1);
  CHECK(fl.last == 1);
  CHECK(p.depth() <= 3);
}

TEST_CASE("concat copies productions", "[slp]") {
  auto p = Slp::from_word({1, 2});
  auto q = Slp::from_word({-2, 3, 3});
  auto c = concat(p, q);
  CHECK(c.size() == p.size() + q.size() + 1);
  CHECK(test::explicit_value(c) == word_type{1, 2, -2, 3, 3});
  CHECK(test::explicit_value(concat(Slp(), p)) == word_type{1, 2});
}

TEST_CASE("decompress of exponential values", "[slp]") {
  auto p = doubling(1, 20);
  CHECK(p.size() == 21);
  CHECK(p.length() == (length_type(1) << 20));
  auto v = decompress(p, length_type(1) << 20);
  CHECK(v.size() == (size_t(1) << 20));
  CHECK_THROWS_AS(decompress(p, 1000), Error);
  CHECK(to_string(doubling(1, 100).length()) == "1267650600228229401496703205376");
  CHECK_THROWS_AS(doubling(1, 130), Error);
}

TEST_CASE("from_productions validates", "[slp]") {
  std::vector<P> cyclic = {P::leaf(1), P::pair(0, 2), P::pair(1, 0)};
  CHECK_THROWS_AS(Slp::from_productions(cyclic, 2), Error);
  std::vector<P> dangling = {P::leaf(1), P::pair(0, 5)};
  CHECK_THROWS_AS(Slp::from_productions(dangling, 1), Error);
  // Out-of-order but acyclic lists are reordered; unreachable entries go.
  std::vector<P> shuffled = {P::pair(2, 3), P::leaf(7), P::leaf(1), P::leaf(2)};
  auto           p        = Slp::from_productions(shuffled, 0);
  CHECK(p.size() == 3);
  CHECK(test::explicit_value(p) == word_type{1, 2});
}

TEST_CASE("edge paths and shifts", "[slp]") {
  auto g  = fold_from_generators({parse_word("aa", 2), parse_word("b", 2), parse_word("abA", 2)}, 2);
  auto es = trace_edges(g, 0, parse_word("abab", 2));
  auto p  = Slp::from_word(es);
  auto pc = check_path(p, g);
  CHECK(pc.connected);
  CHECK(pc.origin == 0);
  CHECK(pc.terminus == 0);
  auto bad = Slp::from_word({es[0], es[0]});
  CHECK(!check_path(bad, g).connected);

  auto ss = shift_tables(g);
  auto q  = shift_apply(p, ss.shifts, 1);
  auto qc = check_path(q, g);
  CHECK(qc.connected);
  CHECK(qc.origin == 1);
  CHECK(test::explicit_value(label_slp(q, g)) == test::explicit_value(label_slp(p, g)));
  CHECK(test::explicit_value(label_slp(p, g)) == parse_word("abab", 2));
}

TEST_CASE("equality and lcp against explicit values", "[slp]") {
  std::mt19937_64 rng(99);
  for (auto opts : both_modes()) {
    SlpOps ops(opts);
    for (int i = 0; i < 300; ++i) {
      auto p  = test::random_slp(rng, 2, 400, 30);
      auto q  = (i % 3 == 0) ? Slp::from_word(test::explicit_value(p)) : test::random_slp(rng, 2, 400, 30);
      auto pv = test::explicit_value(p);
      auto qv = test::explicit_value(q);
      CHECK(ops.equal(p, q) == (pv == qv));
      size_t k = 0;
      while (k < pv.size() && k < qv.size() && pv[k] == qv[k]) {
        ++k;
      }
      CHECK(ops.lcp(p, q) == k);
    }
    // Equal values with very different shapes.
    CHECK(ops.equal(doubling(1, 12), Slp::from_word(word_type(4096, 1))));
    CHECK(!ops.equal(doubling(1, 12), Slp::from_word(word_type(4095, 1))));
    if (opts.equality == equality_mode::recompression) {
      CHECK(ops.counters().fingerprint_compares == 0);
    }
  }
}

TEST_CASE("compressed free reduction against explicit reduction", "[slp]") {
  std::mt19937_64 rng(2024);
  for (auto opts : both_modes()) {
    SlpOps ops(opts);
    for (int i = 0; i < 1000; ++i) {
      auto p = test::random_slp(rng, 2, 300, 25);
      auto r = ops.free_reduce(p);
      CHECK(test::explicit_value(r) == test::naive_reduce(test::explicit_value(p)));
    }
    if (opts.equality == equality_mode::recompression) {
      CHECK(ops.counters().fingerprint_compares == 0);
    } else {
      CHECK(ops.counters().recompression_runs == 0);
    }
  }
}

TEST_CASE("cancelling chain reduces to the empty word", "[slp]") {
  for (auto opts : both_modes()) {
    for (size_t k : {0, 1, 5, 40, 100}) {
      auto r = free_reduce_slp(cancelling_chain(3, k), opts);
      CHECK(is_empty_val(r));
    }
    // a^{2^60} a^{-2^60} b: long cancellation across one seam.
    auto a  = doubling(1, 60);
    auto ai = doubling(-1, 60);
    auto r  = free_reduce_slp(concat(concat(a, ai), Slp::from_word({2})), opts);
    CHECK(r.length() == 1);
    CHECK(r.first() == 2);
    // Partial cancellation: a^{2^60} a^{-(2^60 - 1)}.
    auto part = concat(a, concat(doubling(-1, 59), free_reduce_slp(concat(doubling(-1, 59), Slp::from_word({1})), opts)));
    auto rp   = free_reduce_slp(part, opts);
    CHECK(rp.length() == 1);
    CHECK(rp.first() == 1);
  }
}

TEST_CASE("grammar store stays balanced", "[slp]") {
  std::mt19937_64   rng(8);
  detail::Grammar   g(true, 1);
  std::vector<detail::Grammar::node_id> roots;
  for (int i = 0; i < 200; ++i) {
    roots.push_back(g.import(test::random_slp(rng, 2, 1000, 40)));
  }
  for (int i = 0; i < 2000; ++i) {
    auto a = roots[rng() % roots.size()];
    auto b = roots[rng() % roots.size()];
    auto c = g.join(a, b);
    if (g.length(c) > 2) {
      c = g.prefix(c, g.length(c) - 1 - rng() % (static_cast<size_t>(g.length(c)) - 1));
    }
    roots.push_back(c);
    if (roots.size() > 400) {
      roots.erase(roots.begin());
    }
  }
  // Rotation temporaries may be unbalanced; everything reachable from a
  // result must not be.
  std::vector<bool>                     seen(g.size(), false);
  std::vector<detail::Grammar::node_id> stack(roots.begin(), roots.end());
  size_t                                bad = 0;
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    if (n == detail::Grammar::empty || seen[n] || g.node(n).sym != 0) {
      continue;
    }
    seen[n] = true;
    int b   = g.balance(n);
    bad += (b < -1 || b > 1);
    stack.push_back(g.node(n).left);
    stack.push_back(g.node(n).right);
  }
  CHECK(bad == 0);
  // Inverse and fingerprints are consistent with explicit values.
  for (int i = 0; i < 100; ++i) {
    auto                     n = roots[rng() % roots.size()];
    std::vector<symbol_type> v, vi;
    g.expand(n, g.length(n), v);
    g.expand(g.inverse(n), g.length(n), vi);
    CHECK(vi == invert(v));
    auto len = g.length(n) / 2;
    CHECK(g.prefix_fingerprint(n, len) == g.fingerprint(g.prefix(n, len)));
  }
}

TEST_CASE("small values", "[slp]") {
  Slp e;
  auto b = Slp::from_word(parse_word("b", 2));
  CHECK(test::explicit_value(Slp::from_word(parse_word("aab", 2))) == parse_word("aab", 2));
  CHECK(test::explicit_value(concat(Slp::from_word({1}), b)) == parse_word("ab", 2));
  CHECK(is_empty_val(concat(e, e)));
  auto fl = first_last(e);
  CHECK(fl.first == 0);
  CHECK(fl.last == 0);
  fl = first_last(concat(e, b));
  CHECK(fl.first == 2);
  CHECK(fl.last == 2);
  CHECK(doubling(1, 21).length() == (length_type(1) << 21));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    auto u = test::random_word(rng, 3, 1000);
    CHECK(test::explicit_value(Slp::from_word(u)) == u);
  }
}

TEST_CASE("path checks on small graphs", "[slp]") {
  auto g  = fold_from_generators({parse_word("aa", 2), parse_word("b", 2), parse_word("abA", 2)}, 2);
  auto ec = check_path(Slp{}, g);
  CHECK(ec.connected);
  CHECK(ec.origin == no_vertex);
  // b loops at the root, the loop labelled b at vertex 1 is a different edge.
  auto at_root = trace_edges(g, 0, parse_word("b", 2));
  auto at_one  = trace_edges(g, 1, parse_word("b", 2));
  REQUIRE(at_root.size() == 1);
  REQUIRE(at_one.size() == 1);
  CHECK(!check_path(Slp::from_word({at_root[0], at_one[0]}), g).connected);

  auto ss = shift_tables(g);
  auto p  = Slp::from_word(trace_edges(g, 0, parse_word("abAb", 2)));
  auto id = shift_apply(p, ss.shifts, 0);
  CHECK(id.serialize() == p.serialize());
  auto sh = shift_apply(p, ss.shifts, 1);
  CHECK(sh.length() == p.length());
  CHECK(is_empty_val(shift_apply(Slp{}, ss.shifts, 1)));
}

TEST_CASE("equality and lcp on small inputs", "[slp]") {
  for (auto opts : both_modes()) {
    auto p = Slp::from_word(parse_word("abab", 2));
    CHECK(equal_slp(p, p, opts));
    CHECK(equal_slp(Slp::from_word(parse_word("ab", 2)),
                    concat(Slp::from_word({1}), Slp::from_word({2})), opts));
    CHECK(lcp_len(p, p, opts) == 4);
    CHECK(lcp_len(Slp::from_word(parse_word("abc", 3)), Slp::from_word(parse_word("abd", 4)), opts) == 2);
    CHECK(is_empty_val(free_reduce_slp(Slp::from_word(parse_word("aA", 2)), opts)));
  }
}

TEST_CASE("free reduction is idempotent and commutes with labels", "[slp]") {
  std::mt19937_64 rng(77);
  auto g  = fold_from_generators({parse_word("aa", 2), parse_word("b", 2), parse_word("abA", 2)}, 2);
  for (auto opts : both_modes()) {
    for (int i = 0; i < 200; ++i) {
      auto p  = test::random_slp(rng, 2, 200, 20);
      auto r  = free_reduce_slp(p, opts);
      auto rv = test::explicit_value(r);
      for (size_t k = 1; k < rv.size(); ++k) {
        CHECK(rv[k] != -rv[k - 1]);
      }
      CHECK(test::explicit_value(free_reduce_slp(r, opts)) == rv);

      // A path reduces to a path whose label is the reduced label; the
      // graph is folded, so the two reductions agree.
      auto u    = test::random_word(rng, 2, 40);
      auto path = Slp::from_word(trace_edges(g, 0, u));
      auto pr   = free_reduce_slp(path, opts);
      CHECK(test::explicit_value(label_slp(pr, g)) == test::naive_reduce(u));
    }
  }
}
