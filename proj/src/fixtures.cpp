#include "hnnwp/fixtures.hpp"

#include "hnnwp/stallings.hpp"  // for SubgroupGraph, spanning_tree

namespace hnnwp {

  namespace {
    word_type w(char const* text) {
      return parse_word(text, 2);
    }

    std::vector<word_type> index3_stabiliser_basis() {
      // Points 0, 1, 2; a swaps 0 and 1, b cycles 0 -> 1 -> 2 -> 0.  The
      // stabiliser of 2 contains a but not b.
      SubgroupGraph g = SubgroupGraph::from_permutations(2, {{1, 0, 2}, {1, 2, 0}}, 2);
      return spanning_tree(g).basis;
    }
  }  // namespace

  Fixture fixture_a() {
    return {"A", 2, {w("aa"), w("b"), w("abA")}, {w("aa"), w("b"), w("abA")}};
  }

  Fixture fixture_b() {
    return {"B", 2, {w("aa"), w("b"), w("abA")}, {w("b"), w("aa"), w("abA")}};
  }

  Fixture fixture_c() {
    return {"C", 2, {w("aa"), w("b"), w("abA")}, {w("aab"), w("aa"), w("abA")}};
  }

  Fixture fixture_d() {
    auto basis = index3_stabiliser_basis();
    return {"D", 2, basis, basis};
  }

  Fixture fixture_e() {
    auto                   basis = index3_stabiliser_basis();
    std::vector<word_type> images;
    word_type const        h = w("bab");
    for (auto const& x : basis) {
      images.push_back(free_reduce(concat(concat(invert(h), x), h)));
    }
    return {"E", 2, basis, images};
  }

}  // namespace hnnwp
