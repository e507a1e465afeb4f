#include <cmath>   // for ceil, log2
#include <random>  // for mt19937_64

#include "catch_amalgamated.hpp"

#include "hnnwp/error.hpp"
#include "hnnwp/fixtures.hpp"
#include "hnnwp/normalizable.hpp"
#include "test-support.hpp"

using namespace hnnwp;

namespace {
  BasisMap basis_map(Fixture const& f) {
    return make_basis_map(f.rank, f.gens, f.phi_images);
  }

  size_t log2_ceil(size_t m) {
    return static_cast<size_t>(std::ceil(std::log2(static_cast<double>(m))));
  }

  void check_chain(StabilizationReport const& rep) {
    for (size_t i = 1; i < rep.chain.size(); ++i) {
      CHECK(rep.indices[i] % rep.indices[i - 1] == 0);
      CHECK(contains(rep.chain[i - 1], rep.chain[i]));
    }
    if (rep.stabilized) {
      for (auto const& g : rep.chain) {
        CHECK(contains(g, rep.m_phi));
      }
      CHECK(is_normal(rep.m_phi));
      CHECK(rep.step <= log2_ceil(rep.index()));
    }
  }
}  // namespace

TEST_CASE("h_step", "[normalizable]") {
  auto a = basis_map(fixture_a());
  CHECK(h_step(a, a.graph) == a.graph);
  auto b = basis_map(fixture_b());
  CHECK(h_step(b, b.graph) == b.graph);
  auto d    = basis_map(fixture_d());
  auto core = h_step(d, d.graph);
  CHECK(regular_index(core) == 6);
  CHECK(core == normal_core(d.graph));
}

TEST_CASE("find_m_phi on the fixtures", "[normalizable]") {
  auto ra = find_m_phi(basis_map(fixture_a()));
  REQUIRE(ra.stabilized);
  CHECK(ra.step <= 1);
  CHECK(ra.m_phi == basis_map(fixture_a()).graph);
  CHECK(ra.serialize() == "step=0 index=2 normal=true\nM_phi index=2\n");
  check_chain(ra);

  for (auto f : {fixture_d(), fixture_e()}) {
    auto rd = find_m_phi(basis_map(f));
    REQUIRE(rd.stabilized);
    CHECK(rd.index() == 6);
    CHECK(rd.step == 1);
    CHECK(rd.serialize()
          == "step=0 index=3 normal=false\nstep=1 index=6 normal=true\nM_phi index=6\n");
    check_chain(rd);
  }

  auto none = find_m_phi(basis_map(fixture_d()), 0);
  CHECK(!none.stabilized);
  CHECK(none.serialize() == "step=0 index=3 normal=false\nbudget_exhausted\n");
}

TEST_CASE("restrict_phi", "[normalizable]") {
  auto a  = basis_map(fixture_a());
  auto ta = spanning_tree(a.graph);
  CHECK(restrict_phi(a.graph, ta, a) == ta.basis);
  auto b = basis_map(fixture_b());
  CHECK(restrict_phi(b.graph, b.tree, b) == b.images);

  for (auto f : {fixture_d(), fixture_e()}) {
    auto m    = basis_map(f);
    auto core = normal_core(m.graph);
    auto tc   = spanning_tree(core);
    auto imgs = restrict_phi(core, tc, m);
    CHECK(fold_from_generators(imgs, 2) == core);
    auto back = restrict_phi(core, tc, m, -1);
    for (size_t j = 0; j < tc.rank(); ++j) {
      CHECK(m.apply(back[j], 1) == tc.basis[j]);
    }
  }
  // H itself is not conjugation-stable as a normal subgroup, but phi(H) = H.
  auto e = basis_map(fixture_e());
  CHECK(fold_from_generators(restrict_phi(e.graph, e.tree, e), 2) == e.graph);
}

TEST_CASE("stability of meets and joins", "[normalizable]") {
  // Under phi = conjugation by h = bab, the core N and <h> are stable, and
  // so are their meet and join.
  auto e    = basis_map(fixture_e());
  auto core = normal_core(e.graph);
  auto stable = [&](SubgroupGraph const& k) {
    auto basis = spanning_tree(k).basis;
    return contains(k, image_subgroup(e.graph, e.tree, e.images, basis));
  };
  auto k1 = core;
  auto k2 = fold_from_generators({parse_word("bab", 2)}, 2);
  auto gens = spanning_tree(k1).basis;
  gens.push_back(parse_word("bab", 2));
  auto join = fold_from_generators(gens, 2);
  REQUIRE(stable(k1));
  REQUIRE(stable(k2));
  CHECK(stable(intersect(k1, k2)));
  CHECK(stable(join));
}
