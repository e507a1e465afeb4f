#ifndef HNNWP_FIXTURES_HPP_
#define HNNWP_FIXTURES_HPP_

// Small HNN instances used throughout the tests, the acceptance suite and the
// example instance files.  All live in F(a, b).
//
//   A: H = <aa, b, abA> (index 2, normal), phi = identity
//   B: same H, phi swaps x = aa and y = b, fixes z = abA
//   C: same H, phi: x -> xy, y -> x, z -> z (exponential growth)
//   D: H = stabiliser of the point 3 under a -> (1 2), b -> (1 2 3)
//      (index 3, not normal, a in H, b not), phi = identity
//   E: D's H with phi = conjugation by bab (an element of H)

#include <string>  // for string
#include <vector>  // for vector

#include "words.hpp"  // for word_type

namespace hnnwp {

  struct Fixture {
    std::string            name;
    int                    rank;
    std::vector<word_type> gens;        // a free basis of H, in spanning-tree order
    std::vector<word_type> phi_images;  // images of gens
  };

  Fixture fixture_a();
  Fixture fixture_b();
  Fixture fixture_c();
  Fixture fixture_d();
  Fixture fixture_e();

}  // namespace hnnwp

#endif  // HNNWP_FIXTURES_HPP_
