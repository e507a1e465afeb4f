#ifndef HNNWP_BASIS_MAP_HPP_
#define HNNWP_BASIS_MAP_HPP_

// An automorphism phi of a finitely generated subgroup H <= F(X), given by
// the images of the spanning-tree basis {w_e} of the subgroup graph of H.

#include <optional>  // for optional
#include <vector>    // for vector

#include "slp.hpp"        // for SlpOptions
#include "stallings.hpp"  // for SubgroupGraph, SpanningTree
#include "words.hpp"      // for word_type

namespace hnnwp {

  struct BasisMap {
    int                    rank = 0;
    SubgroupGraph          graph;
    SpanningTree           tree;
    std::vector<word_type> images;          // phi(w_e), reduced
    std::vector<word_type> inverse_images;  // phi^-1(w_e), reduced

    // phi^direction(h) for h in H (direction is +1 or -1).  Throws
    // Error(precondition) if h is not in H.
    word_type apply(word_type const& h, int direction) const;

    std::vector<word_type> const& basis() const noexcept {
      return tree.basis;
    }
  };

  // Folds gens into the graph of H and validates images as an automorphism
  // of H: every image lies in H and the images generate H (a surjective
  // endomorphism of a free group of finite rank is injective).  The inverse
  // is computed by a provenance fold over the images when not given, and is
  // always checked: phi(phi^-1(w_e)) = w_e.  Throws Error(invalid_instance).
  BasisMap make_basis_map(int                                          rank,
                          std::vector<word_type> const&                gens,
                          std::vector<word_type> const&                images,
                          std::optional<std::vector<word_type>> const& inverse_images = {},
                          SlpOptions const&                            opts = {});

  // Images of the basis of L(g) from images of keys.  Keys equal to basis
  // elements are used directly; otherwise the keys must form a free basis of
  // L(g) (they fold to g and there are rank(L(g)) of them) and every basis
  // element is re-expressed through them.  Throws Error(invalid_instance).
  std::vector<word_type> images_on_basis(SubgroupGraph const&          g,
                                         SpanningTree const&           t,
                                         std::vector<word_type> const& keys,
                                         std::vector<word_type> const& values);

}  // namespace hnnwp

#endif  // HNNWP_BASIS_MAP_HPP_
