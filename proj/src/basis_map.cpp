#include "hnnwp/basis_map.hpp"

#include <map>  // for map

#include "hnnwp/error.hpp"  // for Error, fail

namespace hnnwp {

  word_type BasisMap::apply(word_type const& h, int direction) const {
    return substitute(rewrite_in_basis(graph, tree, h), direction > 0 ? images : inverse_images);
  }

  BasisMap make_basis_map(int                                          rank,
                          std::vector<word_type> const&                gens,
                          std::vector<word_type> const&                images,
                          std::optional<std::vector<word_type>> const& inverse_images,
                          SlpOptions const&                            opts) {
    BasisMap m;
    m.rank  = rank;
    m.graph = fold_from_generators(gens, rank);
    m.tree  = spanning_tree(m.graph);
    size_t const n = m.tree.rank();
    if (images.size() != n) {
      fail(error_kind::invalid_instance,
           "expected " + std::to_string(n) + " images of basis elements, got "
               + std::to_string(images.size()));
    }
    for (size_t j = 0; j < n; ++j) {
      m.images.push_back(free_reduce(images[j]));
      if (!accepts(m.graph, m.images[j])) {
        fail(error_kind::invalid_instance,
             "phi(" + format_word(m.tree.basis[j]) + ") = " + format_word(m.images[j])
                 + " is not in H");
      }
    }
    if (fold_from_generators(m.images, rank) != m.graph) {
      fail(error_kind::invalid_instance, "phi is not surjective onto H");
    }
    if (inverse_images) {
      if (inverse_images->size() != n) {
        fail(error_kind::invalid_instance, "wrong number of inverse images");
      }
      for (auto const& x : *inverse_images) {
        m.inverse_images.push_back(free_reduce(x));
        if (!accepts(m.graph, m.inverse_images.back())) {
          fail(error_kind::invalid_instance,
               "inverse image " + format_word(x) + " is not in H");
        }
      }
    } else {
      auto ex = express_in_generators(m.images, rank, m.tree.basis);
      if (!ex) {
        fail(error_kind::invalid_instance, "phi is not surjective onto H");
      }
      for (auto const& e : *ex) {
        m.inverse_images.push_back(substitute(e, m.tree.basis));
      }
    }
    SlpOps ops(opts);
    for (size_t j = 0; j < n; ++j) {
      word_type back = m.apply(m.inverse_images[j], 1);
      if (!ops.equal(Slp::from_word(back), Slp::from_word(m.tree.basis[j]))) {
        fail(error_kind::invalid_instance,
             "phi(phi^-1(" + format_word(m.tree.basis[j]) + ")) = " + format_word(back));
      }
    }
    return m;
  }

  std::vector<word_type> images_on_basis(SubgroupGraph const&          g,
                                         SpanningTree const&           t,
                                         std::vector<word_type> const& keys,
                                         std::vector<word_type> const& values) {
    if (keys.size() != values.size()) {
      fail(error_kind::invalid_instance, "every key needs exactly one image");
    }
    std::map<word_type, word_type> given;
    for (size_t i = 0; i < keys.size(); ++i) {
      word_type k = free_reduce(keys[i]);
      if (!given.emplace(k, values[i]).second) {
        fail(error_kind::invalid_instance, "repeated key " + format_word(k));
      }
    }
    std::vector<word_type> out;
    for (auto const& b : t.basis) {
      auto it = given.find(b);
      if (it == given.end()) {
        break;
      }
      out.push_back(it->second);
    }
    if (out.size() == t.rank() && given.size() == t.rank()) {
      return out;
    }
    // Keys given on another free basis of the subgroup.
    std::vector<word_type> ks;
    std::vector<word_type> vs;
    for (auto const& [k, v] : given) {
      ks.push_back(k);
      vs.push_back(v);
    }
    if (ks.size() != t.rank() || fold_from_generators(ks, g.rank()) != g) {
      fail(error_kind::invalid_instance, "phi keys are neither the basis nor a free basis of H");
    }
    auto ex = express_in_generators(ks, g.rank(), t.basis);
    if (!ex) {
      fail(error_kind::internal, "basis element not generated by the keys");
    }
    out.clear();
    for (auto const& e : *ex) {
      out.push_back(substitute(e, vs));
    }
    return out;
  }

}  // namespace hnnwp
