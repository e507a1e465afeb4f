#ifndef HNNWP_ENGINE_GENERAL_HPP_
#define HNNWP_ENGINE_GENERAL_HPP_

// Word problem in F *_phi t for H of finite index (not necessarily normal)
// and phi normalizable.  Computation happens in the graph of N = M_phi; an
// element of F is a syllable (P, v): a circuit P at the root of that graph
// followed by the tree path to v.

#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <vector>    // for vector

#include "basis_map.hpp"      // for BasisMap
#include "engine_normal.hpp"  // for PhiTables, SolveResult
#include "normalizable.hpp"   // for StabilizationReport
#include "slp.hpp"            // for Slp, SlpOptions
#include "stallings.hpp"      // for SubgroupGraph, SpanningTree, ShiftTable
#include "words.hpp"          // for word_type, HnnWordText

namespace hnnwp {

  struct Syllable {
    Slp         p;
    vertex_type v = 0;
  };

  struct GeneralInstance {
    BasisMap            phi;  // H and phi on its basis
    StabilizationReport report;
    SubgroupGraph       graph;  // graph of N
    SpanningTree        tree;
    ShiftTable          shifts;
    PhiTables           tables;  // phi restricted to N
    std::vector<bool>   marked;  // v lies in H / N
    // (P_v^phi, v') and its phi^-1 twin; only for marked v.
    std::vector<std::optional<Syllable>> vertex_phi;
    std::vector<std::optional<Syllable>> vertex_phi_inv;
    std::vector<Slp>                     tree_from_root;  // T_{r,v}
    std::vector<Slp>                     tree_to_root;    // T_{v,r}
    std::vector<Slp>                     correction;      // C_{v1,v2} at v1 * k + v2
    std::vector<vertex_type>             product;         // v1 v2 at v1 * k + v2
    size_t                               C_star = 0;
    SlpOptions                           slp;

    size_t index() const noexcept {
      return graph.num_vertices();
    }
    size_t marked_count() const;
    Slp const& corr(vertex_type v1, vertex_type v2) const {
      return correction[v1 * index() + v2];
    }
    vertex_type mul(vertex_type v1, vertex_type v2) const {
      return product[v1 * index() + v2];
    }
    Syllable const& vertex_table(vertex_type v, int direction) const;
  };

  // Throws Error(invalid_instance) if <gens> has infinite index, phi is not
  // an automorphism of H, or the phi-stable chain does not settle within
  // max_steps.
  GeneralInstance precompute_general(int                                          rank,
                                     std::vector<word_type> const&                gens,
                                     std::vector<word_type> const&                images,
                                     std::optional<std::vector<word_type>> const& inverse_images = {},
                                     size_t            max_steps = default_max_steps,
                                     SlpOptions const& opts      = {});

  Syllable word_to_syllable(GeneralInstance const& inst, word_type const& w);

  // mu(val(P)) mu([r, v]_T), freely reduced.  Decompresses: test use only.
  word_type syllable_word(GeneralInstance const& inst, Syllable const& s);

  // Throws Error(precondition) if s.v is not marked.
  Syllable apply_phi_syllable(GeneralInstance const& inst, Syllable const& s, int direction);

  Syllable syllable_concat(GeneralInstance const& inst, Syllable const& s1, Syllable const& s2);

  // The segment left, t^{-d}, mid, t^{d}, right; nullopt when mid.v is not
  // marked.
  std::optional<Syllable> britton_step_general(GeneralInstance const& inst,
                                               Syllable const&        left,
                                               Syllable const&        mid,
                                               Syllable const&        right,
                                               int                    direction);

  SolveResult solve_general(GeneralInstance const& inst, HnnWordText const& w);

}  // namespace hnnwp

#endif  // HNNWP_ENGINE_GENERAL_HPP_
