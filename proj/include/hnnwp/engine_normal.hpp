#ifndef HNNWP_ENGINE_NORMAL_HPP_
#define HNNWP_ENGINE_NORMAL_HPP_

// Word problem in F *_phi t when H = H_1 = H_2 is normal of finite index.
// Input words become alternating sequences of stable letters and SLPs over
// the edges of the subgroup graph; Britton reductions are carried out on the
// compressed form and the final path is freely reduced as an SLP.

#include <array>     // for array
#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <string>    // for string
#include <vector>    // for vector

#include "basis_map.hpp"  // for BasisMap
#include "slp.hpp"        // for Slp, SlpOptions
#include "stallings.hpp"  // for SubgroupGraph, SpanningTree, ShiftTable
#include "words.hpp"      // for word_type, HnnWordText

namespace hnnwp {

  ////////////////////////////////////////////////////////////////////////
  // Edge tables shared by both engines
  ////////////////////////////////////////////////////////////////////////

  // For every non-tree edge e (by basis index j) the circuits at the root
  // labelled phi(w_e), phi(w_e)^-1, phi^-1(w_e), phi^-1(w_e)^-1.
  struct PhiTables {
    std::vector<std::array<Slp, 4>> slps;

    // direction +1 selects phi, -1 selects phi^-1.
    Slp const& get(size_t j, int direction, bool inverse_edge) const {
      return slps[j][(direction > 0 ? 0 : 2) + (inverse_edge ? 1 : 0)];
    }
    // Sum of all table sizes.
    size_t weight() const;
    // Sum of the sizes for one direction.
    size_t weight(int direction) const;
  };

  // images / inverse_images are the basis images of phi restricted to L(g);
  // every table is checked against its word by compressed equality.
  PhiTables build_phi_tables(SubgroupGraph const&          g,
                             SpanningTree const&           t,
                             std::vector<word_type> const& images,
                             std::vector<word_type> const& inverse_images,
                             SlpOptions const&             opts);

  // Replaces tree-edge terminals by epsilon and every non-tree terminal by
  // the root of a copy of its table (each needed table copied once).
  // Requires val(p) to be a circuit at the root; throws Error(precondition)
  // otherwise.
  Slp apply_phi_tables(SubgroupGraph const& g,
                       SpanningTree const&  t,
                       PhiTables const&     tables,
                       Slp const&           p,
                       int                  direction);

  ////////////////////////////////////////////////////////////////////////
  // Instance
  ////////////////////////////////////////////////////////////////////////

  struct NormalInstance {
    BasisMap   phi;  // graph and tree of H with the basis images
    ShiftTable shifts;
    PhiTables  tables;
    size_t     C = 0;
    SlpOptions slp;

    SubgroupGraph const& graph() const noexcept {
      return phi.graph;
    }
    SpanningTree const& tree() const noexcept {
      return phi.tree;
    }
  };

  // Throws Error(invalid_instance) if <gens> is not of finite index or not
  // normal, or if the images do not define an automorphism of H.
  NormalInstance precompute_normal(int                                          rank,
                                   std::vector<word_type> const&                gens,
                                   std::vector<word_type> const&                images,
                                   std::optional<std::vector<word_type>> const& inverse_images = {},
                                   SlpOptions const&                            opts = {});

  ////////////////////////////////////////////////////////////////////////
  // Compressed words
  ////////////////////////////////////////////////////////////////////////

  // P_0, t^{e_1}, P_1, ..., t^{e_k}, P_k with every val(P_i) a path from the
  // root; ends[i] caches its terminus.
  struct HnnWord {
    std::vector<Slp>         parts;
    std::vector<int>         signs;
    std::vector<vertex_type> ends;

    size_t stable_count() const noexcept {
      return signs.size();
    }
    size_t total_size() const;
  };

  HnnWord compile_input(NormalInstance const& inst, HnnWordText const& w);

  Slp apply_phi_slp(NormalInstance const& inst, Slp const& p, int direction);

  // The segment left, t^{-d}, mid, t^{d}, right with d = direction (so +1
  // rewrites t^-1 mid t as phi(mid)).  Returns nullopt when mid is not a
  // circuit at the root, i.e. its label is not in H.
  std::optional<Slp> britton_step_normal(NormalInstance const& inst,
                                         Slp const&            left,
                                         Slp const&            mid,
                                         Slp const&            right,
                                         int                   direction);

  ////////////////////////////////////////////////////////////////////////
  // Solving
  ////////////////////////////////////////////////////////////////////////

  struct SolveStats {
    size_t      syllables         = 0;  // k of the input
    size_t      pinches           = 0;  // Britton steps performed
    size_t      initial_size      = 0;  // sum of |P_i| after compilation
    size_t      max_size          = 0;  // largest total size seen
    size_t      final_size        = 0;  // |P*| before free reduction, else the total size left
    size_t      reduced_size      = 0;
    length_type reduced_length    = 0;
    size_t      constant          = 0;  // C or C*
    size_t      ledger_violations = 0;
    size_t      stable_remaining  = 0;  // stable letters left after reduction
    double      seconds           = 0;
    // General engine only.
    size_t index_N       = 0;
    size_t marked_cosets = 0;

    // Everything except the wall time, for byte-stable output.
    std::string serialize(bool with_time = true) const;
  };

  struct SolveResult {
    bool       trivial = false;
    SolveStats stats;
    Slp        reduced;  // freely reduced P* over the edges; epsilon if k stays > 0
  };

  SolveResult solve_normal(NormalInstance const& inst, HnnWord hw);
  SolveResult solve_normal(NormalInstance const& inst, HnnWordText const& w);

}  // namespace hnnwp

#endif  // HNNWP_ENGINE_NORMAL_HPP_
