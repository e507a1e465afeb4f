#ifndef HNNWP_NORMALIZABLE_HPP_
#define HNNWP_NORMALIZABLE_HPP_

// The phi-stable chain H_0 = H, H_{i+1} = core(H_i) ∩ phi(H_i) ∩ phi^-1(H_i)
// and its limit M_phi, the largest phi-stable normal subgroup inside H.

#include <cstddef>   // for size_t
#include <optional>  // for optional
#include <string>    // for string
#include <vector>    // for vector

#include "basis_map.hpp"  // for BasisMap
#include "stallings.hpp"  // for SubgroupGraph, SpanningTree

namespace hnnwp {

  constexpr size_t default_max_steps = 32;

  struct StabilizationReport {
    std::vector<SubgroupGraph> chain;    // H_0, H_1, ... as computed
    std::vector<size_t>        indices;  // [F : H_i]
    std::vector<bool>          normal;
    bool                       stabilized = false;
    size_t                     step       = 0;  // i with H_{i+1} = H_i
    SubgroupGraph              m_phi;
    std::vector<word_type>     images;          // phi on the basis of M_phi
    std::vector<word_type>     inverse_images;  // phi^-1 on the same basis

    size_t index() const;

    // "step=<i> index=<m> normal=<bool>" per subgroup, then "M_phi index=<m>"
    // or "budget_exhausted".
    std::string serialize() const;
  };

  // Requires L(gi) <= H of finite index.  Throws Error(internal) if a basis
  // element of gi escapes H.
  SubgroupGraph h_step(BasisMap const& phi, SubgroupGraph const& gi);

  // Iterates h_step at most max_steps times.  Running out of steps is not a
  // negative answer: the report is simply not stabilized.
  StabilizationReport find_m_phi(BasisMap const& phi, size_t max_steps = default_max_steps);

  // phi restricted to L(m) <= H, on the basis of L(m) (direction -1 restricts
  // phi^-1).  Throws Error(internal) if an image leaves L(m) or the images do
  // not generate it.
  std::vector<word_type>
  restrict_phi(SubgroupGraph const& m, SpanningTree const& tm, BasisMap const& phi, int direction = 1);

}  // namespace hnnwp

#endif  // HNNWP_NORMALIZABLE_HPP_
