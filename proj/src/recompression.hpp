#ifndef HNNWP_SRC_RECOMPRESSION_HPP_
#define HNNWP_SRC_RECOMPRESSION_HPP_

#include <cstdint>  // for int64_t
#include <vector>   // for vector

#include "hnnwp/slp.hpp"  // for Slp

namespace hnnwp::detail {

  // Decides val(root1) == val(root2) for two roots of one topologically
  // ordered production list (a root of -1 stands for the empty word).
  //
  // Both values are rewritten in lock step by alternating block compression
  // (every maximal block a^l becomes a fresh letter) and pair compression
  // (every occurrence of ab with a in L, b in R becomes a fresh letter), with
  // the letters at nonterminal boundaries popped into the parent rules first
  // so that every block and pair is explicit.  Both rewrites are injective on
  // strings, so equality is preserved in both directions; the loop stops when
  // the lengths differ or both values are a single letter.
  bool recompression_equal(std::vector<Slp::Production> const& prods,
                           int64_t                             root1,
                           int64_t                             root2);

}  // namespace hnnwp::detail

#endif  // HNNWP_SRC_RECOMPRESSION_HPP_
