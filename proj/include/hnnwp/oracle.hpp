#ifndef HNNWP_ORACLE_HPP_
#define HNNWP_ORACLE_HPP_

// Reference implementations on explicit words.  Exponential in the worst
// case; meant for cross-checking the compressed engines on small inputs.

#include <cstddef>  // for size_t
#include <random>   // for mt19937_64

#include "basis_map.hpp"  // for BasisMap
#include "slp.hpp"        // for length_type
#include "words.hpp"      // for HnnWordText

namespace hnnwp {

  struct OracleConfig {
    size_t max_length = size_t(1) << 20;  // longest intermediate syllable
    size_t max_steps  = size_t(1) << 16;  // Britton reductions
  };

  enum class oracle_answer { trivial, nontrivial, budget_exceeded };

  // Britton reduction on plain words, rightmost pinch first.  Membership is
  // decided by tracing in the graph of H and phi^{+-1} is applied by basis
  // rewriting and substitution.
  oracle_answer naive_solve(BasisMap const& phi, HnnWordText const& w, OracleConfig const& cfg = {});

  // A uniformly long (0..max_len) word over X^{+-1} and t^{+-1} with at most
  // max_stable stable letters; about one letter in four is stable.
  word_type random_hnn_word(std::mt19937_64& rng, int rank, size_t max_len, size_t max_stable);

  // Length of phi^n(aa) for x -> xy, y -> x on x = aa, y = b: the counts
  // (#x, #y) follow (cx, cy) -> (cx + cy, cx) from (1, 0).
  length_type growth_oracle(unsigned n);

}  // namespace hnnwp

#endif  // HNNWP_ORACLE_HPP_
