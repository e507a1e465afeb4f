#include "hnnwp/oracle.hpp"

#include <vector>  // for vector

namespace hnnwp {

  namespace {
    // Kept separate from the library's reduction on purpose.
    void reduce_into(word_type& out, word_type const& w) {
      for (letter_type x : w) {
        if (!out.empty() && out.back() == -x) {
          out.pop_back();
        } else {
          out.push_back(x);
        }
      }
    }
  }  // namespace

  oracle_answer naive_solve(BasisMap const& phi, HnnWordText const& w, OracleConfig const& cfg) {
    std::vector<word_type> syl;
    for (auto const& s : w.syllables) {
      word_type r;
      reduce_into(r, s);
      syl.push_back(std::move(r));
    }
    std::vector<int> signs = w.signs;
    size_t           steps = 0;
    while (!signs.empty()) {
      size_t found = 0;
      for (size_t i = signs.size() - 1; i >= 1; --i) {
        if (signs[i - 1] == -signs[i] && accepts(phi.graph, syl[i])) {
          found = i;
          break;
        }
      }
      if (found == 0) {
        return oracle_answer::nontrivial;
      }
      if (++steps > cfg.max_steps) {
        return oracle_answer::budget_exceeded;
      }
      size_t    i = found;
      word_type merged;
      reduce_into(merged, syl[i - 1]);
      reduce_into(merged, phi.apply(syl[i], signs[i - 1] < 0 ? 1 : -1));
      reduce_into(merged, syl[i + 1]);
      if (merged.size() > cfg.max_length) {
        return oracle_answer::budget_exceeded;
      }
      syl[i - 1] = std::move(merged);
      syl.erase(syl.begin() + i, syl.begin() + i + 2);
      signs.erase(signs.begin() + (i - 1), signs.begin() + i + 1);
    }
    return syl.front().empty() ? oracle_answer::trivial : oracle_answer::nontrivial;
  }

  word_type random_hnn_word(std::mt19937_64& rng, int rank, size_t max_len, size_t max_stable) {
    size_t const len    = static_cast<size_t>(rng() % (max_len + 1));
    size_t       stable = 0;
    word_type    w;
    while (w.size() < len) {
      if (stable < max_stable && rng() % 4 == 0) {
        w.push_back(rng() % 2 == 0 ? stable_letter : -stable_letter);
        ++stable;
      } else {
        auto c = static_cast<letter_type>(rng() % static_cast<uint64_t>(2 * rank));
        w.push_back(c < rank ? c + 1 : -(c - rank + 1));
      }
    }
    return w;
  }

  length_type growth_oracle(unsigned n) {
    length_type cx = 1, cy = 0;
    for (unsigned i = 0; i < n; ++i) {
      length_type nx = cx + cy;
      cy             = cx;
      cx             = nx;
    }
    return 2 * cx + cy;
  }

}  // namespace hnnwp
