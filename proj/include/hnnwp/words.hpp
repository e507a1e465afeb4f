#ifndef HNNWP_WORDS_HPP_
#define HNNWP_WORDS_HPP_

#include <cstdint>      // for int32_t
#include <string>       // for string
#include <string_view>  // for string_view
#include <vector>       // for vector

namespace hnnwp {

  // A letter x_i is encoded as +i and its inverse as -i; 0 is never a letter.
  using letter_type = int32_t;
  using word_type   = std::vector<letter_type>;

  // Code used for the stable letter t (and -stable_letter for t^-1).  It lies
  // outside every admissible free-group alphabet.
  constexpr letter_type stable_letter = 1 << 30;

  // Largest rank expressible in the textual format.  When stable letters are
  // allowed the letter 't' is taken, so the rank must stay below 20.
  constexpr int max_text_rank        = 26;
  constexpr int max_text_rank_stable = 19;

  constexpr letter_type inverse(letter_type x) noexcept {
    return -x;
  }

  word_type free_reduce(word_type const& w);
  bool      is_reduced(word_type const& w);
  word_type invert(word_type const& w);
  word_type concat(word_type const& u, word_type const& v);

  // Parses the uppercase-as-inverse format ("aB" = x_1 x_2^-1).  With
  // allow_stable, 't'/'T' become +-stable_letter.  Throws Error(parse).
  word_type   parse_word(std::string_view text, int rank, bool allow_stable = false);
  std::string format_word(word_type const& w);

  // A word of the HNN extension split at its stable letters:
  //   w_0 t^{e_1} w_1 ... t^{e_k} w_k.
  struct HnnWordText {
    std::vector<word_type> syllables;  // k + 1 entries
    std::vector<int>       signs;      // k entries, each +1 or -1

    size_t stable_count() const noexcept {
      return signs.size();
    }
  };

  HnnWordText split_syllables(word_type const& w);
  word_type   join_syllables(HnnWordText const& h);
  HnnWordText parse_hnn_word(std::string_view text, int rank);

}  // namespace hnnwp

#endif  // HNNWP_WORDS_HPP_
