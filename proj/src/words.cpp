#include "hnnwp/words.hpp"

#include <cctype>  // for islower, isupper

#include "hnnwp/error.hpp"  // for fail

namespace hnnwp {

  word_type free_reduce(word_type const& w) {
    // Stack-based cancellation: the output buffer is always reduced.
    word_type out;
    out.reserve(w.size());
    for (letter_type x : w) {
      if (!out.empty() && out.back() == -x) {
        out.pop_back();
      } else {
        out.push_back(x);
      }
    }
    return out;
  }

  bool is_reduced(word_type const& w) {
    for (size_t i = 1; i < w.size(); ++i) {
      if (w[i] == -w[i - 1]) {
        return false;
      }
    }
    return true;
  }

  word_type invert(word_type const& w) {
    word_type out(w.rbegin(), w.rend());
    for (auto& x : out) {
      x = -x;
    }
    return out;
  }

  word_type concat(word_type const& u, word_type const& v) {
    word_type out(u);
    out.insert(out.end(), v.begin(), v.end());
    return out;
  }

  word_type parse_word(std::string_view text, int rank, bool allow_stable) {
    if (rank < 0 || rank > max_text_rank) {
      fail(error_kind::parse, "rank " + std::to_string(rank) + " is not representable as text");
    }
    if (allow_stable && rank > max_text_rank_stable) {
      fail(error_kind::parse,
           "rank " + std::to_string(rank) + " collides with the stable letter 't'");
    }
    word_type out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
      char c = text[i];
      if (allow_stable && (c == 't' || c == 'T')) {
        out.push_back(c == 't' ? stable_letter : -stable_letter);
        continue;
      }
      int idx;
      int sign;
      if (std::islower(static_cast<unsigned char>(c))) {
        idx  = c - 'a' + 1;
        sign = 1;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        idx  = c - 'A' + 1;
        sign = -1;
      } else {
        fail(error_kind::parse,
             "unexpected character '" + std::string(1, c) + "' at position " + std::to_string(i));
      }
      if (idx > rank) {
        fail(error_kind::parse,
             "letter '" + std::string(1, c) + "' exceeds rank " + std::to_string(rank));
      }
      out.push_back(sign * idx);
    }
    return out;
  }

  std::string format_word(word_type const& w) {
    std::string out;
    out.reserve(w.size());
    for (letter_type x : w) {
      if (x == stable_letter) {
        out.push_back('t');
      } else if (x == -stable_letter) {
        out.push_back('T');
      } else if (x > 0 && x <= max_text_rank) {
        out.push_back(static_cast<char>('a' + x - 1));
      } else if (x < 0 && -x <= max_text_rank) {
        out.push_back(static_cast<char>('A' - x - 1));
      } else {
        out += "[" + std::to_string(x) + "]";
      }
    }
    return out;
  }

  HnnWordText split_syllables(word_type const& w) {
    HnnWordText h;
    h.syllables.emplace_back();
    for (letter_type x : w) {
      if (x == stable_letter || x == -stable_letter) {
        h.signs.push_back(x > 0 ? 1 : -1);
        h.syllables.emplace_back();
      } else {
        h.syllables.back().push_back(x);
      }
    }
    return h;
  }

  word_type join_syllables(HnnWordText const& h) {
    word_type out(h.syllables.at(0));
    for (size_t i = 0; i < h.signs.size(); ++i) {
      out.push_back(h.signs[i] * stable_letter);
      out.insert(out.end(), h.syllables[i + 1].begin(), h.syllables[i + 1].end());
    }
    return out;
  }

  HnnWordText parse_hnn_word(std::string_view text, int rank) {
    return split_syllables(parse_word(text, rank, true));
  }

}  // namespace hnnwp
