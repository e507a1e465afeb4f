#ifndef HNNWP_SLP_HPP_
#define HNNWP_SLP_HPP_

#include <atomic>      // for atomic
#include <cstddef>     // for size_t
#include <cstdint>     // for int32_t, uint32_t, uint64_t
#include <functional>  // for function
#include <string>      // for string
#include <vector>      // for vector

#include "stallings.hpp"  // for SubgroupGraph, ShiftTable, vertex_type

namespace hnnwp {

  // Terminal symbols are signed codes over a symmetrized alphabet: letters of
  // F(X) or edge codes of a subgroup graph.  The inverse of s is -s.
  using symbol_type = int32_t;

  // Value lengths grow exponentially in the SLP size; 128 bits cover every
  // program of a few thousand nonterminals built by the engines.  Arithmetic
  // that would overflow throws Error(limit).
  using length_type = unsigned __int128;

  std::string to_string(length_type n);
  length_type add_lengths(length_type a, length_type b);

  ////////////////////////////////////////////////////////////////////////
  // Slp
  ////////////////////////////////////////////////////////////////////////

  // A straight-line program stored as an indexed production list.  Every
  // production only refers to productions with smaller indices, so the
  // production graph is acyclic by construction; the root is the last
  // production.  Each program owns its productions: |P| is exactly the
  // number of entries, and concatenation copies.
  class Slp {
   public:
    using index_type = uint32_t;

    struct Production {
      symbol_type terminal = 0;  // nonzero: N -> terminal
      index_type  left     = 0;  // used iff terminal == 0 && !is_empty
      index_type  right    = 0;
      bool        is_empty = false;  // N -> epsilon

      static Production empty() {
        return {0, 0, 0, true};
      }
      static Production leaf(symbol_type s) {
        return {s, 0, 0, false};
      }
      static Production pair(index_type l, index_type r) {
        return {0, l, r, false};
      }
      bool is_pair() const noexcept {
        return terminal == 0 && !is_empty;
      }
    };

    // The program with value epsilon (a single production R -> epsilon).
    Slp();

    static Slp from_word(std::vector<symbol_type> const& w);

    // Arbitrary production list with an explicit root.  Productions not
    // reachable from the root are dropped; a cyclic production graph or a
    // dangling reference throws Error(precondition).
    static Slp from_productions(std::vector<Production> const& prods, index_type root);

    // Trusted constructor for productions already in topological order with
    // the root last.
    static Slp from_ordered(std::vector<Production> prods);

    size_t size() const noexcept {
      return _prods.size();
    }
    index_type root() const noexcept {
      return static_cast<index_type>(_prods.size() - 1);
    }
    Production const& production(index_type n) const {
      return _prods[n];
    }
    std::vector<Production> const& productions() const noexcept {
      return _prods;
    }

    length_type length(index_type n) const {
      return _length[n];
    }
    symbol_type first(index_type n) const {
      return _first[n];
    }
    symbol_type last(index_type n) const {
      return _last[n];
    }
    length_type length() const {
      return _length.back();
    }
    bool empty_value() const {
      return _length.back() == 0;
    }
    // 0 when the value is empty.
    symbol_type first() const {
      return _first.back();
    }
    symbol_type last() const {
      return _last.back();
    }

    // Longest chain of pair productions from the root.
    size_t depth() const;

    // "N3 -> N1 N2" / "N0 -> e+12" / "N0 -> eps", one production per line.
    std::string serialize() const;

   private:
    void compute_caches();

    std::vector<Production>  _prods;
    std::vector<length_type> _length;
    std::vector<symbol_type> _first;
    std::vector<symbol_type> _last;
  };

  // val = val(p1) val(p2); |result| = |p1| + |p2| + 1.
  Slp concat(Slp const& p1, Slp const& p2);

  bool is_empty_val(Slp const& p);

  struct FirstLast {
    symbol_type first;  // 0 = none
    symbol_type last;
  };
  FirstLast first_last(Slp const& p);

  // Explicit value; throws Error(limit) if |val| > limit.
  std::vector<symbol_type> decompress(Slp const& p, length_type limit);

  // Applies f to every terminal (a relabelling of the alphabet that must
  // commute with inversion); the size is unchanged.
  Slp map_terminals(Slp const& p, std::function<symbol_type(symbol_type)> const& f);

  ////////////////////////////////////////////////////////////////////////
  // SLPs over the edges of a subgroup graph
  ////////////////////////////////////////////////////////////////////////

  struct PathCheck {
    bool        connected;  // val is a path (consecutive edges meet)
    vertex_type origin;     // no_vertex when val is empty or not connected
    vertex_type terminus;
  };

  // One pass over the productions: for every N -> A B with both values
  // nonempty, t(A) must equal o(B).
  PathCheck check_path(Slp const& p, SubgroupGraph const& g);

  // S_{r,v} applied to every terminal.
  Slp shift_apply(Slp const& p, ShiftTable const& shifts, vertex_type v);

  // The label mu(val(p)) as an SLP over the letters of F(X).
  Slp label_slp(Slp const& p, SubgroupGraph const& g);

  ////////////////////////////////////////////////////////////////////////
  // Compressed equality, common prefixes and free reduction
  ////////////////////////////////////////////////////////////////////////

  enum class equality_mode {
    fingerprint,   // polynomial hashes modulo two 61/62-bit primes
    recompression  // deterministic, block and pair compression
  };

  struct SlpOptions {
    equality_mode equality = equality_mode::fingerprint;
    uint64_t      seed     = 0x9e3779b97f4a7c15ULL;
  };

  struct SlpCounters {
    std::atomic<uint64_t> fingerprint_compares{0};
    std::atomic<uint64_t> recompression_runs{0};
    std::atomic<uint64_t> explicit_compares{0};
  };

  // Compressed operations under one configuration.  Thread-safe: every call
  // works on its own scratch grammar; only the counters are shared.
  class SlpOps {
   public:
    explicit SlpOps(SlpOptions opts = {}) : _opts(opts) {}

    SlpOptions const& options() const noexcept {
      return _opts;
    }
    SlpCounters& counters() noexcept {
      return _counters;
    }

    bool        equal(Slp const& p1, Slp const& p2);
    length_type lcp(Slp const& p1, Slp const& p2);

    // Free reduction of val(p) (adjacent s, -s cancel).  The result is built
    // bottom-up: a reduced value for every nonterminal, cancelling at each
    // seam the longest common prefix of the inverted left part and the right
    // part.
    Slp free_reduce(Slp const& p);

   private:
    SlpOptions  _opts;
    SlpCounters _counters;
  };

  bool        equal_slp(Slp const& p1, Slp const& p2, SlpOptions const& opts = {});
  length_type lcp_len(Slp const& p1, Slp const& p2, SlpOptions const& opts = {});
  Slp         free_reduce_slp(Slp const& p, SlpOptions const& opts = {});

}  // namespace hnnwp

#endif  // HNNWP_SLP_HPP_
