#ifndef HNNWP_SRC_GRAMMAR_HPP_
#define HNNWP_SRC_GRAMMAR_HPP_

// Scratch store of AVL-balanced SLP nodes used by the compressed operations.
// Every pair node satisfies |height(left) - height(right)| <= 1, so prefix
// and suffix extraction, fingerprinting of prefixes and joins all cost
// O(log |val|) nodes.

#include <cstdint>        // for uint32_t, uint64_t
#include <unordered_map>  // for unordered_map
#include <vector>         // for vector

#include "hnnwp/slp.hpp"  // for Slp, symbol_type, length_type

namespace hnnwp::detail {

  struct Fingerprint {
    uint64_t h1 = 0;
    uint64_t h2 = 0;

    bool operator==(Fingerprint const& that) const {
      return h1 == that.h1 && h2 == that.h2;
    }
  };

  class Grammar {
   public:
    using node_id                   = uint32_t;
    static constexpr node_id empty  = 0;

    struct Node {
      node_id     left  = 0;
      node_id     right = 0;
      symbol_type sym   = 0;  // nonzero for leaves
      uint16_t    height = 0;
      length_type len    = 0;
      symbol_type first  = 0;
      symbol_type last   = 0;
      node_id     inv    = 0;  // memoised inverse, 0 = unknown
      uint64_t    h1 = 0, h2 = 0, p1 = 1, p2 = 1;
    };

    Grammar(bool hashing, uint64_t seed);

    Node const& node(node_id n) const {
      return _nodes[n];
    }
    length_type length(node_id n) const {
      return _nodes[n].len;
    }
    size_t size() const noexcept {
      return _nodes.size();
    }

    node_id leaf(symbol_type s);
    node_id join(node_id a, node_id b);
    node_id prefix(node_id n, length_type len);
    node_id suffix(node_id n, length_type len);
    node_id inverse(node_id n);

    Fingerprint fingerprint(node_id n) const {
      return {_nodes[n].h1, _nodes[n].h2};
    }
    Fingerprint prefix_fingerprint(node_id n, length_type len) const;

    // Imports an SLP, rebalancing it on the way; returns the root node.
    node_id import(Slp const& p);

    // Exports the subgrammar reachable from n.
    Slp export_slp(node_id n) const;

    // Productions reachable from the given roots, topologically ordered;
    // root_index receives the production index of each root (or -1 if the
    // root is empty).
    std::vector<Slp::Production> extract(std::vector<node_id> const& roots,
                                         std::vector<int64_t>&       root_index) const;

    // Appends up to limit symbols of val(n) to out.
    void expand(node_id n, length_type limit, std::vector<symbol_type>& out) const;

    int balance(node_id n) const;

   private:
    node_id make(node_id a, node_id b);
    node_id join_right(node_id a, node_id b);
    node_id join_left(node_id a, node_id b);
    node_id rotate_left(node_id n);
    node_id rotate_right(node_id n);
    uint64_t terminal_value(symbol_type s, int which) const;

    bool                                     _hashing;
    uint64_t                                 _seed;
    uint64_t                                 _base1, _base2;
    std::vector<Node>                        _nodes;
    std::unordered_map<symbol_type, node_id> _leaves;
  };

}  // namespace hnnwp::detail

#endif  // HNNWP_SRC_GRAMMAR_HPP_
