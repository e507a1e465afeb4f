#ifndef HNNWP_STALLINGS_HPP_
#define HNNWP_STALLINGS_HPP_

#include <cstddef>   // for size_t
#include <cstdint>   // for uint32_t, uint64_t
#include <optional>  // for optional
#include <string>    // for string
#include <vector>    // for vector

#include "words.hpp"  // for word_type, letter_type

namespace hnnwp {

  using vertex_type = uint32_t;
  // Signed edge code: +e is the positive edge with id e (labelled by a
  // positive letter), -e is its inverse.  0 means "no edge".
  using edge_type = int32_t;

  constexpr vertex_type no_vertex = static_cast<vertex_type>(-1);

  // Column of a signed letter in the adjacency table: a, A, b, B, ...
  constexpr size_t letter_slot(letter_type x) noexcept {
    return x > 0 ? 2 * static_cast<size_t>(x - 1) : 2 * static_cast<size_t>(-x - 1) + 1;
  }

  constexpr letter_type slot_letter(size_t s) noexcept {
    letter_type i = static_cast<letter_type>(s / 2) + 1;
    return s % 2 == 0 ? i : -i;
  }

  ////////////////////////////////////////////////////////////////////////
  // SubgroupGraph
  ////////////////////////////////////////////////////////////////////////

  // A folded, inversible, rooted X-digraph.  Vertices are numbered
  // canonically (breadth first from the root 0, letters in slot order), so
  // two graphs describe the same subgroup iff they compare equal.
  class SubgroupGraph {
   public:
    struct EdgeInfo {
      vertex_type origin;
      letter_type letter;  // always positive
      vertex_type terminus;
    };

    // The graph of the trivial subgroup: one vertex, no edges.
    explicit SubgroupGraph(int rank = 0);

    // Builds from a raw (already folded and inversible) transition table
    // indexed [vertex * 2 * rank + slot].  Vertices unreachable from root are
    // dropped; with prune, hanging trees are removed so the result is a core
    // graph.  The result is renumbered canonically.
    static SubgroupGraph from_table(int                             rank,
                                    std::vector<vertex_type> const& table,
                                    vertex_type                     root,
                                    bool                            prune = true);

    // The Schreier graph of the stabiliser of root_point under the right
    // action given by perms[i] (the image of every point under x_{i+1}).
    static SubgroupGraph from_permutations(int                                          rank,
                                           std::vector<std::vector<vertex_type>> const& perms,
                                           vertex_type root_point);

    int rank() const noexcept {
      return _rank;
    }
    size_t num_vertices() const noexcept {
      return _num_vertices;
    }
    vertex_type root() const noexcept {
      return 0;
    }

    vertex_type target(vertex_type v, letter_type x) const {
      return _table[v * _slots + letter_slot(x)];
    }

    // Number of positive edges |E^+|.
    size_t num_edges() const noexcept {
      return _edges.size() - 1;
    }

    // Signed code of the edge leaving v with label x, or 0.
    edge_type edge_at(vertex_type v, letter_type x) const {
      return _edge_at[v * _slots + letter_slot(x)];
    }

    vertex_type origin(edge_type e) const {
      return e > 0 ? _edges[e].origin : _edges[-e].terminus;
    }
    vertex_type terminus(edge_type e) const {
      return e > 0 ? _edges[e].terminus : _edges[-e].origin;
    }
    letter_type label(edge_type e) const {
      return e > 0 ? _edges[e].letter : -_edges[-e].letter;
    }

    // Every vertex has all 2 * rank outgoing edges.
    bool is_regular() const;

    // Canonical text form, one line per vertex: "v0: a->1 A->1 b->0 B->0".
    std::string serialize() const;

    SubgroupGraph rerooted(vertex_type v) const;

    bool operator==(SubgroupGraph const& that) const {
      return _rank == that._rank && _table == that._table;
    }
    bool operator!=(SubgroupGraph const& that) const {
      return !(*this == that);
    }

   private:
    void init_edges();

    int                      _rank;
    size_t                   _slots;
    size_t                   _num_vertices;
    std::vector<vertex_type> _table;
    std::vector<edge_type>   _edge_at;
    std::vector<EdgeInfo>    _edges;  // index 0 unused
  };

  ////////////////////////////////////////////////////////////////////////
  // Construction
  ////////////////////////////////////////////////////////////////////////

  SubgroupGraph fold_from_generators(std::vector<word_type> const& gens, int rank);

  // As above, but inserting edges and resolving folds in an order shuffled by
  // seed.  The canonical result does not depend on the order.
  SubgroupGraph fold_from_generators(std::vector<word_type> const& gens,
                                     int                           rank,
                                     uint64_t                      order_seed);

  // Expresses each target (an element of <gens>) as a word in the generator
  // symbols +-(j+1), by folding with provenance labels on the edges.  Returns
  // nullopt for the first target outside <gens>.
  std::optional<std::vector<word_type>>
  express_in_generators(std::vector<word_type> const& gens,
                        int                           rank,
                        std::vector<word_type> const& targets);

  ////////////////////////////////////////////////////////////////////////
  // Queries
  ////////////////////////////////////////////////////////////////////////

  struct Trace {
    bool        complete;  // every letter could be followed
    vertex_type endpoint;  // valid iff complete
    size_t      fail_pos;  // index of the first untraceable letter otherwise
  };

  // Follows w letter by letter (no reduction) from start.
  Trace trace(SubgroupGraph const& g, vertex_type start, word_type const& w);

  // Edge codes of the path labelled w from start; throws if w does not trace.
  std::vector<edge_type> trace_edges(SubgroupGraph const& g, vertex_type start, word_type const& w);

  // True iff the free reduction of w labels a circuit at the root.
  bool accepts(SubgroupGraph const& g, word_type const& w);

  // [F : L(g)] if g is X-regular.
  std::optional<size_t> regular_index(SubgroupGraph const& g);

  // True iff L(small) <= L(big); tested on a basis of L(small).
  bool contains(SubgroupGraph const& big, SubgroupGraph const& small);

  ////////////////////////////////////////////////////////////////////////
  // Spanning tree and basis
  ////////////////////////////////////////////////////////////////////////

  struct SpanningTree {
    std::vector<bool>                   in_tree;    // by positive edge id
    std::vector<word_type>              tree_word;  // mu([r, v]_T) by vertex
    std::vector<std::vector<edge_type>> tree_path;  // [r, v]_T by vertex
    std::vector<edge_type>              basis_edges;
    std::vector<word_type>              basis;        // w_e, aligned with basis_edges
    std::vector<int>                    basis_index;  // by positive edge id, -1 for tree edges

    size_t rank() const noexcept {
      return basis.size();
    }
  };

  SpanningTree spanning_tree(SubgroupGraph const& g);

  // The circuit p_e = [r, o(e)]_T e [t(e), r]_T of the j-th basis element.
  std::vector<edge_type> basis_circuit(SubgroupGraph const& g, SpanningTree const& t, size_t j);

  // The tree path [u, v]_T as a reduced edge path.
  std::vector<edge_type> tree_path_between(SpanningTree const& t, vertex_type u, vertex_type v);

  std::vector<edge_type> invert_path(std::vector<edge_type> const& p);

  // Expresses h in the free basis {w_e}: the result is a reduced word over the
  // symbols +-(j+1).  Throws Error(precondition) if h is not in L(g).
  word_type
  rewrite_in_basis(SubgroupGraph const& g, SpanningTree const& t, word_type const& h);

  // Replaces every symbol +-(j+1) of expr by images[j]^{+-1} and reduces.
  word_type substitute(word_type const& expr, std::vector<word_type> const& images);

  ////////////////////////////////////////////////////////////////////////
  // Regularity, self-similarity, shifts
  ////////////////////////////////////////////////////////////////////////

  // Label-preserving automorphisms S_{u,v} of a self-similar graph.
  class ShiftTable {
   public:
    ShiftTable() = default;
    ShiftTable(SubgroupGraph const& g, std::vector<std::vector<vertex_type>> from_root);

    // S_{r,v}(x).
    vertex_type from_root(vertex_type v, vertex_type x) const {
      return _from_root[v][x];
    }
    // S_{r,v} on signed edge codes.
    edge_type edge_from_root(vertex_type v, edge_type e) const {
      return e > 0 ? _edge_from_root[v][e] : -_edge_from_root[v][-e];
    }
    // S_{u,v} = S_{r,v} o S_{r,u}^-1 on vertices.
    vertex_type apply(vertex_type u, vertex_type v, vertex_type x) const {
      return _from_root[v][_to_root[u][x]];
    }
    std::vector<vertex_type> vertex_map(vertex_type u, vertex_type v) const;

    size_t size() const noexcept {
      return _from_root.size();
    }

   private:
    std::vector<std::vector<vertex_type>> _from_root;
    std::vector<std::vector<vertex_type>> _to_root;
    std::vector<std::vector<edge_type>>   _edge_from_root;
  };

  struct SelfSimilarity {
    bool        self_similar;
    vertex_type witness;  // a vertex v with no automorphism r -> v, if not
    ShiftTable  shifts;
  };

  // Requires g to be X-regular.
  SelfSimilarity shift_tables(SubgroupGraph const& g);

  bool is_normal(SubgroupGraph const& g);

  ////////////////////////////////////////////////////////////////////////
  // Subgroup arithmetic
  ////////////////////////////////////////////////////////////////////////

  SubgroupGraph intersect(SubgroupGraph const& g1, SubgroupGraph const& g2);

  // The kernel of the coset action: the intersection of all conjugates.
  SubgroupGraph normal_core(SubgroupGraph const& g);

  // The graph of phi(<gens>), where phi is given on the basis of L(gh) by
  // images.  Every generator must lie in L(gh).
  SubgroupGraph image_subgroup(SubgroupGraph const&           gh,
                               SpanningTree const&            th,
                               std::vector<word_type> const&  images,
                               std::vector<word_type> const&  gens);

  // Product of cosets in the Cayley graph of F / L(g): the endpoint of
  // mu([r, v2]_T) traced from v1.
  vertex_type
  coset_mul(SubgroupGraph const& g, SpanningTree const& t, vertex_type v1, vertex_type v2);

  vertex_type coset_inverse(SubgroupGraph const& g, SpanningTree const& t, vertex_type v);

}  // namespace hnnwp

#endif  // HNNWP_STALLINGS_HPP_
