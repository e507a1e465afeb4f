#include "hnnwp/stallings.hpp"

#include <algorithm>  // for shuffle, all_of
#include <deque>      // for deque
#include <map>        // for map
#include <numeric>    // for iota
#include <queue>      // for queue
#include <random>     // for mt19937_64
#include <utility>    // for pair

#include "hnnwp/error.hpp"  // for fail

namespace hnnwp {

  ////////////////////////////////////////////////////////////////////////
  // SubgroupGraph
  ////////////////////////////////////////////////////////////////////////

  SubgroupGraph::SubgroupGraph(int rank)
      : _rank(rank),
        _slots(2 * static_cast<size_t>(rank)),
        _num_vertices(1),
        _table(_slots, no_vertex) {
    init_edges();
  }

  SubgroupGraph SubgroupGraph::from_table(int                             rank,
                                          std::vector<vertex_type> const& table,
                                          vertex_type                     root,
                                          bool                            prune) {
    size_t const slots = 2 * static_cast<size_t>(rank);
    size_t const n     = slots == 0 ? 1 : table.size() / slots;
    std::vector<vertex_type> work(table);
    if (slots == 0) {
      return SubgroupGraph(rank);
    }

    if (prune) {
      // Repeatedly strip non-root vertices of degree one.
      std::vector<size_t> degree(n, 0);
      for (size_t v = 0; v < n; ++v) {
        for (size_t s = 0; s < slots; ++s) {
          degree[v] += work[v * slots + s] != no_vertex;
        }
      }
      std::vector<vertex_type> stack;
      for (size_t v = 0; v < n; ++v) {
        if (v != root && degree[v] == 1) {
          stack.push_back(static_cast<vertex_type>(v));
        }
      }
      while (!stack.empty()) {
        vertex_type v = stack.back();
        stack.pop_back();
        if (degree[v] != 1) {
          continue;
        }
        for (size_t s = 0; s < slots; ++s) {
          vertex_type w = work[v * slots + s];
          if (w == no_vertex) {
            continue;
          }
          work[v * slots + s]           = no_vertex;
          work[w * slots + (s ^ 1)]     = no_vertex;
          degree[v]--;
          degree[w]--;
          if (w != root && degree[w] == 1) {
            stack.push_back(w);
          }
        }
      }
    }

    // Canonical renumbering: breadth first from the root in slot order.
    std::vector<vertex_type> order;
    std::vector<vertex_type> number(n, no_vertex);
    number[root] = 0;
    order.push_back(root);
    for (size_t i = 0; i < order.size(); ++i) {
      vertex_type v = order[i];
      for (size_t s = 0; s < slots; ++s) {
        vertex_type w = work[v * slots + s];
        if (w != no_vertex && number[w] == no_vertex) {
          number[w] = static_cast<vertex_type>(order.size());
          order.push_back(w);
        }
      }
    }

    SubgroupGraph g(rank);
    g._num_vertices = order.size();
    g._table.assign(order.size() * slots, no_vertex);
    for (size_t i = 0; i < order.size(); ++i) {
      for (size_t s = 0; s < slots; ++s) {
        vertex_type w = work[order[i] * slots + s];
        if (w != no_vertex) {
          g._table[i * slots + s] = number[w];
        }
      }
    }
    g.init_edges();
    return g;
  }

  SubgroupGraph
  SubgroupGraph::from_permutations(int                                          rank,
                                   std::vector<std::vector<vertex_type>> const& perms,
                                   vertex_type                                  root_point) {
    if (perms.size() != static_cast<size_t>(rank) || perms.empty()) {
      fail(error_kind::precondition, "one permutation per generator is required");
    }
    size_t const n     = perms[0].size();
    size_t const slots = 2 * static_cast<size_t>(rank);
    std::vector<vertex_type> table(n * slots, no_vertex);
    for (size_t i = 0; i < perms.size(); ++i) {
      if (perms[i].size() != n) {
        fail(error_kind::precondition, "permutations act on different point sets");
      }
      for (size_t p = 0; p < n; ++p) {
        vertex_type q = perms[i][p];
        if (q >= n || table[q * slots + 2 * i + 1] != no_vertex) {
          fail(error_kind::precondition, "not a permutation");
        }
        table[p * slots + 2 * i]     = q;
        table[q * slots + 2 * i + 1] = static_cast<vertex_type>(p);
      }
    }
    return from_table(rank, table, root_point, false);
  }

  void SubgroupGraph::init_edges() {
    _edge_at.assign(_table.size(), 0);
    _edges.assign(1, EdgeInfo{no_vertex, 0, no_vertex});
    // Letter-major numbering of the positive edges.
    for (letter_type x = 1; x <= _rank; ++x) {
      for (vertex_type v = 0; v < _num_vertices; ++v) {
        vertex_type w = target(v, x);
        if (w == no_vertex) {
          continue;
        }
        auto id = static_cast<edge_type>(_edges.size());
        _edges.push_back({v, x, w});
        _edge_at[v * _slots + letter_slot(x)]  = id;
        _edge_at[w * _slots + letter_slot(-x)] = -id;
      }
    }
  }

  bool SubgroupGraph::is_regular() const {
    return std::all_of(_table.begin(), _table.end(), [](vertex_type w) { return w != no_vertex; });
  }

  std::string SubgroupGraph::serialize() const {
    std::string out;
    for (vertex_type v = 0; v < _num_vertices; ++v) {
      out += "v" + std::to_string(v) + ":";
      for (size_t s = 0; s < _slots; ++s) {
        vertex_type w = _table[v * _slots + s];
        if (w != no_vertex) {
          out += " " + format_word({slot_letter(s)}) + "->" + std::to_string(w);
        }
      }
      out += "\n";
    }
    return out;
  }

  SubgroupGraph SubgroupGraph::rerooted(vertex_type v) const {
    return from_table(_rank, _table, v, true);
  }

  ////////////////////////////////////////////////////////////////////////
  // Folding
  ////////////////////////////////////////////////////////////////////////

  namespace {

    // Union-find folding of a bouquet.  With tracking on, every edge carries
    // a provenance word lambda over the generator symbols, and every vertex a
    // gauge g(v) (kept as a relative word along union-find links).  The
    // class-level label of an edge is g(o)^-1 lambda g(t); for every circuit
    // at the root the product of class-level labels, mapped through
    // y_j -> gens[j], equals the circuit's label in F.
    class Folder {
     public:
      Folder(int rank, bool track, std::optional<uint64_t> seed)
          : _rank(rank), _slots(2 * static_cast<size_t>(rank)), _track(track) {
        if (seed) {
          _rng.emplace(*seed);
        }
        new_vertex();  // root
      }

      void add_generators(std::vector<word_type> const& gens) {
        struct Pending {
          vertex_type o;
          letter_type x;
          vertex_type t;
          word_type   lambda;
        };
        std::vector<Pending> pending;
        for (size_t j = 0; j < gens.size(); ++j) {
          word_type g = free_reduce(gens[j]);
          if (g.empty()) {
            continue;
          }
          vertex_type prev = 0;
          for (size_t i = 0; i < g.size(); ++i) {
            vertex_type next = i + 1 == g.size() ? 0 : new_vertex();
            word_type   lambda;
            if (_track && i == 0) {
              lambda = {static_cast<letter_type>(j + 1)};
            }
            if (g[i] > 0) {
              pending.push_back({prev, g[i], next, std::move(lambda)});
            } else {
              pending.push_back({next, -g[i], prev, hnnwp::invert(lambda)});
            }
            prev = next;
          }
        }
        if (_rng) {
          std::shuffle(pending.begin(), pending.end(), *_rng);
        }
        for (auto& p : pending) {
          auto id = static_cast<int>(_edges.size());
          _edges.push_back({p.o, p.x, p.t, std::move(p.lambda), true});
          place(id, letter_slot(p.x));
          place(id, letter_slot(-p.x));
        }
      }

      void run() {
        while (true) {
          while (!_work.empty()) {
            Conflict c;
            if (_rng) {
              std::uniform_int_distribution<size_t> pick(0, _work.size() - 1);
              size_t                                i = pick(*_rng);
              std::swap(_work[i], _work.back());
            }
            c = _work.back();
            _work.pop_back();
            resolve(c);
          }
          // Every live edge must occupy both of its slots.
          for (int id = 0; id < static_cast<int>(_edges.size()); ++id) {
            if (_edges[id].alive) {
              place(id, letter_slot(_edges[id].x));
              place(id, letter_slot(-_edges[id].x));
            }
          }
          if (_work.empty()) {
            break;
          }
        }
      }

      // Transition table over representatives (indexed by representative
      // vertex, non-representatives left empty).
      std::vector<vertex_type> table() {
        std::vector<vertex_type> t(_parent.size() * _slots, no_vertex);
        for (auto const& e : _edges) {
          if (!e.alive) {
            continue;
          }
          vertex_type o = find(e.o), d = find(e.t);
          t[o * _slots + letter_slot(e.x)]  = d;
          t[d * _slots + letter_slot(-e.x)] = o;
        }
        return t;
      }

      // Provenance of the (reduced) word h traced from the root.
      std::optional<word_type> express(word_type const& h) {
        word_type   out;
        vertex_type v = 0;
        for (letter_type x : free_reduce(h)) {
          size_t s  = letter_slot(x);
          int    id = _adj[v][s];
          if (id < 0) {
            return std::nullopt;
          }
          word_type step = class_label(id, s);
          out.insert(out.end(), step.begin(), step.end());
          v = find(far_end(id, s));
        }
        if (v != 0) {
          return std::nullopt;
        }
        return free_reduce(out);
      }

     private:
      struct Edge {
        vertex_type o;
        letter_type x;
        vertex_type t;
        word_type   lambda;
        bool        alive;
      };

      struct Conflict {
        int    kept;
        int    incoming;
        size_t slot;
      };

      vertex_type new_vertex() {
        auto v = static_cast<vertex_type>(_parent.size());
        _parent.push_back(v);
        _rel.emplace_back();
        _adj.emplace_back(_slots, -1);
        return v;
      }

      vertex_type find(vertex_type v) {
        if (_parent[v] == v) {
          return v;
        }
        vertex_type p   = _parent[v];
        vertex_type rep = find(p);
        if (p != rep) {
          if (_track) {
            // g(v) = rel(v) g(p) and g(p) = rel(p) g(rep).
            _rel[v] = free_reduce(hnnwp::concat(_rel[v], _rel[p]));
          }
          _parent[v] = rep;
        }
        return rep;
      }

      // g(v) relative to its representative.
      word_type const& gauge(vertex_type v) {
        find(v);
        return _rel[v];
      }

      bool forward(int id, size_t s) const {
        return letter_slot(_edges[id].x) == s;
      }

      vertex_type near_end(int id, size_t s) const {
        return forward(id, s) ? _edges[id].o : _edges[id].t;
      }

      vertex_type far_end(int id, size_t s) const {
        return forward(id, s) ? _edges[id].t : _edges[id].o;
      }

      // g(near)^-1 lambda^{+-1} g(far) for the edge read out of slot s.
      word_type class_label(int id, size_t s) {
        if (!_track) {
          return {};
        }
        word_type lam = forward(id, s) ? _edges[id].lambda : hnnwp::invert(_edges[id].lambda);
        word_type out = hnnwp::invert(gauge(near_end(id, s)));
        out.insert(out.end(), lam.begin(), lam.end());
        word_type const& gf = gauge(far_end(id, s));
        out.insert(out.end(), gf.begin(), gf.end());
        return free_reduce(out);
      }

      void place(int id, size_t s) {
        vertex_type r   = find(near_end(id, s));
        int&        cur = _adj[r][s];
        if (cur == id) {
          return;
        }
        if (cur < 0 || !_edges[cur].alive) {
          cur = id;
        } else {
          _work.push_back({cur, id, s});
        }
      }

      void resolve(Conflict const& c) {
        Edge& f2 = _edges[c.incoming];
        if (!f2.alive) {
          return;
        }
        if (!_edges[c.kept].alive) {
          place(c.incoming, c.slot);
          return;
        }
        vertex_type F1 = find(far_end(c.kept, c.slot));
        vertex_type F2 = find(far_end(c.incoming, c.slot));
        if (F1 == F2) {
          kill(c.incoming, c.kept);
          return;
        }
        word_type L1 = class_label(c.kept, c.slot);
        word_type L2 = class_label(c.incoming, c.slot);
        // Attach one class under the other with gauge chosen so that the two
        // edges get equal class labels; the root always stays representative.
        if (F2 != 0) {
          attach(F2, F1, free_reduce(hnnwp::concat(hnnwp::invert(L2), L1)));
        } else {
          attach(F1, F2, free_reduce(hnnwp::concat(hnnwp::invert(L1), L2)));
        }
        // The two edges are now parallel; the far side conflict removes one.
        _work.push_back({c.kept, c.incoming, c.slot});
      }

      void attach(vertex_type child, vertex_type parent, word_type gauge_word) {
        _parent[child] = parent;
        if (_track) {
          _rel[child] = std::move(gauge_word);
        }
        std::vector<int> moved = std::move(_adj[child]);
        _adj[child].assign(_slots, -1);
        for (size_t s = 0; s < _slots; ++s) {
          if (moved[s] >= 0 && _edges[moved[s]].alive) {
            place(moved[s], s);
          }
        }
      }

      void kill(int dead, int keep) {
        _edges[dead].alive = false;
        for (size_t s : {letter_slot(_edges[dead].x), letter_slot(-_edges[dead].x)}) {
          int& cur = _adj[find(near_end(dead, s))][s];
          if (cur == dead) {
            cur = keep;
          }
        }
      }

      int                                _rank;
      size_t                             _slots;
      bool                               _track;
      std::optional<std::mt19937_64>     _rng;
      std::vector<vertex_type>           _parent;
      std::vector<word_type>             _rel;
      std::vector<std::vector<int>>      _adj;
      std::vector<Edge>                  _edges;
      std::vector<Conflict>              _work;
    };

    SubgroupGraph fold_impl(std::vector<word_type> const& gens,
                            int                           rank,
                            std::optional<uint64_t>       seed) {
      for (auto const& g : gens) {
        for (letter_type x : g) {
          if (x == 0 || x > rank || -x > rank) {
            fail(error_kind::precondition, "generator letter outside the alphabet");
          }
        }
      }
      Folder f(rank, false, seed);
      f.add_generators(gens);
      f.run();
      return SubgroupGraph::from_table(rank, f.table(), 0, true);
    }

  }  // namespace

  SubgroupGraph fold_from_generators(std::vector<word_type> const& gens, int rank) {
    return fold_impl(gens, rank, std::nullopt);
  }

  SubgroupGraph
  fold_from_generators(std::vector<word_type> const& gens, int rank, uint64_t order_seed) {
    return fold_impl(gens, rank, order_seed);
  }

  std::optional<std::vector<word_type>>
  express_in_generators(std::vector<word_type> const& gens,
                        int                           rank,
                        std::vector<word_type> const& targets) {
    Folder f(rank, true, std::nullopt);
    f.add_generators(gens);
    f.run();
    std::vector<word_type> out;
    out.reserve(targets.size());
    for (auto const& h : targets) {
      auto e = f.express(h);
      if (!e) {
        return std::nullopt;
      }
      out.push_back(std::move(*e));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Queries
  ////////////////////////////////////////////////////////////////////////

  Trace trace(SubgroupGraph const& g, vertex_type start, word_type const& w) {
    vertex_type v = start;
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i] == 0 || w[i] > g.rank() || -w[i] > g.rank()) {
        return {false, no_vertex, i};
      }
      vertex_type next = g.target(v, w[i]);
      if (next == no_vertex) {
        return {false, no_vertex, i};
      }
      v = next;
    }
    return {true, v, w.size()};
  }

  std::vector<edge_type>
  trace_edges(SubgroupGraph const& g, vertex_type start, word_type const& w) {
    std::vector<edge_type> out;
    out.reserve(w.size());
    vertex_type v = start;
    for (letter_type x : w) {
      edge_type e = (x == 0 || x > g.rank() || -x > g.rank()) ? 0 : g.edge_at(v, x);
      if (e == 0) {
        fail(error_kind::precondition, "word " + format_word(w) + " does not trace in the graph");
      }
      out.push_back(e);
      v = g.terminus(e);
    }
    return out;
  }

  bool accepts(SubgroupGraph const& g, word_type const& w) {
    Trace t = trace(g, g.root(), free_reduce(w));
    return t.complete && t.endpoint == g.root();
  }

  std::optional<size_t> regular_index(SubgroupGraph const& g) {
    if (!g.is_regular()) {
      return std::nullopt;
    }
    return g.num_vertices();
  }

  bool contains(SubgroupGraph const& big, SubgroupGraph const& small) {
    SpanningTree t = spanning_tree(small);
    return std::all_of(t.basis.begin(), t.basis.end(), [&big](word_type const& w) {
      return accepts(big, w);
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // Spanning tree and basis
  ////////////////////////////////////////////////////////////////////////

  SpanningTree spanning_tree(SubgroupGraph const& g) {
    SpanningTree t;
    size_t const n = g.num_vertices();
    t.in_tree.assign(g.num_edges() + 1, false);
    t.tree_word.assign(n, word_type());
    t.tree_path.assign(n, {});
    t.basis_index.assign(g.num_edges() + 1, -1);

    std::vector<bool>        seen(n, false);
    std::vector<vertex_type> order{g.root()};
    seen[g.root()] = true;
    for (size_t i = 0; i < order.size(); ++i) {
      vertex_type v = order[i];
      for (size_t s = 0; s < 2 * static_cast<size_t>(g.rank()); ++s) {
        letter_type x = slot_letter(s);
        edge_type   e = g.edge_at(v, x);
        if (e == 0) {
          continue;
        }
        vertex_type w = g.terminus(e);
        if (seen[w]) {
          continue;
        }
        seen[w]          = true;
        t.in_tree[e > 0 ? e : -e] = true;
        t.tree_word[w]   = t.tree_word[v];
        t.tree_word[w].push_back(x);
        t.tree_path[w] = t.tree_path[v];
        t.tree_path[w].push_back(e);
        order.push_back(w);
      }
    }
    for (edge_type e = 1; e <= static_cast<edge_type>(g.num_edges()); ++e) {
      if (t.in_tree[e]) {
        continue;
      }
      word_type w = t.tree_word[g.origin(e)];
      w.push_back(g.label(e));
      word_type back = invert(t.tree_word[g.terminus(e)]);
      w.insert(w.end(), back.begin(), back.end());
      t.basis_index[e] = static_cast<int>(t.basis.size());
      t.basis_edges.push_back(e);
      t.basis.push_back(free_reduce(w));
    }
    return t;
  }

  std::vector<edge_type> invert_path(std::vector<edge_type> const& p) {
    std::vector<edge_type> out(p.rbegin(), p.rend());
    for (auto& e : out) {
      e = -e;
    }
    return out;
  }

  std::vector<edge_type>
  basis_circuit(SubgroupGraph const& g, SpanningTree const& t, size_t j) {
    edge_type              e   = t.basis_edges.at(j);
    std::vector<edge_type> out = t.tree_path[g.origin(e)];
    out.push_back(e);
    auto back = invert_path(t.tree_path[g.terminus(e)]);
    out.insert(out.end(), back.begin(), back.end());
    return out;
  }

  std::vector<edge_type> tree_path_between(SpanningTree const& t, vertex_type u, vertex_type v) {
    // Edge paths reduce like words over the edge codes.
    std::vector<edge_type> p = invert_path(t.tree_path[u]);
    p.insert(p.end(), t.tree_path[v].begin(), t.tree_path[v].end());
    return free_reduce(p);
  }

  word_type
  rewrite_in_basis(SubgroupGraph const& g, SpanningTree const& t, word_type const& h) {
    word_type   out;
    vertex_type v = g.root();
    for (letter_type x : free_reduce(h)) {
      edge_type e = (x == 0 || x > g.rank() || -x > g.rank()) ? 0 : g.edge_at(v, x);
      if (e == 0) {
        fail(error_kind::precondition, format_word(h) + " is not in the subgroup");
      }
      int j = t.basis_index[e > 0 ? e : -e];
      if (j >= 0) {
        out.push_back(e > 0 ? j + 1 : -(j + 1));
      }
      v = g.terminus(e);
    }
    if (v != g.root()) {
      fail(error_kind::precondition, format_word(h) + " is not in the subgroup");
    }
    return out;
  }

  word_type substitute(word_type const& expr, std::vector<word_type> const& images) {
    word_type out;
    for (letter_type s : expr) {
      size_t j = static_cast<size_t>(s > 0 ? s : -s) - 1;
      if (j >= images.size()) {
        fail(error_kind::precondition, "basis symbol without an image");
      }
      if (s > 0) {
        out.insert(out.end(), images[j].begin(), images[j].end());
      } else {
        word_type inv = invert(images[j]);
        out.insert(out.end(), inv.begin(), inv.end());
      }
    }
    return free_reduce(out);
  }

  ////////////////////////////////////////////////////////////////////////
  // Shifts
  ////////////////////////////////////////////////////////////////////////

  ShiftTable::ShiftTable(SubgroupGraph const& g, std::vector<std::vector<vertex_type>> from_root)
      : _from_root(std::move(from_root)) {
    size_t const n = _from_root.size();
    _to_root.assign(n, std::vector<vertex_type>(n));
    _edge_from_root.assign(n, std::vector<edge_type>(g.num_edges() + 1, 0));
    for (size_t v = 0; v < n; ++v) {
      for (size_t x = 0; x < n; ++x) {
        _to_root[v][_from_root[v][x]] = static_cast<vertex_type>(x);
      }
      for (edge_type e = 1; e <= static_cast<edge_type>(g.num_edges()); ++e) {
        _edge_from_root[v][e] = g.edge_at(_from_root[v][g.origin(e)], g.label(e));
      }
    }
  }

  std::vector<vertex_type> ShiftTable::vertex_map(vertex_type u, vertex_type v) const {
    std::vector<vertex_type> out(_from_root.size());
    for (size_t x = 0; x < out.size(); ++x) {
      out[x] = apply(u, v, static_cast<vertex_type>(x));
    }
    return out;
  }

  SelfSimilarity shift_tables(SubgroupGraph const& g) {
    if (!g.is_regular()) {
      fail(error_kind::precondition, "shift tables need an X-regular graph");
    }
    size_t const                          n     = g.num_vertices();
    size_t const                          slots = 2 * static_cast<size_t>(g.rank());
    std::vector<std::vector<vertex_type>> maps;
    maps.reserve(n);
    for (vertex_type v = 0; v < n; ++v) {
      std::vector<vertex_type> sigma(n, no_vertex);
      std::vector<bool>        used(n, false);
      std::queue<vertex_type>  queue;
      sigma[g.root()] = v;
      used[v]         = true;
      queue.push(g.root());
      while (!queue.empty()) {
        vertex_type x = queue.front();
        queue.pop();
        for (size_t s = 0; s < slots; ++s) {
          letter_type l  = slot_letter(s);
          vertex_type y  = g.target(x, l);
          vertex_type sy = g.target(sigma[x], l);
          if (sigma[y] == no_vertex) {
            if (used[sy]) {
              return {false, v, {}};
            }
            sigma[y] = sy;
            used[sy] = true;
            queue.push(y);
          } else if (sigma[y] != sy) {
            return {false, v, {}};
          }
        }
      }
      maps.push_back(std::move(sigma));
    }
    return {true, no_vertex, ShiftTable(g, std::move(maps))};
  }

  bool is_normal(SubgroupGraph const& g) {
    return g.is_regular() && shift_tables(g).self_similar;
  }

  ////////////////////////////////////////////////////////////////////////
  // Subgroup arithmetic
  ////////////////////////////////////////////////////////////////////////

  SubgroupGraph intersect(SubgroupGraph const& g1, SubgroupGraph const& g2) {
    if (g1.rank() != g2.rank()) {
      fail(error_kind::precondition, "graphs over different alphabets");
    }
    size_t const slots = 2 * static_cast<size_t>(g1.rank());
    using pair_type    = std::pair<vertex_type, vertex_type>;
    std::map<pair_type, vertex_type> index;
    std::vector<pair_type>           order{{g1.root(), g2.root()}};
    index[order[0]] = 0;
    std::vector<vertex_type> table;
    for (size_t i = 0; i < order.size(); ++i) {
      auto [u1, u2] = order[i];
      table.resize((i + 1) * slots, no_vertex);
      for (size_t s = 0; s < slots; ++s) {
        letter_type x  = slot_letter(s);
        vertex_type w1 = g1.target(u1, x);
        vertex_type w2 = g2.target(u2, x);
        if (w1 == no_vertex || w2 == no_vertex) {
          continue;
        }
        auto [it, inserted] = index.emplace(pair_type{w1, w2}, static_cast<vertex_type>(order.size()));
        if (inserted) {
          order.emplace_back(w1, w2);
        }
        table[i * slots + s] = it->second;
      }
    }
    table.resize(order.size() * slots, no_vertex);
    return SubgroupGraph::from_table(g1.rank(), table, 0, true);
  }

  SubgroupGraph normal_core(SubgroupGraph const& g) {
    if (!g.is_regular()) {
      fail(error_kind::precondition, "normal core needs a finite-index subgroup");
    }
    SubgroupGraph core = g;
    for (vertex_type v = 1; v < g.num_vertices(); ++v) {
      core = intersect(core, g.rerooted(v));
    }
    return core;
  }

  SubgroupGraph image_subgroup(SubgroupGraph const&          gh,
                               SpanningTree const&           th,
                               std::vector<word_type> const& images,
                               std::vector<word_type> const& gens) {
    std::vector<word_type> words;
    words.reserve(gens.size());
    for (auto const& g : gens) {
      words.push_back(substitute(rewrite_in_basis(gh, th, g), images));
    }
    return fold_from_generators(words, gh.rank());
  }

  vertex_type
  coset_mul(SubgroupGraph const& g, SpanningTree const& t, vertex_type v1, vertex_type v2) {
    Trace tr = trace(g, v1, t.tree_word.at(v2));
    if (!tr.complete) {
      fail(error_kind::precondition, "coset multiplication needs an X-regular graph");
    }
    return tr.endpoint;
  }

  vertex_type coset_inverse(SubgroupGraph const& g, SpanningTree const& t, vertex_type v) {
    Trace tr = trace(g, g.root(), invert(t.tree_word.at(v)));
    if (!tr.complete) {
      fail(error_kind::precondition, "coset inverse needs an X-regular graph");
    }
    return tr.endpoint;
  }

}  // namespace hnnwp
