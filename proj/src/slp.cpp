#include "hnnwp/slp.hpp"

#include <algorithm>  // for max, min, reverse
#include <map>        // for map

#include "grammar.hpp"        // for Grammar
#include "hnnwp/error.hpp"    // for fail
#include "recompression.hpp"  // for recompression_equal

namespace hnnwp {

  std::string to_string(length_type n) {
    if (n == 0) {
      return "0";
    }
    std::string out;
    while (n > 0) {
      out.push_back(static_cast<char>('0' + static_cast<int>(n % 10)));
      n /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  length_type add_lengths(length_type a, length_type b) {
    length_type s = a + b;
    if (s < a) {
      fail(error_kind::limit, "SLP value length exceeds 128 bits");
    }
    return s;
  }

  ////////////////////////////////////////////////////////////////////////
  // Slp
  ////////////////////////////////////////////////////////////////////////

  Slp::Slp() : _prods{Production::empty()} {
    compute_caches();
  }

  Slp Slp::from_ordered(std::vector<Production> prods) {
    Slp p;
    if (prods.empty()) {
      return p;
    }
    p._prods = std::move(prods);
    p.compute_caches();
    return p;
  }

  void Slp::compute_caches() {
    size_t const n = _prods.size();
    _length.assign(n, 0);
    _first.assign(n, 0);
    _last.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
      auto const& pr = _prods[i];
      if (pr.is_empty) {
        continue;
      }
      if (pr.terminal != 0) {
        _length[i] = 1;
        _first[i] = _last[i] = pr.terminal;
        continue;
      }
      if (pr.left >= i || pr.right >= i) {
        fail(error_kind::internal, "production refers forward");
      }
      _length[i] = add_lengths(_length[pr.left], _length[pr.right]);
      _first[i]  = _length[pr.left] != 0 ? _first[pr.left] : _first[pr.right];
      _last[i]   = _length[pr.right] != 0 ? _last[pr.right] : _last[pr.left];
    }
  }

  Slp Slp::from_word(std::vector<symbol_type> const& w) {
    if (w.empty()) {
      return Slp();
    }
    std::vector<Production>         prods;
    std::map<symbol_type, index_type> leaves;
    std::vector<index_type>         level;
    level.reserve(w.size());
    for (symbol_type s : w) {
      if (s == 0) {
        fail(error_kind::precondition, "0 is not a terminal symbol");
      }
      auto [it, inserted] = leaves.emplace(s, static_cast<index_type>(prods.size()));
      if (inserted) {
        prods.push_back(Production::leaf(s));
      }
      level.push_back(it->second);
    }
    // Pairwise combination, level by level: a balanced tree of depth
    // ceil(log2 |w|).
    while (level.size() > 1) {
      std::vector<index_type> next;
      for (size_t i = 0; i + 1 < level.size(); i += 2) {
        next.push_back(static_cast<index_type>(prods.size()));
        prods.push_back(Production::pair(level[i], level[i + 1]));
      }
      if (level.size() % 2 == 1) {
        next.push_back(level.back());
      }
      level = std::move(next);
    }
    // The root must be last; only a single distinct leaf can break that.
    if (level[0] != prods.size() - 1) {
      fail(error_kind::internal, "root is not the last production");
    }
    return from_ordered(std::move(prods));
  }

  Slp Slp::from_productions(std::vector<Production> const& prods, index_type root) {
    size_t const n = prods.size();
    if (root >= n) {
      fail(error_kind::precondition, "root index out of range");
    }
    for (auto const& p : prods) {
      if (p.is_pair() && (p.left >= n || p.right >= n)) {
        fail(error_kind::precondition, "production refers to an undefined nonterminal");
      }
    }
    // Iterative DFS from the root, emitting productions in post-order;
    // a grey node met again means a cycle.
    enum : uint8_t { white, grey, black };
    std::vector<uint8_t>                   colour(n, white);
    std::vector<index_type>                renumber(n, 0);
    std::vector<Production>                out;
    std::vector<std::pair<index_type, int>> stack{{root, 0}};
    colour[root] = grey;
    while (!stack.empty()) {
      auto& [x, state] = stack.back();
      Production const& p = prods[x];
      if (p.is_pair() && state < 2) {
        index_type child = state == 0 ? p.left : p.right;
        ++state;
        if (colour[child] == grey) {
          fail(error_kind::precondition, "production graph is cyclic");
        }
        if (colour[child] == white) {
          colour[child] = grey;
          stack.emplace_back(child, 0);
        }
        continue;
      }
      Production q = p;
      if (p.is_pair()) {
        q.left  = renumber[p.left];
        q.right = renumber[p.right];
      }
      renumber[x] = static_cast<index_type>(out.size());
      out.push_back(q);
      colour[x] = black;
      stack.pop_back();
    }
    return from_ordered(std::move(out));
  }

  size_t Slp::depth() const {
    std::vector<size_t> d(_prods.size(), 0);
    for (size_t i = 0; i < _prods.size(); ++i) {
      if (_prods[i].is_pair()) {
        d[i] = 1 + std::max(d[_prods[i].left], d[_prods[i].right]);
      }
    }
    return d.back();
  }

  std::string Slp::serialize() const {
    std::string out;
    for (size_t i = 0; i < _prods.size(); ++i) {
      auto const& p = _prods[i];
      out += "N" + std::to_string(i) + " -> ";
      if (p.is_empty) {
        out += "eps";
      } else if (p.terminal != 0) {
        out += (p.terminal > 0 ? "e+" : "e-") + std::to_string(p.terminal > 0 ? p.terminal : -p.terminal);
      } else {
        out += "N" + std::to_string(p.left) + " N" + std::to_string(p.right);
      }
      out += "\n";
    }
    return out;
  }

  Slp concat(Slp const& p1, Slp const& p2) {
    using index_type = Slp::index_type;
    std::vector<Slp::Production> prods;
    prods.reserve(p1.size() + p2.size() + 1);
    prods.insert(prods.end(), p1.productions().begin(), p1.productions().end());
    auto const offset = static_cast<index_type>(p1.size());
    for (auto pr : p2.productions()) {
      if (pr.is_pair()) {
        pr.left += offset;
        pr.right += offset;
      }
      prods.push_back(pr);
    }
    prods.push_back(Slp::Production::pair(p1.root(), static_cast<index_type>(offset + p2.root())));
    return Slp::from_ordered(std::move(prods));
  }

  bool is_empty_val(Slp const& p) {
    return p.empty_value();
  }

  FirstLast first_last(Slp const& p) {
    return {p.first(), p.last()};
  }

  std::vector<symbol_type> decompress(Slp const& p, length_type limit) {
    if (p.length() > limit) {
      fail(error_kind::limit,
           "value of length " + to_string(p.length()) + " exceeds the decompression limit");
    }
    std::vector<symbol_type> out;
    out.reserve(static_cast<size_t>(p.length()));
    std::vector<Slp::index_type> stack{p.root()};
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      auto const& pr = p.production(x);
      if (pr.terminal != 0) {
        out.push_back(pr.terminal);
      } else if (pr.is_pair()) {
        stack.push_back(pr.right);
        stack.push_back(pr.left);
      }
    }
    return out;
  }

  Slp map_terminals(Slp const& p, std::function<symbol_type(symbol_type)> const& f) {
    std::vector<Slp::Production> prods(p.productions());
    for (auto& pr : prods) {
      if (pr.terminal != 0) {
        pr.terminal = f(pr.terminal);
      }
    }
    return Slp::from_ordered(std::move(prods));
  }

  ////////////////////////////////////////////////////////////////////////
  // Edge SLPs
  ////////////////////////////////////////////////////////////////////////

  PathCheck check_path(Slp const& p, SubgroupGraph const& g) {
    size_t const             n = p.size();
    std::vector<vertex_type> o(n, no_vertex), t(n, no_vertex);
    auto const               m = static_cast<symbol_type>(g.num_edges());
    for (Slp::index_type i = 0; i < n; ++i) {
      auto const& pr = p.production(i);
      if (pr.terminal != 0) {
        if (pr.terminal > m || -pr.terminal > m) {
          return {false, no_vertex, no_vertex};
        }
        o[i] = g.origin(pr.terminal);
        t[i] = g.terminus(pr.terminal);
      } else if (pr.is_pair()) {
        bool le = p.length(pr.left) == 0, re = p.length(pr.right) == 0;
        if (!le && !re && t[pr.left] != o[pr.right]) {
          return {false, no_vertex, no_vertex};
        }
        o[i] = le ? o[pr.right] : o[pr.left];
        t[i] = re ? t[pr.left] : t[pr.right];
      }
    }
    return {true, o.back(), t.back()};
  }

  Slp shift_apply(Slp const& p, ShiftTable const& shifts, vertex_type v) {
    return map_terminals(p, [&](symbol_type e) { return shifts.edge_from_root(v, e); });
  }

  Slp label_slp(Slp const& p, SubgroupGraph const& g) {
    return map_terminals(p, [&](symbol_type e) { return g.label(e); });
  }

  ////////////////////////////////////////////////////////////////////////
  // SlpOps
  ////////////////////////////////////////////////////////////////////////

  namespace {

    using detail::Grammar;
    using node_id = Grammar::node_id;

    // Prefixes of at most this length are compared symbol by symbol in the
    // deterministic mode.
    constexpr length_type explicit_threshold = 64;

    class Session {
     public:
      Session(SlpOptions const& opts, SlpCounters& counters)
          : _opts(opts),
            _counters(counters),
            _g(opts.equality == equality_mode::fingerprint, opts.seed) {}

      Grammar& grammar() {
        return _g;
      }

      bool equal_nodes(node_id x, node_id y) {
        if (_g.length(x) != _g.length(y)) {
          return false;
        }
        return equal_prefix(x, y, _g.length(x));
      }

      // val(x)[0, len) == val(y)[0, len); both values have length >= len.
      bool equal_prefix(node_id x, node_id y, length_type len) {
        if (len == 0) {
          return true;
        }
        if (_opts.equality == equality_mode::fingerprint) {
          _counters.fingerprint_compares++;
          return _g.prefix_fingerprint(x, len) == _g.prefix_fingerprint(y, len);
        }
        if (len <= explicit_threshold) {
          _counters.explicit_compares++;
          std::vector<symbol_type> a, b;
          _g.expand(x, len, a);
          _g.expand(y, len, b);
          return a == b;
        }
        _counters.recompression_runs++;
        node_id              px = _g.prefix(x, len);
        node_id              py = _g.prefix(y, len);
        std::vector<int64_t> roots;
        auto                 prods = _g.extract({px, py}, roots);
        return detail::recompression_equal(prods, roots[0], roots[1]);
      }

      // Galloping then binary search on the common prefix length.
      length_type lcp(node_id x, node_id y) {
        length_type m = std::min(_g.length(x), _g.length(y));
        if (m == 0 || _g.node(x).first != _g.node(y).first) {
          return 0;
        }
        length_type lo = 1;  // a common prefix of this length is known
        length_type hi;      // a common prefix of this length is ruled out
        length_type probe = 2;
        while (true) {
          if (probe >= m) {
            if (equal_prefix(x, y, m)) {
              return m;
            }
            hi = m;
            break;
          }
          if (!equal_prefix(x, y, probe)) {
            hi = probe;
            break;
          }
          lo = probe;
          probe *= 2;
        }
        while (hi - lo > 1) {
          length_type mid = lo + (hi - lo) / 2;
          if (equal_prefix(x, y, mid)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        return lo;
      }

      node_id reduce(Slp const& p) {
        std::vector<node_id> map(p.size(), Grammar::empty);
        for (Slp::index_type i = 0; i < p.size(); ++i) {
          auto const& pr = p.production(i);
          if (pr.terminal != 0) {
            map[i] = _g.leaf(pr.terminal);
          } else if (pr.is_pair()) {
            node_id     a  = map[pr.left];
            node_id     b  = map[pr.right];
            length_type k  = lcp(_g.inverse(a), b);
            node_id     ra = _g.prefix(a, _g.length(a) - k);
            node_id     rb = _g.suffix(b, _g.length(b) - k);
            map[i]         = _g.join(ra, rb);
          }
        }
        return map[p.root()];
      }

     private:
      SlpOptions const& _opts;
      SlpCounters&      _counters;
      Grammar           _g;
    };

  }  // namespace

  bool SlpOps::equal(Slp const& p1, Slp const& p2) {
    if (p1.length() != p2.length()) {
      return false;
    }
    if (_opts.equality == equality_mode::recompression) {
      // Run directly on the two programs, no rebalancing needed.
      _counters.recompression_runs++;
      std::vector<Slp::Production> prods(p1.productions());
      auto const                   offset = static_cast<Slp::index_type>(p1.size());
      for (auto pr : p2.productions()) {
        if (pr.is_pair()) {
          pr.left += offset;
          pr.right += offset;
        }
        prods.push_back(pr);
      }
      return detail::recompression_equal(
          prods, p1.root(), static_cast<int64_t>(offset) + p2.root());
    }
    Session s(_opts, _counters);
    node_id a = s.grammar().import(p1);
    node_id b = s.grammar().import(p2);
    return s.equal_nodes(a, b);
  }

  length_type SlpOps::lcp(Slp const& p1, Slp const& p2) {
    Session s(_opts, _counters);
    node_id a = s.grammar().import(p1);
    node_id b = s.grammar().import(p2);
    return s.lcp(a, b);
  }

  Slp SlpOps::free_reduce(Slp const& p) {
    Session s(_opts, _counters);
    return s.grammar().export_slp(s.reduce(p));
  }

  bool equal_slp(Slp const& p1, Slp const& p2, SlpOptions const& opts) {
    SlpOps ops(opts);
    return ops.equal(p1, p2);
  }

  length_type lcp_len(Slp const& p1, Slp const& p2, SlpOptions const& opts) {
    SlpOps ops(opts);
    return ops.lcp(p1, p2);
  }

  Slp free_reduce_slp(Slp const& p, SlpOptions const& opts) {
    SlpOps ops(opts);
    return ops.free_reduce(p);
  }

}  // namespace hnnwp
