#include "grammar.hpp"

#include <algorithm>  // for max, min
#include <utility>    // for pair

#include "hnnwp/error.hpp"  // for fail

namespace hnnwp::detail {

  namespace {
    constexpr uint64_t mod1 = (uint64_t(1) << 61) - 1;
    constexpr uint64_t mod2 = (uint64_t(1) << 62) - 57;

    uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
      return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
    }

    uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
      uint64_t s = a + b;  // both < 2^62, no overflow
      return s >= m ? s - m : s;
    }

    uint64_t splitmix64(uint64_t x) {
      x += 0x9e3779b97f4a7c15ULL;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    }
  }  // namespace

  Grammar::Grammar(bool hashing, uint64_t seed)
      : _hashing(hashing),
        _seed(seed),
        _base1(2 + splitmix64(seed ^ 0x1111) % (mod1 - 3)),
        _base2(2 + splitmix64(seed ^ 0x2222) % (mod2 - 3)) {
    _nodes.emplace_back();  // the empty node
  }

  uint64_t Grammar::terminal_value(symbol_type s, int which) const {
    uint64_t m = which == 1 ? mod1 : mod2;
    uint64_t x = splitmix64(_seed + static_cast<uint64_t>(which) * 0x51ed27
                            + (static_cast<uint64_t>(static_cast<uint32_t>(s)) << 8));
    return 1 + x % (m - 1);
  }

  Grammar::node_id Grammar::leaf(symbol_type s) {
    auto it = _leaves.find(s);
    if (it != _leaves.end()) {
      return it->second;
    }
    Node n;
    n.sym   = s;
    n.len   = 1;
    n.first = n.last = s;
    if (_hashing) {
      n.h1 = terminal_value(s, 1);
      n.h2 = terminal_value(s, 2);
      n.p1 = _base1;
      n.p2 = _base2;
    }
    auto id = static_cast<node_id>(_nodes.size());
    _nodes.push_back(n);
    _leaves.emplace(s, id);
    return id;
  }

  Grammar::node_id Grammar::make(node_id a, node_id b) {
    Node const& x = _nodes[a];
    Node const& y = _nodes[b];
    Node        n;
    n.left   = a;
    n.right  = b;
    n.height = static_cast<uint16_t>(std::max(x.height, y.height) + 1);
    n.len    = add_lengths(x.len, y.len);
    n.first  = x.first;
    n.last   = y.last;
    if (_hashing) {
      n.h1 = addmod(x.h1, mulmod(x.p1, y.h1, mod1), mod1);
      n.h2 = addmod(x.h2, mulmod(x.p2, y.h2, mod2), mod2);
      n.p1 = mulmod(x.p1, y.p1, mod1);
      n.p2 = mulmod(x.p2, y.p2, mod2);
    }
    auto id = static_cast<node_id>(_nodes.size());
    _nodes.push_back(n);
    return id;
  }

  Grammar::node_id Grammar::rotate_left(node_id n) {
    node_id x = _nodes[n].left;
    node_id y = _nodes[n].right;
    node_id l = make(x, _nodes[y].left);
    return make(l, _nodes[y].right);
  }

  Grammar::node_id Grammar::rotate_right(node_id n) {
    node_id x = _nodes[n].left;
    node_id y = _nodes[n].right;
    node_id r = make(_nodes[x].right, y);
    return make(_nodes[x].left, r);
  }

  // height(a) > height(b) + 1
  Grammar::node_id Grammar::join_right(node_id a, node_id b) {
    node_id l  = _nodes[a].left;
    node_id c  = _nodes[a].right;
    int     hl = _nodes[l].height;
    if (_nodes[c].height <= _nodes[b].height + 1) {
      node_id t = make(c, b);
      if (_nodes[t].height <= hl + 1) {
        return make(l, t);
      }
      return rotate_left(make(l, rotate_right(t)));
    }
    node_id t = join_right(c, b);
    node_id u = make(l, t);
    if (_nodes[t].height <= hl + 1) {
      return u;
    }
    return rotate_left(u);
  }

  // height(b) > height(a) + 1
  Grammar::node_id Grammar::join_left(node_id a, node_id b) {
    node_id c  = _nodes[b].left;
    node_id r  = _nodes[b].right;
    int     hr = _nodes[r].height;
    if (_nodes[c].height <= _nodes[a].height + 1) {
      node_id t = make(a, c);
      if (_nodes[t].height <= hr + 1) {
        return make(t, r);
      }
      return rotate_right(make(rotate_left(t), r));
    }
    node_id t = join_left(a, c);
    node_id u = make(t, r);
    if (_nodes[t].height <= hr + 1) {
      return u;
    }
    return rotate_right(u);
  }

  Grammar::node_id Grammar::join(node_id a, node_id b) {
    if (a == empty) {
      return b;
    }
    if (b == empty) {
      return a;
    }
    int ha = _nodes[a].height;
    int hb = _nodes[b].height;
    if (ha > hb + 1) {
      return join_right(a, b);
    }
    if (hb > ha + 1) {
      return join_left(a, b);
    }
    return make(a, b);
  }

  Grammar::node_id Grammar::prefix(node_id n, length_type len) {
    if (len == 0) {
      return empty;
    }
    if (len >= _nodes[n].len) {
      return n;
    }
    node_id     l  = _nodes[n].left;
    node_id     r  = _nodes[n].right;
    length_type ll = _nodes[l].len;
    if (len <= ll) {
      return prefix(l, len);
    }
    return join(l, prefix(r, len - ll));
  }

  Grammar::node_id Grammar::suffix(node_id n, length_type len) {
    if (len == 0) {
      return empty;
    }
    if (len >= _nodes[n].len) {
      return n;
    }
    node_id     l  = _nodes[n].left;
    node_id     r  = _nodes[n].right;
    length_type rl = _nodes[r].len;
    if (len <= rl) {
      return suffix(r, len);
    }
    return join(suffix(l, len - rl), r);
  }

  Grammar::node_id Grammar::inverse(node_id n) {
    if (n == empty) {
      return empty;
    }
    if (_nodes[n].inv != 0) {
      return _nodes[n].inv;
    }
    node_id out;
    if (_nodes[n].sym != 0) {
      out = leaf(-_nodes[n].sym);
    } else {
      node_id r = inverse(_nodes[n].right);
      node_id l = inverse(_nodes[n].left);
      out       = make(r, l);
    }
    _nodes[n].inv   = out;
    _nodes[out].inv = n;
    return out;
  }

  Fingerprint Grammar::prefix_fingerprint(node_id n, length_type len) const {
    uint64_t h1 = 0, h2 = 0, p1 = 1, p2 = 1;
    while (len > 0) {
      Node const& x = _nodes[n];
      if (len >= x.len) {
        h1 = addmod(h1, mulmod(p1, x.h1, mod1), mod1);
        h2 = addmod(h2, mulmod(p2, x.h2, mod2), mod2);
        break;
      }
      Node const& l = _nodes[x.left];
      if (len <= l.len) {
        n = x.left;
        continue;
      }
      h1 = addmod(h1, mulmod(p1, l.h1, mod1), mod1);
      h2 = addmod(h2, mulmod(p2, l.h2, mod2), mod2);
      p1 = mulmod(p1, l.p1, mod1);
      p2 = mulmod(p2, l.p2, mod2);
      len -= l.len;
      n = x.right;
    }
    return {h1, h2};
  }

  Grammar::node_id Grammar::import(Slp const& p) {
    std::vector<node_id> map(p.size(), empty);
    for (Slp::index_type i = 0; i < p.size(); ++i) {
      auto const& pr = p.production(i);
      if (pr.is_empty) {
        map[i] = empty;
      } else if (pr.terminal != 0) {
        map[i] = leaf(pr.terminal);
      } else {
        map[i] = join(map[pr.left], map[pr.right]);
      }
    }
    return map[p.root()];
  }

  std::vector<Slp::Production> Grammar::extract(std::vector<node_id> const& roots,
                                                std::vector<int64_t>&       root_index) const {
    std::vector<Slp::Production>      prods;
    std::unordered_map<node_id, uint32_t> index;
    std::vector<std::pair<node_id, bool>> stack;
    root_index.clear();
    for (node_id r : roots) {
      if (r == empty) {
        root_index.push_back(-1);
        continue;
      }
      stack.emplace_back(r, false);
      while (!stack.empty()) {
        auto [n, expanded] = stack.back();
        stack.pop_back();
        if (index.count(n)) {
          continue;
        }
        Node const& x = _nodes[n];
        if (x.sym != 0) {
          index[n] = static_cast<uint32_t>(prods.size());
          prods.push_back(Slp::Production::leaf(x.sym));
        } else if (expanded) {
          index[n] = static_cast<uint32_t>(prods.size());
          prods.push_back(Slp::Production::pair(index.at(x.left), index.at(x.right)));
        } else {
          stack.emplace_back(n, true);
          if (!index.count(x.right)) {
            stack.emplace_back(x.right, false);
          }
          if (!index.count(x.left)) {
            stack.emplace_back(x.left, false);
          }
        }
      }
      root_index.push_back(index.at(r));
    }
    return prods;
  }

  Slp Grammar::export_slp(node_id n) const {
    if (n == empty) {
      return Slp();
    }
    std::vector<int64_t> roots;
    auto                 prods = extract({n}, roots);
    // The root is the last production emitted by the post-order walk.
    return Slp::from_ordered(std::move(prods));
  }

  void Grammar::expand(node_id n, length_type limit, std::vector<symbol_type>& out) const {
    if (n == empty) {
      return;
    }
    std::vector<node_id> stack{n};
    length_type          emitted = 0;
    while (!stack.empty() && emitted < limit) {
      node_id x = stack.back();
      stack.pop_back();
      if (_nodes[x].sym != 0) {
        out.push_back(_nodes[x].sym);
        ++emitted;
      } else {
        stack.push_back(_nodes[x].right);
        stack.push_back(_nodes[x].left);
      }
    }
  }

  int Grammar::balance(node_id n) const {
    Node const& x = _nodes[n];
    if (x.sym != 0 || n == empty) {
      return 0;
    }
    return static_cast<int>(_nodes[x.left].height) - static_cast<int>(_nodes[x.right].height);
  }

}  // namespace hnnwp::detail
