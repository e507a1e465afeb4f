#include "recompression.hpp"

#include <algorithm>  // for sort, unique
#include <map>        // for map
#include <optional>   // for optional
#include <utility>    // for pair

#include "hnnwp/error.hpp"  // for fail

namespace hnnwp::detail {

  namespace {

    struct Item {
      uint32_t    id;
      bool        nt;
      length_type power;  // letters only
    };

    using Rule = std::vector<Item>;

    class Recompressor {
     public:
      Recompressor(std::vector<Slp::Production> const& prods, int64_t root1, int64_t root2) {
        std::map<symbol_type, uint32_t> letters;
        for (auto const& p : prods) {
          Rule r;
          if (p.terminal != 0) {
            auto [it, inserted] = letters.emplace(p.terminal, _next_letter);
            if (inserted) {
              ++_next_letter;
            }
            r.push_back({it->second, false, 1});
          } else if (!p.is_empty) {
            r.push_back({p.left, true, 1});
            r.push_back({p.right, true, 1});
          }
          _rules.push_back(std::move(r));
        }
        // Two fresh roots that never pop letters.
        for (int64_t root : {root1, root2}) {
          Rule r;
          if (root >= 0) {
            r.push_back({static_cast<uint32_t>(root), true, 1});
          }
          _rules.push_back(std::move(r));
        }
        _frozen.assign(_rules.size(), false);
        _root1                = _rules.size() - 2;
        _root2                = _rules.size() - 1;
        _frozen[_root1]       = true;
        _frozen[_root2]       = true;
        drop_empty_references();
      }

      bool run() {
        for (size_t round = 0;; ++round) {
          if (round > 100000) {
            fail(error_kind::internal, "recompression did not terminate");
          }
          if (auto decided = decide()) {
            return *decided;
          }
          block_phase();
          if (auto decided = decide()) {
            return *decided;
          }
          pair_phase();
        }
      }

     private:
      std::optional<bool> decide() {
        compute_lengths();
        length_type l1 = _length[_root1];
        length_type l2 = _length[_root2];
        if (l1 != l2) {
          return false;
        }
        if (l1 == 0) {
          return true;
        }
        if (l1 == 1) {
          compute_boundaries();
          return _first[_root1] == _first[_root2];
        }
        return std::nullopt;
      }

      void compute_lengths() {
        _length.assign(_rules.size(), 0);
        for (size_t x = 0; x < _rules.size(); ++x) {
          length_type len = 0;
          for (auto const& it : _rules[x]) {
            len = add_lengths(len, it.nt ? _length[it.id] : it.power);
          }
          _length[x] = len;
        }
      }

      void compute_boundaries() {
        _first.assign(_rules.size(), 0);
        _last.assign(_rules.size(), 0);
        for (size_t x = 0; x < _rules.size(); ++x) {
          if (_rules[x].empty()) {
            continue;
          }
          Item const& f = _rules[x].front();
          Item const& l = _rules[x].back();
          _first[x]     = f.nt ? _first[f.id] : f.id;
          _last[x]      = l.nt ? _last[l.id] : l.id;
        }
      }

      void drop_empty_references() {
        for (size_t x = 0; x < _rules.size(); ++x) {
          Rule out;
          for (auto const& it : _rules[x]) {
            if (!it.nt || !_rules[it.id].empty()) {
              out.push_back(it);
            }
          }
          _rules[x] = std::move(out);
        }
      }

      static void push_merge(Rule& out, Item const& it) {
        if (!it.nt && !out.empty() && !out.back().nt && out.back().id == it.id) {
          out.back().power = add_lengths(out.back().power, it.power);
        } else {
          out.push_back(it);
        }
      }

      void block_phase() {
        std::vector<std::optional<Item>> lp(_rules.size()), rp(_rules.size());
        for (size_t x = 0; x < _rules.size(); ++x) {
          Rule out;
          for (auto const& it : _rules[x]) {
            if (!it.nt) {
              push_merge(out, it);
              continue;
            }
            if (lp[it.id]) {
              push_merge(out, *lp[it.id]);
            }
            if (!_rules[it.id].empty()) {
              out.push_back(it);
            }
            if (rp[it.id]) {
              push_merge(out, *rp[it.id]);
            }
          }
          if (!_frozen[x] && !out.empty() && !out.front().nt) {
            lp[x] = out.front();
            out.erase(out.begin());
          }
          if (!_frozen[x] && !out.empty() && !out.back().nt) {
            rp[x] = out.back();
            out.pop_back();
          }
          _rules[x] = std::move(out);
        }
        for (auto& r : _rules) {
          for (auto& it : r) {
            if (!it.nt && it.power > 1) {
              auto [pos, inserted] = _blocks.emplace(std::make_pair(it.id, it.power), _next_letter);
              if (inserted) {
                ++_next_letter;
              }
              it.id    = pos->second;
              it.power = 1;
            }
          }
        }
      }

      // Greedy cut of the letters so that many distinct adjacent pairs run
      // from L to R; at least one does whenever a pair exists.
      void choose_partition() {
        compute_boundaries();
        std::vector<std::pair<uint32_t, uint32_t>> pairs;
        auto boundary = [this](Item const& it, bool first) {
          return it.nt ? (first ? _first[it.id] : _last[it.id]) : it.id;
        };
        for (auto const& r : _rules) {
          for (size_t i = 1; i < r.size(); ++i) {
            pairs.emplace_back(boundary(r[i - 1], false), boundary(r[i], true));
          }
        }
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

        std::map<uint32_t, std::vector<uint32_t>> nbrs;
        for (auto [a, b] : pairs) {
          if (a != b) {
            nbrs[a].push_back(b);
            nbrs[b].push_back(a);
          }
        }
        _side.clear();
        for (auto const& [a, list] : nbrs) {
          size_t in_l = 0, in_r = 0;
          for (uint32_t b : list) {
            auto it = _side.find(b);
            if (it != _side.end()) {
              (it->second == 0 ? in_l : in_r)++;
            }
          }
          _side[a] = in_l >= in_r ? 1 : 0;
        }
        size_t lr = 0, rl = 0;
        for (auto [a, b] : pairs) {
          if (a == b) {
            continue;
          }
          lr += _side[a] == 0 && _side[b] == 1;
          rl += _side[a] == 1 && _side[b] == 0;
        }
        if (rl > lr) {
          for (auto& [a, s] : _side) {
            s = 1 - s;
          }
        }
      }

      int side(uint32_t letter) const {
        auto it = _side.find(letter);
        return it == _side.end() ? 2 : it->second;
      }

      void pair_phase() {
        choose_partition();
        std::vector<std::optional<uint32_t>> lp(_rules.size()), rp(_rules.size());
        for (size_t x = 0; x < _rules.size(); ++x) {
          Rule out;
          for (auto const& it : _rules[x]) {
            if (!it.nt) {
              out.push_back(it);
              continue;
            }
            if (lp[it.id]) {
              out.push_back({*lp[it.id], false, 1});
            }
            if (!_rules[it.id].empty()) {
              out.push_back(it);
            }
            if (rp[it.id]) {
              out.push_back({*rp[it.id], false, 1});
            }
          }
          if (!_frozen[x] && !out.empty() && !out.front().nt && side(out.front().id) == 1) {
            lp[x] = out.front().id;
            out.erase(out.begin());
          }
          if (!_frozen[x] && !out.empty() && !out.back().nt && side(out.back().id) == 0) {
            rp[x] = out.back().id;
            out.pop_back();
          }
          _rules[x] = std::move(out);
        }
        for (auto& r : _rules) {
          Rule out;
          for (size_t i = 0; i < r.size(); ++i) {
            if (i + 1 < r.size() && !r[i].nt && !r[i + 1].nt && side(r[i].id) == 0
                && side(r[i + 1].id) == 1) {
              auto [pos, inserted]
                  = _pairs.emplace(std::make_pair(r[i].id, r[i + 1].id), _next_letter);
              if (inserted) {
                ++_next_letter;
              }
              out.push_back({pos->second, false, 1});
              ++i;
            } else {
              out.push_back(r[i]);
            }
          }
          r = std::move(out);
        }
      }

      std::vector<Rule>                                 _rules;
      std::vector<bool>                                 _frozen;
      size_t                                            _root1 = 0, _root2 = 0;
      uint32_t                                          _next_letter = 0;
      std::map<std::pair<uint32_t, length_type>, uint32_t> _blocks;
      std::map<std::pair<uint32_t, uint32_t>, uint32_t> _pairs;
      std::map<uint32_t, int>                           _side;
      std::vector<length_type>                          _length;
      std::vector<uint32_t>                             _first, _last;
    };

  }  // namespace

  bool recompression_equal(std::vector<Slp::Production> const& prods,
                           int64_t                             root1,
                           int64_t                             root2) {
    Recompressor r(prods, root1, root2);
    return r.run();
  }

}  // namespace hnnwp::detail
