#include "hnnwp/engine_normal.hpp"

#include <algorithm>  // for max
#include <chrono>     // for steady_clock
#include <cstdio>   // for snprintf
#include <utility>  // for move

#include "hnnwp/error.hpp"  // for Error, fail

namespace hnnwp {

  ////////////////////////////////////////////////////////////////////////
  // Edge tables
  ////////////////////////////////////////////////////////////////////////

  size_t PhiTables::weight() const {
    return weight(1) + weight(-1);
  }

  size_t PhiTables::weight(int direction) const {
    size_t total = 0;
    for (size_t j = 0; j < slps.size(); ++j) {
      total += get(j, direction, false).size() + get(j, direction, true).size();
    }
    return total;
  }

  PhiTables build_phi_tables(SubgroupGraph const&          g,
                             SpanningTree const&           t,
                             std::vector<word_type> const& images,
                             std::vector<word_type> const& inverse_images,
                             SlpOptions const&             opts) {
    if (images.size() != t.rank() || inverse_images.size() != t.rank()) {
      fail(error_kind::precondition, "one image per basis element required");
    }
    SlpOps    ops(opts);
    PhiTables out;
    out.slps.resize(t.rank());
    for (size_t j = 0; j < t.rank(); ++j) {
      for (int d : {1, -1}) {
        word_type const& w    = d > 0 ? images[j] : inverse_images[j];
        auto             path = trace_edges(g, g.root(), w);
        if (!path.empty() && g.terminus(path.back()) != g.root()) {
          fail(error_kind::internal, "image " + format_word(w) + " is not a circuit");
        }
        Slp fwd = Slp::from_word(path);
        Slp bwd = Slp::from_word(invert_path(path));
        if (!ops.equal(label_slp(fwd, g), Slp::from_word(w))
            || !ops.equal(label_slp(bwd, g), Slp::from_word(invert(w)))) {
          fail(error_kind::internal, "table for " + format_word(t.basis[j]) + " has a wrong label");
        }
        out.slps[j][d > 0 ? 0 : 2] = std::move(fwd);
        out.slps[j][d > 0 ? 1 : 3] = std::move(bwd);
      }
    }
    return out;
  }

  Slp apply_phi_tables(SubgroupGraph const& g,
                       SpanningTree const&  t,
                       PhiTables const&     tables,
                       Slp const&           p,
                       int                  direction) {
    if (!p.empty_value()) {
      PathCheck pc = check_path(p, g);
      if (!pc.connected || pc.origin != g.root() || pc.terminus != g.root()) {
        fail(error_kind::precondition, "phi applies to circuits at the root only");
      }
    }
    using P         = Slp::Production;
    auto const& src = p.productions();

    std::vector<P>       out;
    std::vector<int64_t> table_root(2 * t.rank(), -1);
    auto                 key = [&](symbol_type e) -> int64_t {
      int j = t.basis_index[static_cast<size_t>(e > 0 ? e : -e)];
      return j < 0 ? -1 : 2 * j + (e < 0 ? 1 : 0);
    };
    for (auto const& pr : src) {
      if (pr.terminal == 0) {
        continue;
      }
      int64_t k = key(pr.terminal);
      if (k < 0 || table_root[k] >= 0) {
        continue;
      }
      Slp const& tab    = tables.get(static_cast<size_t>(k / 2), direction, k % 2 == 1);
      auto const offset = static_cast<Slp::index_type>(out.size());
      for (auto q : tab.productions()) {
        if (q.is_pair()) {
          q.left += offset;
          q.right += offset;
        }
        out.push_back(q);
      }
      table_root[k] = offset + tab.root();
    }
    std::vector<Slp::index_type> map(src.size());
    for (size_t i = 0; i < src.size(); ++i) {
      auto const& pr = src[i];
      if (pr.terminal != 0) {
        int64_t k = key(pr.terminal);
        if (k >= 0) {
          map[i] = static_cast<Slp::index_type>(table_root[k]);
          continue;
        }
        out.push_back(P::empty());
      } else if (pr.is_empty) {
        out.push_back(P::empty());
      } else {
        out.push_back(P::pair(map[pr.left], map[pr.right]));
      }
      map[i] = static_cast<Slp::index_type>(out.size() - 1);
    }
    return Slp::from_productions(out, map[p.root()]);
  }

  ////////////////////////////////////////////////////////////////////////
  // Instance
  ////////////////////////////////////////////////////////////////////////

  NormalInstance precompute_normal(int                                          rank,
                                   std::vector<word_type> const&                gens,
                                   std::vector<word_type> const&                images,
                                   std::optional<std::vector<word_type>> const& inverse_images,
                                   SlpOptions const&                            opts) {
    NormalInstance inst;
    inst.slp = opts;
    inst.phi = make_basis_map(rank, gens, images, inverse_images, opts);
    if (!regular_index(inst.graph())) {
      fail(error_kind::invalid_instance, "the subgroup has infinite index");
    }
    SelfSimilarity ss = shift_tables(inst.graph());
    if (!ss.self_similar) {
      fail(error_kind::invalid_instance, "the subgroup is not normal");
    }
    inst.shifts = std::move(ss.shifts);
    inst.tables = build_phi_tables(
        inst.graph(), inst.tree(), inst.phi.images, inst.phi.inverse_images, opts);
    inst.C = inst.tables.weight() + 2;
    return inst;
  }

  ////////////////////////////////////////////////////////////////////////
  // Compressed words
  ////////////////////////////////////////////////////////////////////////

  size_t HnnWord::total_size() const {
    size_t total = 0;
    for (auto const& p : parts) {
      total += p.size();
    }
    return total;
  }

  HnnWord compile_input(NormalInstance const& inst, HnnWordText const& w) {
    HnnWord out;
    out.signs = w.signs;
    for (auto const& syl : w.syllables) {
      auto path = trace_edges(inst.graph(), inst.graph().root(), syl);
      out.ends.push_back(path.empty() ? inst.graph().root() : inst.graph().terminus(path.back()));
      out.parts.push_back(Slp::from_word(path));
    }
    return out;
  }

  Slp apply_phi_slp(NormalInstance const& inst, Slp const& p, int direction) {
    return apply_phi_tables(inst.graph(), inst.tree(), inst.tables, p, direction);
  }

  namespace {
    // left ∘ S_{r,v1}(phi^d(mid)) ∘ S_{r,v1}(right) with v1 the end of left.
    Slp reduce_segment(NormalInstance const& inst,
                       Slp const&            left,
                       vertex_type           v1,
                       Slp const&            mid,
                       Slp const&            right,
                       int                   direction) {
      Slp mid1 = shift_apply(apply_phi_slp(inst, mid, direction), inst.shifts, v1);
      return concat(concat(left, mid1), shift_apply(right, inst.shifts, v1));
    }

    vertex_type path_end(SubgroupGraph const& g, Slp const& p) {
      if (p.empty_value()) {
        return g.root();
      }
      PathCheck pc = check_path(p, g);
      if (!pc.connected || pc.origin != g.root()) {
        fail(error_kind::precondition, "syllable is not a path from the root");
      }
      return pc.terminus;
    }
  }  // namespace

  std::optional<Slp> britton_step_normal(NormalInstance const& inst,
                                         Slp const&            left,
                                         Slp const&            mid,
                                         Slp const&            right,
                                         int                   direction) {
    vertex_type v1 = path_end(inst.graph(), left);
    path_end(inst.graph(), right);
    if (path_end(inst.graph(), mid) != inst.graph().root()) {
      return std::nullopt;
    }
    return reduce_segment(inst, left, v1, mid, right, direction);
  }

  ////////////////////////////////////////////////////////////////////////
  // Solving
  ////////////////////////////////////////////////////////////////////////

  std::string SolveStats::serialize(bool with_time) const {
    std::string s = "k=" + std::to_string(syllables) + " pinches=" + std::to_string(pinches)
                    + " initial_size=" + std::to_string(initial_size)
                    + " max_size=" + std::to_string(max_size)
                    + " final_size=" + std::to_string(final_size)
                    + " reduced_size=" + std::to_string(reduced_size)
                    + " reduced_length=" + to_string(reduced_length)
                    + " C=" + std::to_string(constant)
                    + " ledger_violations=" + std::to_string(ledger_violations);
    if (index_N != 0) {
      s += " index_N=" + std::to_string(index_N)
           + " marked_cosets=" + std::to_string(marked_cosets);
    }
    if (with_time) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), " time=%.6fs", seconds);
      s += buf;
    }
    return s;
  }

  SolveResult solve_normal(NormalInstance const& inst, HnnWord hw) {
    auto const        start = std::chrono::steady_clock::now();
    SolveResult       res;
    SolveStats&       st   = res.stats;
    vertex_type const r    = inst.graph().root();
    st.syllables           = hw.stable_count();
    st.constant            = inst.C;
    st.initial_size        = hw.total_size();
    st.max_size            = st.initial_size;
    size_t total           = st.initial_size;

    size_t i = 1;
    while (i + 1 < hw.parts.size()) {
      if (hw.signs[i - 1] != -hw.signs[i] || hw.ends[i] != r) {
        ++i;
        continue;
      }
      int         direction = hw.signs[i - 1] < 0 ? 1 : -1;
      vertex_type v1        = hw.ends[i - 1];
      Slp merged = reduce_segment(inst, hw.parts[i - 1], v1, hw.parts[i], hw.parts[i + 1], direction);
      total -= hw.parts[i - 1].size() + hw.parts[i].size() + hw.parts[i + 1].size();
      total += merged.size();
      hw.ends[i - 1]  = inst.shifts.from_root(v1, hw.ends[i + 1]);
      hw.parts[i - 1] = std::move(merged);
      hw.parts.erase(hw.parts.begin() + i, hw.parts.begin() + i + 2);
      hw.ends.erase(hw.ends.begin() + i, hw.ends.begin() + i + 2);
      hw.signs.erase(hw.signs.begin() + (i - 1), hw.signs.begin() + i + 1);
      ++st.pinches;
      st.max_size = std::max(st.max_size, total);
      if (total > st.initial_size + st.pinches * inst.C) {
        ++st.ledger_violations;
      }
      i = i > 1 ? i - 1 : 1;
    }

    if (hw.signs.empty()) {
      Slp const& final_slp = hw.parts.front();
      st.final_size        = final_slp.size();
      if (2 * st.final_size > 2 * st.initial_size + st.syllables * inst.C) {
        ++st.ledger_violations;
      }
      res.reduced        = free_reduce_slp(final_slp, inst.slp);
      res.trivial        = is_empty_val(res.reduced);
      st.reduced_size    = res.reduced.size();
      st.reduced_length  = res.reduced.length();
    } else {
      st.final_size       = total;
      st.stable_remaining = hw.signs.size();
    }
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  }

  SolveResult solve_normal(NormalInstance const& inst, HnnWordText const& w) {
    return solve_normal(inst, compile_input(inst, w));
  }

}  // namespace hnnwp
