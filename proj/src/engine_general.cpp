#include "hnnwp/engine_general.hpp"

#include <algorithm>  // for max
#include <chrono>     // for steady_clock
#include <utility>    // for move

#include "hnnwp/error.hpp"  // for fail

namespace hnnwp {

  size_t GeneralInstance::marked_count() const {
    return static_cast<size_t>(std::count(marked.begin(), marked.end(), true));
  }

  Syllable const& GeneralInstance::vertex_table(vertex_type v, int direction) const {
    auto const& slot = direction > 0 ? vertex_phi[v] : vertex_phi_inv[v];
    if (!slot) {
      fail(error_kind::precondition, "vertex " + std::to_string(v) + " is not in H/N");
    }
    return *slot;
  }

  GeneralInstance precompute_general(int                                          rank,
                                     std::vector<word_type> const&                gens,
                                     std::vector<word_type> const&                images,
                                     std::optional<std::vector<word_type>> const& inverse_images,
                                     size_t                                       max_steps,
                                     SlpOptions const&                            opts) {
    GeneralInstance inst;
    inst.slp = opts;
    inst.phi = make_basis_map(rank, gens, images, inverse_images, opts);
    if (!regular_index(inst.phi.graph)) {
      fail(error_kind::invalid_instance, "the subgroup has infinite index");
    }
    inst.report = find_m_phi(inst.phi, max_steps);
    if (!inst.report.stabilized) {
      fail(error_kind::invalid_instance,
           "phi not shown normalizable within " + std::to_string(max_steps) + " steps");
    }
    inst.graph         = inst.report.m_phi;
    inst.tree          = spanning_tree(inst.graph);
    SelfSimilarity ss  = shift_tables(inst.graph);
    if (!ss.self_similar) {
      fail(error_kind::internal, "the stable subgroup is not normal");
    }
    inst.shifts = std::move(ss.shifts);
    inst.tables = build_phi_tables(
        inst.graph, inst.tree, inst.report.images, inst.report.inverse_images, opts);

    size_t const k = inst.index();
    for (vertex_type v = 0; v < k; ++v) {
      inst.marked.push_back(accepts(inst.phi.graph, inst.tree.tree_word[v]));
      inst.tree_from_root.push_back(Slp::from_word(inst.tree.tree_path[v]));
      inst.tree_to_root.push_back(Slp::from_word(invert_path(inst.tree.tree_path[v])));
    }
    for (vertex_type v1 = 0; v1 < k; ++v1) {
      for (vertex_type v2 = 0; v2 < k; ++v2) {
        vertex_type v = coset_mul(inst.graph, inst.tree, v1, v2);
        if (v != inst.shifts.from_root(v1, v2)) {
          fail(error_kind::internal, "coset product disagrees with the shift");
        }
        inst.product.push_back(v);
        inst.correction.push_back(concat(
            shift_apply(inst.tree_from_root[v2], inst.shifts, v1), inst.tree_to_root[v]));
      }
    }
    inst.vertex_phi.resize(k);
    inst.vertex_phi_inv.resize(k);
    for (vertex_type v = 0; v < k; ++v) {
      if (!inst.marked[v]) {
        continue;
      }
      for (int d : {1, -1}) {
        word_type target = inst.phi.apply(inst.tree.tree_word[v], d);
        Syllable  s      = word_to_syllable(inst, target);
        if (syllable_word(inst, s) != target) {
          fail(error_kind::internal, "vertex table for " + std::to_string(v) + " is wrong");
        }
        (d > 0 ? inst.vertex_phi : inst.vertex_phi_inv)[v] = std::move(s);
      }
    }

    size_t c = inst.tables.weight() + 7;
    for (vertex_type v = 0; v < k; ++v) {
      if (inst.marked[v]) {
        c += inst.vertex_phi[v]->p.size() + inst.vertex_phi_inv[v]->p.size();
      }
      c += 2 * inst.tree_from_root[v].size();
    }
    for (auto const& x : inst.correction) {
      c += 2 * x.size();
    }
    inst.C_star = c;
    return inst;
  }

  Syllable word_to_syllable(GeneralInstance const& inst, word_type const& w) {
    auto        path = trace_edges(inst.graph, inst.graph.root(), w);
    vertex_type v    = path.empty() ? inst.graph.root() : inst.graph.terminus(path.back());
    auto const  back = invert_path(inst.tree.tree_path[v]);
    path.insert(path.end(), back.begin(), back.end());
    return {Slp::from_word(path), v};
  }

  word_type syllable_word(GeneralInstance const& inst, Syllable const& s) {
    auto lab = decompress(label_slp(s.p, inst.graph), length_type(1) << 32);
    return free_reduce(concat(lab, inst.tree.tree_word[s.v]));
  }

  Syllable apply_phi_syllable(GeneralInstance const& inst, Syllable const& s, int direction) {
    Syllable const& vt = inst.vertex_table(s.v, direction);
    Slp p1 = apply_phi_tables(inst.graph, inst.tree, inst.tables, s.p, direction);
    return {concat(p1, vt.p), vt.v};
  }

  Syllable syllable_concat(GeneralInstance const& inst, Syllable const& s1, Syllable const& s2) {
    Slp p = concat(s1.p, inst.tree_from_root[s1.v]);
    p     = concat(p, shift_apply(s2.p, inst.shifts, s1.v));
    p     = concat(p, inst.corr(s1.v, s2.v));
    return {std::move(p), inst.mul(s1.v, s2.v)};
  }

  std::optional<Syllable> britton_step_general(GeneralInstance const& inst,
                                               Syllable const&        left,
                                               Syllable const&        mid,
                                               Syllable const&        right,
                                               int                    direction) {
    if (!inst.marked[mid.v]) {
      return std::nullopt;
    }
    Syllable m = apply_phi_syllable(inst, mid, direction);
    return syllable_concat(inst, syllable_concat(inst, left, m), right);
  }

  SolveResult solve_general(GeneralInstance const& inst, HnnWordText const& w) {
    auto const  start = std::chrono::steady_clock::now();
    SolveResult res;
    SolveStats& st = res.stats;
    st.syllables     = w.stable_count();
    st.constant      = inst.C_star;
    st.index_N       = inst.index();
    st.marked_cosets = inst.marked_count();

    std::vector<Syllable> parts;
    std::vector<int>      signs = w.signs;
    for (auto const& syl : w.syllables) {
      parts.push_back(word_to_syllable(inst, syl));
      st.initial_size += parts.back().p.size();
    }
    st.max_size  = st.initial_size;
    size_t total = st.initial_size;

    size_t i = 1;
    while (i + 1 < parts.size()) {
      if (signs[i - 1] != -signs[i] || !inst.marked[parts[i].v]) {
        ++i;
        continue;
      }
      int      direction = signs[i - 1] < 0 ? 1 : -1;
      Syllable merged    = *britton_step_general(inst, parts[i - 1], parts[i], parts[i + 1], direction);
      total -= parts[i - 1].p.size() + parts[i].p.size() + parts[i + 1].p.size();
      total += merged.p.size();
      parts[i - 1] = std::move(merged);
      parts.erase(parts.begin() + i, parts.begin() + i + 2);
      signs.erase(signs.begin() + (i - 1), signs.begin() + i + 1);
      ++st.pinches;
      st.max_size = std::max(st.max_size, total);
      if (total > st.initial_size + st.pinches * inst.C_star) {
        ++st.ledger_violations;
      }
      i = i > 1 ? i - 1 : 1;
    }

    if (signs.empty()) {
      Syllable const& s = parts.front();
      st.final_size     = s.p.size();
      if (2 * st.final_size > 2 * st.initial_size + st.syllables * inst.C_star) {
        ++st.ledger_violations;
      }
      bool at_root = s.v == inst.graph.root();
      res.reduced  = free_reduce_slp(at_root ? s.p : concat(s.p, inst.tree_from_root[s.v]), inst.slp);
      res.trivial  = at_root && is_empty_val(res.reduced);
      st.reduced_size   = res.reduced.size();
      st.reduced_length = res.reduced.length();
    } else {
      st.final_size       = total;
      st.stable_remaining = signs.size();
    }
    st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
  }

}  // namespace hnnwp
