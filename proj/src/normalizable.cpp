#include "hnnwp/normalizable.hpp"

#include "hnnwp/error.hpp"  // for fail

namespace hnnwp {

  size_t StabilizationReport::index() const {
    return m_phi.num_vertices();
  }

  std::string StabilizationReport::serialize() const {
    std::string s;
    for (size_t i = 0; i < chain.size(); ++i) {
      s += "step=" + std::to_string(i) + " index=" + std::to_string(indices[i])
           + " normal=" + (normal[i] ? "true" : "false") + "\n";
    }
    if (stabilized) {
      s += "M_phi index=" + std::to_string(index()) + "\n";
    } else {
      s += "budget_exhausted\n";
    }
    return s;
  }

  SubgroupGraph h_step(BasisMap const& phi, SubgroupGraph const& gi) {
    auto const basis = spanning_tree(gi).basis;
    for (auto const& b : basis) {
      if (!accepts(phi.graph, b)) {
        fail(error_kind::internal, "chain element " + format_word(b) + " is outside H");
      }
    }
    SubgroupGraph fwd = image_subgroup(phi.graph, phi.tree, phi.images, basis);
    SubgroupGraph bwd = image_subgroup(phi.graph, phi.tree, phi.inverse_images, basis);
    return intersect(normal_core(gi), intersect(fwd, bwd));
  }

  StabilizationReport find_m_phi(BasisMap const& phi, size_t max_steps) {
    StabilizationReport rep;
    auto                record = [&](SubgroupGraph g) {
      auto idx = regular_index(g);
      if (!idx) {
        fail(error_kind::invalid_instance, "the subgroup has infinite index");
      }
      rep.indices.push_back(*idx);
      rep.normal.push_back(is_normal(g));
      rep.chain.push_back(std::move(g));
    };
    record(phi.graph);
    for (size_t i = 0; i < max_steps; ++i) {
      SubgroupGraph next = h_step(phi, rep.chain.back());
      if (next == rep.chain.back()) {
        rep.stabilized = true;
        rep.step       = i;
        rep.m_phi      = rep.chain.back();
        SpanningTree t = spanning_tree(rep.m_phi);
        rep.images         = restrict_phi(rep.m_phi, t, phi, 1);
        rep.inverse_images = restrict_phi(rep.m_phi, t, phi, -1);
        return rep;
      }
      record(std::move(next));
    }
    return rep;
  }

  std::vector<word_type>
  restrict_phi(SubgroupGraph const& m, SpanningTree const& tm, BasisMap const& phi, int direction) {
    std::vector<word_type> out;
    for (auto const& n : tm.basis) {
      word_type img = phi.apply(n, direction);
      if (!accepts(m, img)) {
        fail(error_kind::internal, "phi(" + format_word(n) + ") leaves the stable subgroup");
      }
      out.push_back(std::move(img));
    }
    if (fold_from_generators(out, m.rank()) != m) {
      fail(error_kind::internal, "restricted images do not generate the stable subgroup");
    }
    return out;
  }

}  // namespace hnnwp
