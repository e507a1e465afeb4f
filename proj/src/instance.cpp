#include "hnnwp/instance.hpp"

#include <fstream>  // for ifstream
#include <sstream>  // for stringstream

#include "hnnwp/error.hpp"  // for Error, fail

namespace hnnwp {

  namespace {
    std::string_view trim(std::string_view s) {
      size_t b = s.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) {
        return {};
      }
      size_t e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    }

    [[noreturn]] void parse_fail(size_t line, std::string const& msg) {
      fail(error_kind::parse, "line " + std::to_string(line) + ": " + msg);
    }

    word_type word_at(size_t line, std::string_view text, int rank) {
      text = trim(text);
      if (text == "1") {
        return {};
      }
      if (text.empty()) {
        parse_fail(line, "empty word (write 1 for the identity)");
      }
      try {
        return parse_word(text, rank);
      } catch (Error const& e) {
        parse_fail(line, e.what());
      }
    }

    size_t number_at(size_t line, std::string_view text) {
      text = trim(text);
      if (text.empty() || text.find_first_not_of("0123456789") != std::string_view::npos
          || text.size() > 9) {
        parse_fail(line, "expected a number, got '" + std::string(text) + "'");
      }
      return std::stoul(std::string(text));
    }
  }  // namespace

  InstanceFile parse_instance(std::string_view text) {
    InstanceFile out;
    std::string  section;
    size_t       line_no  = 0;
    bool         has_rank = false;
    while (!text.empty()) {
      size_t           nl   = text.find('\n');
      std::string_view line = text.substr(0, nl);
      text                  = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
      ++line_no;
      if (size_t h = line.find('#'); h != std::string_view::npos) {
        line = line.substr(0, h);
      }
      line = trim(line);
      if (line.empty()) {
        continue;
      }
      if (line.front() == '[') {
        if (line.back() != ']') {
          parse_fail(line_no, "unterminated section header");
        }
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (section != "group" && section != "subgroup" && section != "phi"
            && section != "phi_inv" && section != "options") {
          parse_fail(line_no, "unknown section [" + section + "]");
        }
        if (section != "group" && !has_rank) {
          parse_fail(line_no, "[group] rank must come first");
        }
        continue;
      }
      if (section == "phi" || section == "phi_inv") {
        size_t arrow = line.find("->");
        if (arrow == std::string_view::npos) {
          parse_fail(line_no, "expected '<word> -> <word>'");
        }
        word_type k = word_at(line_no, line.substr(0, arrow), out.rank);
        word_type v = word_at(line_no, line.substr(arrow + 2), out.rank);
        (section == "phi" ? out.phi_keys : out.inv_keys).push_back(std::move(k));
        (section == "phi" ? out.phi_values : out.inv_values).push_back(std::move(v));
        continue;
      }
      size_t eq = line.find('=');
      if (eq == std::string_view::npos || section.empty()) {
        parse_fail(line_no, "expected 'key = value' inside a section");
      }
      std::string_view key   = trim(line.substr(0, eq));
      std::string_view value = trim(line.substr(eq + 1));
      if (section == "group" && key == "rank") {
        out.rank = static_cast<int>(number_at(line_no, value));
        if (out.rank < 1 || out.rank > max_text_rank_stable) {
          parse_fail(line_no, "rank must be between 1 and " + std::to_string(max_text_rank_stable));
        }
        has_rank = true;
      } else if (section == "subgroup" && key == "gens") {
        while (!value.empty()) {
          size_t comma = value.find(',');
          out.gens.push_back(word_at(line_no, value.substr(0, comma), out.rank));
          value = comma == std::string_view::npos ? std::string_view{} : value.substr(comma + 1);
        }
      } else if (section == "options" && key == "mode") {
        if (value == "normal") {
          out.mode = engine_mode::normal;
        } else if (value == "general") {
          out.mode = engine_mode::general;
        } else if (value == "auto") {
          out.mode = engine_mode::automatic;
        } else {
          parse_fail(line_no, "mode must be normal, general or auto");
        }
      } else if (section == "options" && key == "max_steps") {
        out.max_steps = number_at(line_no, value);
      } else {
        parse_fail(line_no, "unknown key '" + std::string(key) + "' in [" + section + "]");
      }
    }
    if (!has_rank) {
      fail(error_kind::parse, "missing [group] rank");
    }
    if (out.gens.empty()) {
      fail(error_kind::parse, "missing [subgroup] gens");
    }
    return out;
  }

  InstanceFile load_instance(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      fail(error_kind::parse, "cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_instance(ss.str());
  }

  Solver::Solver(InstanceFile const& file, SlpOptions const& opts) {
    SubgroupGraph g = fold_from_generators(file.gens, file.rank);
    SpanningTree  t = spanning_tree(g);
    auto images = file.phi_keys.empty() ? t.basis : images_on_basis(g, t, file.phi_keys, file.phi_values);
    std::optional<std::vector<word_type>> inv;
    if (!file.inv_keys.empty()) {
      inv = images_on_basis(g, t, file.inv_keys, file.inv_values);
    }
    engine_mode mode = file.mode;
    if (mode == engine_mode::automatic) {
      if (!regular_index(g)) {
        fail(error_kind::invalid_instance, "the subgroup has infinite index");
      }
      mode = is_normal(g) ? engine_mode::normal : engine_mode::general;
    }
    if (mode == engine_mode::normal) {
      _inst = precompute_normal(file.rank, t.basis, images, inv, opts);
    } else {
      _inst = precompute_general(file.rank, t.basis, images, inv, file.max_steps, opts);
    }
  }

  BasisMap const& Solver::phi() const {
    return is_normal_engine() ? normal().phi : general().phi;
  }

  SubgroupGraph const& Solver::work_graph() const {
    return is_normal_engine() ? normal().graph() : general().graph;
  }

  size_t Solver::constant() const {
    return is_normal_engine() ? normal().C : general().C_star;
  }

  SolveResult Solver::solve(HnnWordText const& w) const {
    return is_normal_engine() ? solve_normal(normal(), w) : solve_general(general(), w);
  }

}  // namespace hnnwp
