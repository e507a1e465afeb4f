#ifndef HNNWP_INSTANCE_HPP_
#define HNNWP_INSTANCE_HPP_

// The .hnn instance format:
//
//   # comment
//   [group]
//   rank = 2
//   [subgroup]
//   gens = aa, b, abA
//   [phi]
//   aa -> b
//   b -> aa
//   abA -> abA
//   [phi_inv]          (optional, same shape as [phi])
//   [options]
//   mode = auto        (normal | general | auto)
//   max_steps = 32
//
// Words use lowercase letters for generators and uppercase for inverses;
// "1" is the empty word.

#include <cstddef>      // for size_t
#include <optional>     // for optional
#include <string>       // for string
#include <string_view>  // for string_view
#include <variant>      // for variant
#include <vector>       // for vector

#include "engine_general.hpp"  // for GeneralInstance
#include "engine_normal.hpp"   // for NormalInstance, SolveResult
#include "normalizable.hpp"    // for default_max_steps
#include "slp.hpp"             // for SlpOptions
#include "words.hpp"           // for word_type

namespace hnnwp {

  enum class engine_mode { normal, general, automatic };

  struct InstanceFile {
    int                    rank = 0;
    std::vector<word_type> gens;
    std::vector<word_type> phi_keys;
    std::vector<word_type> phi_values;
    std::vector<word_type> inv_keys;
    std::vector<word_type> inv_values;
    engine_mode            mode      = engine_mode::automatic;
    size_t                 max_steps = default_max_steps;
  };

  // Throws Error(parse) with a line number on malformed input.
  InstanceFile parse_instance(std::string_view text);
  InstanceFile load_instance(std::string const& path);

  // An instance ready to solve with whichever engine the mode selects.
  class Solver {
   public:
    // Throws Error(invalid_instance).
    Solver(InstanceFile const& file, SlpOptions const& opts);

    bool is_normal_engine() const noexcept {
      return std::holds_alternative<NormalInstance>(_inst);
    }
    NormalInstance const& normal() const {
      return std::get<NormalInstance>(_inst);
    }
    GeneralInstance const& general() const {
      return std::get<GeneralInstance>(_inst);
    }
    BasisMap const& phi() const;
    // The graph whose edges the reduced SLPs run over.
    SubgroupGraph const& work_graph() const;
    size_t               constant() const;

    SolveResult solve(HnnWordText const& w) const;

   private:
    std::variant<NormalInstance, GeneralInstance> _inst;
  };

}  // namespace hnnwp

#endif  // HNNWP_INSTANCE_HPP_
