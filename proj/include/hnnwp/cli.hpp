#ifndef HNNWP_CLI_HPP_
#define HNNWP_CLI_HPP_

#include <iosfwd>  // for ostream
#include <string>  // for string
#include <vector>  // for vector

namespace hnnwp {

  // Exit codes of the command-line front end.
  constexpr int exit_ok               = 0;
  constexpr int exit_invalid_instance = 1;
  constexpr int exit_parse_error      = 2;
  constexpr int exit_oracle_mismatch  = 3;

  // Runs one command line (args excludes the program name).
  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace hnnwp

#endif  // HNNWP_CLI_HPP_
