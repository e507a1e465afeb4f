#ifndef HNNWP_ERROR_HPP_
#define HNNWP_ERROR_HPP_

#include <stdexcept>  // for runtime_error
#include <string>     // for string

namespace hnnwp {

  // Broad classes of failure; the CLI maps these onto exit codes.
  enum class error_kind {
    parse,             // malformed word or instance text
    invalid_instance,  // not finite index, phi not an automorphism, ...
    precondition,      // an operation was called outside its domain
    limit,             // a size/length budget was exceeded
    internal           // an invariant that should be impossible to violate
  };

  class Error : public std::runtime_error {
   public:
    Error(error_kind kind, std::string const& msg)
        : std::runtime_error(msg), _kind(kind) {}

    error_kind kind() const noexcept {
      return _kind;
    }

   private:
    error_kind _kind;
  };

  [[noreturn]] inline void fail(error_kind kind, std::string const& msg) {
    throw Error(kind, msg);
  }

}  // namespace hnnwp

#endif  // HNNWP_ERROR_HPP_
