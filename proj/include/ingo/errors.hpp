#ifndef INGO_ERRORS_HPP
#define INGO_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace ingo {

/// Failure categories raised by the library. Every throwing operation
/// documents which of these it can raise.
enum class Errc {
  non_symmetric,
  indefinite_input,
  singular_input,
  dim_mismatch,
  batch_too_small,
  non_finite_input,
  too_many_directions,
  bad_bounds,
  non_binary_input,
  out_of_range_category,
  bad_population,
  unknown_function,
  dim_too_small,
  zero_target_entry,
  evaluation_failed,
  config_invalid,
  io_failure,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Errc code, const std::string& msg) {
  if (!cond) raise(code, msg);
}

}  // namespace ingo

#endif  // INGO_ERRORS_HPP
