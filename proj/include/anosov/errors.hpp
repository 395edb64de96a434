#ifndef ANOSOV_ERRORS_HPP
#define ANOSOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace anosov {

// Stable numeric codes; the C API and the CLI exit-code mapping depend on them.
enum class errc : int {
  ok = 0,
  invalid_params = 10,
  dimension_mismatch = 11,
  rank_mismatch = 12,
  unsupported_rank = 13,
  unsupported_family = 14,
  kind_mismatch = 15,
  malformed_flag = 16,
  parse_error = 17,
  io_error = 18,

  singular_input = 30,
  nonconvergent_eigen = 31,
  degenerate_form = 32,
  ping_pong_failed = 33,
  not_proximal = 34,
  empty_sample = 35,
  no_pairs = 36,
  divergence_fail = 37,

  too_large = 50,
};

// 0 = success, 2 = validation, 3 = mathematical failure, 4 = resource cap.
inline int error_category(errc c) {
  int v = static_cast<int>(c);
  if (v == 0) return 0;
  if (v < 30) return 2;
  if (v < 50) return 3;
  return 4;
}

const char* error_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace anosov

#endif
