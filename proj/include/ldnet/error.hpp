#pragma once

#include <stdexcept>
#include <string>

namespace ldnet {

enum class Errc {
  not_prime,
  out_of_range,
  shape_mismatch,
  modulus_mismatch,
  invalid_network,
  not_layered,
  invalid_code,
  non_shift_gain,
  not_projectable,
  parse_error,
};

const char* to_string(Errc code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace ldnet
