#pragma once

#include <stdexcept>
#include <string>

namespace innerdist {

enum class errc {
  invalid_parameter,
  atom_singularity,
  budget_exceeded,
  elliptic_automorphism,
  not_fixing_infinity,
  degenerate_denominator,
  unknown_suite,
  config_invalid,
  io_failure,
  unsupported,
};

inline const char* to_string(errc c) noexcept {
  switch (c) {
    case errc::invalid_parameter:      return "invalid-parameter";
    case errc::atom_singularity:       return "atom-singularity";
    case errc::budget_exceeded:        return "budget-exceeded";
    case errc::elliptic_automorphism:  return "elliptic-automorphism";
    case errc::not_fixing_infinity:    return "not-fixing-infinity";
    case errc::degenerate_denominator: return "degenerate-denominator";
    case errc::unknown_suite:          return "unknown-suite";
    case errc::config_invalid:         return "config-invalid";
    case errc::io_failure:             return "io-failure";
    case errc::unsupported:            return "unsupported";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace innerdist
