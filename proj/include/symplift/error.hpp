#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symplift {

enum class errc {
  not_prime,
  range_error,
  non_unit,
  dim_mismatch,
  mod_mismatch,
  not_invertible,
  not_symplectic,
  not_lie,
  not_in_preimage,
  not_in_kernel,
  mixed_ambient,
  cap_exceeded,
  budget_exhausted,
  bad_permutation,
  overflow,
  genus_one,
  precondition_violated,
  input_error,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::not_prime: return "NotPrime";
    case errc::range_error: return "RangeError";
    case errc::non_unit: return "NonUnit";
    case errc::dim_mismatch: return "DimMismatch";
    case errc::mod_mismatch: return "ModMismatch";
    case errc::not_invertible: return "NotInvertible";
    case errc::not_symplectic: return "NotSymplectic";
    case errc::not_lie: return "NotLie";
    case errc::not_in_preimage: return "NotInPreimage";
    case errc::not_in_kernel: return "NotInKernel";
    case errc::mixed_ambient: return "MixedAmbient";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::budget_exhausted: return "BudgetExhausted";
    case errc::bad_permutation: return "BadPermutation";
    case errc::overflow: return "Overflow";
    case errc::genus_one: return "GenusOne";
    case errc::precondition_violated: return "PreconditionViolated";
    case errc::input_error: return "InputError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace symplift
