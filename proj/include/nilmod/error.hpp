#ifndef NILMOD_ERROR_HPP
#define NILMOD_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilmod {

enum class ErrorKind {
  DimensionMismatch,
  IndexOutOfRange,
  InvalidInput,
  NonCommuting,
  NotNilpotent,
  SocleNotOneDimensional,
  NonRationalEigenvalue,
  NoCommonEigenline,
  Incompatible,
  DimensionTooLarge,
  TruncationTooLow,
  NotAnEndomorphism,
  WrongConstantTerm,
  NothingToExtend,
  IncompatibleMap,
  NotLowerSet,
  NotASubmodule,
  VariableCountMismatch,
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every library operation.
///
/// `witness()` carries zero-based indices identifying the failure where one
/// exists: the commutator pair for NonCommuting, the mixed-partial pair for
/// Incompatible, (variable, exponents...) for NotAnEndomorphism.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail, std::vector<std::size_t> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::string detail_;
  std::vector<std::size_t> witness_;
};

}  // namespace nilmod

#endif  // NILMOD_ERROR_HPP
