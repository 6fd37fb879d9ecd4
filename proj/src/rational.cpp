#include "nilmod/rational.hpp"

#include <cctype>

#include "nilmod/error.hpp"

namespace nilmod {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::SocleNotOneDimensional: return "SocleNotOneDimensional";
    case ErrorKind::NonRationalEigenvalue: return "NonRationalEigenvalue";
    case ErrorKind::NoCommonEigenline: return "NoCommonEigenline";
    case ErrorKind::Incompatible: return "Incompatible";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::TruncationTooLow: return "TruncationTooLow";
    case ErrorKind::NotAnEndomorphism: return "NotAnEndomorphism";
    case ErrorKind::WrongConstantTerm: return "WrongConstantTerm";
    case ErrorKind::NothingToExtend: return "NothingToExtend";
    case ErrorKind::IncompatibleMap: return "IncompatibleMap";
    case ErrorKind::NotLowerSet: return "NotLowerSet";
    case ErrorKind::NotASubmodule: return "NotASubmodule";
    case ErrorKind::VariableCountMismatch: return "VariableCountMismatch";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail, std::vector<std::size_t> witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail),
      witness_(std::move(witness)) {}

std::string to_string(const Rational& q) { return q.get_str(10); }

namespace {

bool is_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && s[0] == '-') i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_text(num, true) || (slash != std::string_view::npos && !is_integer_text(den, false)))
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + std::string(text) + "'");
  Rational q;
  q.get_num() = Integer(std::string(num), 10);
  q.get_den() = slash == std::string_view::npos ? Integer(1) : Integer(std::string(den), 10);
  if (q.get_den() == 0)
    throw Error(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

Integer factorial(unsigned long k) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

}  // namespace nilmod
