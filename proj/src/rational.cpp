#include "vva/rational.hpp"

#include <cctype>

#include "vva/error.hpp"

namespace vva {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t k = start; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (!is_integer_literal(s)) {
    throw Error(ErrorCode::ParseError, "not a rational: \"" + std::string(whole) + "\"");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonUnitMass: return "NonUnitMass";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::NegativeMass: return "NegativeMass";
    case ErrorCode::DuplicateSupportVector: return "DuplicateSupportVector";
    case ErrorCode::ZeroMassNonzeroType: return "ZeroMassNonzeroType";
    case ErrorCode::MissingZeroType: return "MissingZeroType";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MalformedLp: return "MalformedLp";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::InfeasibleInput: return "InfeasibleInput";
    case ErrorCode::NotOptimal: return "NotOptimal";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotAgentIndependent: return "NotAgentIndependent";
    case ErrorCode::ScaleLimit: return "ScaleLimit";
    case ErrorCode::SolverFailure: return "SolverFailure";
  }
  return "Unknown";
}

Rational parse_rational(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string_view s = text.substr(b, e - b);

  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(s, text));
  }
  mpz_class num = parse_integer(s.substr(0, slash), text);
  std::string_view den_text = s.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw Error(ErrorCode::ParseError, "signed denominator in \"" + std::string(text) + "\"");
  }
  mpz_class den = parse_integer(den_text, text);
  if (den == 0) {
    throw Error(ErrorCode::ParseError, "zero denominator in \"" + std::string(text) + "\"");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "dot product of vectors with different lengths");
  }
  Rational acc = 0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

}  // namespace vva
