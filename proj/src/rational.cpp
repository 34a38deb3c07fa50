#include "mmsalloc/rational.hpp"

#include <cctype>
#include <ostream>

#include "mmsalloc/error.hpp"

namespace mmsalloc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::sign_violation: return "SignViolation";
    case ErrorCode::empty_matrix: return "EmptyMatrix";
    case ErrorCode::ragged_matrix: return "RaggedMatrix";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::internal_invariant_violation: return "InternalInvariantViolation";
    case ErrorCode::precondition_unmet: return "PreconditionUnmet";
    case ErrorCode::dangling_reference: return "DanglingReference";
    case ErrorCode::negative_c: return "NegativeC";
    case ErrorCode::c_out_of_range: return "COutOfRange";
    case ErrorCode::n_equals_three: return "NEqualsThree";
    case ErrorCode::too_few_agents: return "TooFewAgents";
    case ErrorCode::empty_group: return "EmptyGroup";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw MmsError(ErrorCode::parse_error, "empty number in '" + std::string(whole) + "'");
  size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw MmsError(ErrorCode::parse_error, "bad number '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw MmsError(ErrorCode::parse_error, "bad number '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return negative ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw MmsError(ErrorCode::parse_error, "zero denominator");
  value_ = den < 0 ? boost::multiprecision::cpp_rational(-num, -den) : boost::multiprecision::cpp_rational(num, den);
}

Rational Rational::parse(std::string_view text) {
  auto t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
  return Rational(parse_integer(trim(t.substr(0, slash)), text), parse_integer(trim(t.substr(slash + 1)), text));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw MmsError(ErrorCode::internal_invariant_violation, "division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

BigInt Rational::floor() const {
  BigInt num = numerator(), den = denominator();
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

BigInt Rational::ceil() const {
  BigInt num = numerator(), den = denominator();
  BigInt q = num / den;
  if (num > 0 && q * den != num) q += 1;
  return q;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace mmsalloc
