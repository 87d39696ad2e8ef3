#include "modblob/rational.hpp"

#include <cctype>

#include "modblob/error.hpp"

namespace modblob {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::BaseMismatch: return "BaseMismatch";
    case ErrorCode::OrientationInconsistent: return "OrientationInconsistent";
    case ErrorCode::UnorientedInput: return "UnorientedInput";
    case ErrorCode::NotFillable: return "NotFillable";
    case ErrorCode::NotEmbedded: return "NotEmbedded";
    case ErrorCode::InvalidDiagram: return "InvalidDiagram";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::NormalizationStuck: return "NormalizationStuck";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::TripleRootDetected: return "TripleRootDetected";
    case ErrorCode::NonTransversalDiscriminantCrossing: return "NonTransversalDiscriminantCrossing";
    case ErrorCode::BasepointViolation: return "BasepointViolation";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::GenericityViolation: return "GenericityViolation";
    case ErrorCode::EventCollision: return "EventCollision";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorCode::MalformedInput, "bad rational '" + std::string(text) + "'");
    mpz_class n{std::string(num)}, d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::MalformedInput, "zero denominator in '" + std::string(text) + "'");
    out = Rational(n, d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
      throw Error(ErrorCode::MalformedInput, "bad decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class n{whole.empty() ? std::string("0") : std::string(whole)};
    out = Rational(n * scale + mpz_class(std::string(frac)), scale);
  } else {
    if (!all_digits(body))
      throw Error(ErrorCode::MalformedInput, "bad rational '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(body)));
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string format_rational(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace modblob
