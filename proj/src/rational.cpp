#include "sato/rational.hpp"

#include "sato/error.hpp"

#include <cctype>

namespace sato {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnsupportedRing: return "unsupported-ring";
    case ErrorKind::ZeroPrecision: return "zero-precision";
    case ErrorKind::RingMismatch: return "ring-mismatch";
    case ErrorKind::IndeterminateOrder: return "indeterminate-order";
    case ErrorKind::NonUnitLeading: return "non-unit-leading";
    case ErrorKind::DivisibilityViolation: return "divisibility-violation";
    case ErrorKind::NotMonic: return "not-monic";
    case ErrorKind::NonpositiveValuation: return "nonpositive-valuation";
    case ErrorKind::BadValuation: return "bad-valuation";
    case ErrorKind::ZeroN: return "zero-N";
    case ErrorKind::WrongOrder: return "wrong-order";
    case ErrorKind::NonUnit: return "non-unit";
    case ErrorKind::NotMonicOrderZero: return "not-monic-order-0";
    case ErrorKind::NotBigCell: return "not-big-cell";
    case ErrorKind::NonCommuting: return "non-commuting";
    case ErrorKind::NotDifferential: return "not-differential";
    case ErrorKind::NoPositiveOrder: return "no-positive-order";
    case ErrorKind::StabilityViolation: return "stability-violation";
    case ErrorKind::WindowTooSmall: return "window-too-small";
    case ErrorKind::UnstableBound: return "unstable-bound";
    case ErrorKind::DepthTooSmall: return "depth-too-small";
    case ErrorKind::UndecidableZero: return "undecidable-zero";
    case ErrorKind::WrongShape: return "wrong-shape";
    case ErrorKind::JetOrderExceeded: return "jet-order-exceeded";
    case ErrorKind::SyntaxError: return "syntax-error";
    case ErrorKind::UnknownSymbol: return "unknown-symbol";
    case ErrorKind::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

Integer binomial(long n, long i) {
  if (i < 0) return 0;
  Integer num = 1;
  Integer den = 1;
  for (long k = 0; k < i; ++k) {
    num *= Integer(n - k);
    den *= Integer(k + 1);
  }
  return num / den;
}

Rational factorial(long n) {
  Integer f = 1;
  for (long k = 2; k <= n; ++k) f *= Integer(k);
  return Rational(f);
}

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t pos = 0;
  if (text[pos] == '-' || text[pos] == '+') ++pos;
  std::size_t digits = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (text[k] == '/') {
      if (slash != std::string::npos || digits == 0) return std::nullopt;
      slash = k;
      digits = 0;
    } else if (std::isdigit(static_cast<unsigned char>(text[k]))) {
      ++digits;
    } else {
      return std::nullopt;
    }
  }
  if (digits == 0) return std::nullopt;
  Rational q;
  if (q.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0) return std::nullopt;
  if (q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  Integer n = sqrt(q.get_num());
  Integer d = sqrt(q.get_den());
  return Rational(n, d);
}

}  // namespace sato
