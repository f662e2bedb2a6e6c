#ifndef SATO_SERIES_HPP
#define SATO_SERIES_HPP

// Truncated formal Laurent series  sum_{n >= low} c_n z^n + O(z^G)  over a
// coefficient ring. The order of a series is minus its lowest exponent with
// a nonzero coefficient, so z^-3 + z has order 3.

#include "sato/ring.hpp"

#include <string>
#include <vector>

namespace sato {

class Laurent {
 public:
  Laurent() = default;
  /// Coefficients for exponents low, low+1, ...; known modulo z^(low + size).
  Laurent(Ring ring, std::string var, int low, std::vector<RingElement> coeffs);
  /// Same, with an explicit guaranteed exponent >= low + coeffs.size(); the
  /// gap is filled with zeros.
  Laurent(Ring ring, std::string var, int low, std::vector<RingElement> coeffs, int guaranteed);

  static Laurent zero(const Ring& ring, const std::string& var, int guaranteed);
  /// c * z^exp known modulo z^guaranteed.
  static Laurent monomial(const Ring& ring, const std::string& var, const RingElement& c, int exp,
                          int guaranteed);
  static Laurent one(const Ring& ring, const std::string& var, int guaranteed);

  const Ring& ring() const { return ring_; }
  const std::string& var() const { return var_; }
  /// Exponent of the first stored coefficient (the valuation when nonzero).
  int low() const { return low_; }
  int guaranteed() const { return low_ + static_cast<int>(coeffs_.size()); }
  const std::vector<RingElement>& coeffs() const { return coeffs_; }

  /// True when every stored coefficient vanishes.
  bool is_zero() const { return coeffs_.empty(); }
  /// Coefficient of z^n; zero below the window, an error at or above it.
  RingElement coeff(int n) const;
  /// Order in the minus-lowest-exponent convention.
  int order() const;
  int valuation() const { return -order(); }
  const RingElement& leading() const;
  bool is_monic() const;
  /// Number of known coefficients past the leading one (relative precision).
  int relative_precision() const { return static_cast<int>(coeffs_.size()); }

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& other);
  Laurent& operator-=(const Laurent& other);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend Laurent operator*(const Laurent& a, const RingElement& c);
  friend Laurent operator*(const Laurent& a, const Rational& c);

  /// Exact structural equality (identical windows).
  bool operator==(const Laurent& other) const;

  Laurent inverse() const;
  Laurent pow(int n) const;
  /// Multiplies by z^k exactly.
  Laurent shifted(int k) const;
  /// Forgets everything at and above z^guaranteed.
  Laurent truncated(int guaranteed) const;
  /// Same series with a different variable name.
  Laurent renamed(const std::string& var) const;

  std::string to_string() const;

 private:
  void canonicalize();

  Ring ring_;
  std::string var_ = "z";
  int low_ = 0;
  std::vector<RingElement> coeffs_;
};

/// Agreement on the intersection of the two windows.
bool equal_within_precision(const Laurent& a, const Laurent& b);

int order_of(const Laurent& v);
Laurent multiply(const Laurent& f, const Laurent& g);
Laurent invert(const Laurent& s);
/// The unique monic t of order ord(s)/N with t^N = s.
Laurent nth_root(const Laurent& s, int n);
/// f(g) for g of positive valuation.
Laurent compose(const Laurent& f, const Laurent& g);
/// Compositional inverse of a series of valuation one.
Laurent revert(const Laurent& f);

}  // namespace sato

#endif  // SATO_SERIES_HPP
