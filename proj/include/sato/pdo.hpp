#ifndef SATO_PDO_HPP
#define SATO_PDO_HPP

// Formal pseudo-differential operators  sum_m a_m D^(top - m)  stored in right
// normal form (coefficients to the left of the powers of D). Only a window of
// `depth` terms is known; everything below it is unknown, not zero.
//
// Coefficients live in any differential ring instance. The symbol map and the
// action on Laurent series need x-power-series (or constant) coefficients.

#include "sato/ring.hpp"
#include "sato/series.hpp"

#include <string>
#include <vector>

namespace sato {

class PseudoOp {
 public:
  PseudoOp() = default;
  PseudoOp(Ring ring, int top, std::vector<RingElement> terms);

  /// D^n with `depth` known terms.
  static PseudoOp d_power(const Ring& ring, int n, int depth);
  /// Multiplication by c (order 0).
  static PseudoOp scalar(const RingElement& c, int depth);
  static PseudoOp identity(const Ring& ring, int depth) { return scalar(ring.one(), depth); }

  const Ring& ring() const { return ring_; }
  int top() const { return top_; }
  int depth() const { return static_cast<int>(terms_.size()); }
  /// Lowest exponent of D inside the known window.
  int bottom() const { return top_ - depth() + 1; }
  const std::vector<RingElement>& terms() const { return terms_; }

  /// Coefficient of D^k: zero above the top, an error below the window.
  RingElement coeff(int k) const;
  /// Exponent of the first term that is nonzero within precision.
  int order() const;
  const RingElement& leading() const;
  bool is_monic() const;
  bool is_zero() const;
  /// Every coefficient is a constant (zero derivative within precision).
  bool has_constant_coefficients() const;

  PseudoOp operator-() const;
  friend PseudoOp operator+(const PseudoOp& a, const PseudoOp& b);
  friend PseudoOp operator-(const PseudoOp& a, const PseudoOp& b);
  friend PseudoOp operator*(const PseudoOp& a, const PseudoOp& b);
  friend PseudoOp operator*(const RingElement& c, const PseudoOp& p);
  friend PseudoOp operator*(const Rational& c, const PseudoOp& p);

  /// Structural equality (same window, identical coefficients).
  bool operator==(const PseudoOp& other) const;

  /// Keeps at most `depth` terms.
  PseudoOp with_depth(int depth) const;
  /// Drops the negative powers of D and pads with exact zeros to `depth`
  /// terms. Callers use this after certifying the operator is differential.
  PseudoOp differential_part(int depth) const;
  /// Reduces the x-precision of every coefficient (series rings only).
  PseudoOp with_x_precision(int prec) const;

  std::string to_string() const;

 private:
  void canonicalize();

  Ring ring_;
  int top_ = 0;
  std::vector<RingElement> terms_;
};

/// Agreement of the coefficients on the common window (each within its own
/// x-precision).
bool equal_within_precision(const PseudoOp& a, const PseudoOp& b);

/// Left normal form  sum_n D^(top - n) b_n.
struct LeftNormalForm {
  Ring ring;
  int top = 0;
  std::vector<RingElement> terms;
};

PseudoOp multiply(const PseudoOp& p, const PseudoOp& q);
LeftNormalForm left_normal_form(const PseudoOp& p);
PseudoOp from_left_normal_form(const LeftNormalForm& form);
PseudoOp invert(const PseudoOp& p);
PseudoOp commutator(const PseudoOp& p, const PseudoOp& q);
bool is_differential(const PseudoOp& p);

/// The symbol: coefficients evaluated at x = 0, with y standing for D^-1.
/// The result is a Laurent series in "y" over the constant base ring.
Laurent sigma(const PseudoOp& p);
/// Constant-coefficient operator with symbol v, over the given coefficient ring.
PseudoOp lift(const Laurent& v, const Ring& ring);
/// P(v) = sigma(Q P) for any Q with sigma(Q) = v.
Laurent act(const PseudoOp& p, const Laurent& v);

}  // namespace sato

#endif  // SATO_PDO_HPP
