#ifndef SATO_RING_HPP
#define SATO_RING_HPP

// Differential coefficient rings of characteristic zero.
//
// Four instances share one element type:
//   Rationals        Q with the zero derivation
//   Polynomial       Q[a, b, ...] with the zero derivation
//   DiffPolynomial   Q[u, u', u'', ..., c, ...] with the jet shift u^(j) -> u^(j+1);
//                    declared constant symbols have zero derivative
//   XPowerSeries     B[[x]] over a Rationals or Polynomial base B, with d/dx
//
// XPowerSeries elements carry their own precision p (the element is known
// modulo x^p). Elements that are exact polynomials in x report kExact.

#include "sato/rational.hpp"

#include <climits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sato {

inline constexpr int kExact = INT_MAX;

/// Saturating addition for precisions (kExact absorbs).
inline int prec_add(int a, int b) {
  if (a == kExact || b == kExact) return kExact;
  return a + b;
}

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over Q. Terms are kept in descending
/// graded-lexicographic order over the declared variable order, with no
/// zero coefficients; the representation is therefore canonical.
class Poly {
 public:
  struct Term {
    Exponents exps;
    Rational coeff;
    bool operator==(const Term&) const = default;
  };

  Poly() = default;
  explicit Poly(std::size_t nvars) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Rational& c);
  static Poly variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }

  bool operator==(const Poly& other) const = default;

  /// Adds c * monomial, keeping canonical order.
  void add_term(const Exponents& exps, const Rational& c);

  static bool grlex_greater(const Exponents& a, const Exponents& b);

 private:
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

enum class RingKind { Rationals, Polynomial, DiffPolynomial, XPowerSeries };

class RingElement;

/// A coefficient ring descriptor. Cheap to copy; compared structurally.
class Ring {
 public:
  static Ring rationals();
  static Ring polynomial(std::vector<std::string> vars);
  static Ring diff_polynomial(std::vector<std::string> functions, int max_jet,
                              std::vector<std::string> constants = {});
  static Ring x_power_series(const Ring& base, int precision);

  Ring();

  RingKind kind() const;
  bool is_series() const { return kind() == RingKind::XPowerSeries; }
  /// Base ring of an XPowerSeries ring; the ring itself otherwise.
  const Ring& base() const;
  /// Precision cap of an XPowerSeries ring.
  int precision() const;
  int max_jet() const;
  const std::vector<std::string>& functions() const;
  const std::vector<std::string>& constants() const;
  /// Names of the polynomial variables of this ring (for XPowerSeries: of
  /// the base). Jet variables are rendered as u, u', u'', ...
  const std::vector<std::string>& variable_names() const;
  std::size_t nvars() const { return variable_names().size(); }
  std::optional<std::size_t> variable_index(const std::string& name) const;
  /// For a DiffPolynomial variable index: (function index, jet order), or
  /// nullopt for a constant symbol.
  std::optional<std::pair<int, int>> jet_of(std::size_t var) const;
  std::size_t jet_index(int function, int order) const;

  /// Same ring with a different XPowerSeries precision cap.
  Ring with_precision(int precision) const;

  RingElement zero() const;
  RingElement one() const;
  RingElement from_rational(const Rational& q) const;
  RingElement from_int(long n) const;
  /// A polynomial or jet variable (or constant symbol) by name.
  RingElement variable(const std::string& name) const;
  RingElement jet(const std::string& function, int order) const;
  /// The coordinate x of an XPowerSeries ring.
  RingElement x() const;
  /// Embeds an element of base() as a constant series.
  RingElement lift(const RingElement& base_element) const;

  std::string describe() const;
  bool operator==(const Ring& other) const;
  bool operator!=(const Ring& other) const { return !(*this == other); }

  struct Spec;

 private:
  explicit Ring(std::shared_ptr<const Spec> spec) : spec_(std::move(spec)) {}
  std::shared_ptr<const Spec> spec_;
};

class RingElement {
 public:
  RingElement() = default;

  const Ring& ring() const { return ring_; }

  /// Precision of an XPowerSeries element; kExact for every other ring.
  int precision() const { return prec_; }
  bool is_exact() const { return prec_ == kExact; }

  /// Zero within the known precision.
  bool is_zero() const;
  bool is_exact_zero() const { return is_zero() && is_exact(); }
  bool is_one() const;
  /// Vanishing derivative (within precision).
  bool is_constant() const;
  bool is_unit() const;

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& other);
  RingElement& operator-=(const RingElement& other);
  RingElement& operator*=(const RingElement& other);
  RingElement& operator*=(const Rational& s);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }
  friend RingElement operator*(RingElement a, const Rational& s) { return a *= s; }
  friend RingElement operator*(const Rational& s, RingElement a) { return a *= s; }

  /// Structural equality, including precision.
  bool operator==(const RingElement& other) const;

  RingElement derive() const;
  RingElement derive(int times) const;
  /// Formal antiderivative with zero constant term (XPowerSeries only).
  RingElement integrate_zero() const;
  /// Constant coefficient of an x-series, as an element of the base ring.
  RingElement eval_at_zero() const;
  RingElement inverse() const;
  RingElement pow(int n) const;
  /// Drops x^k and higher (XPowerSeries only; no-op elsewhere).
  RingElement truncated(int prec) const;

  /// Polynomial payload (non-series rings).
  const Poly& poly() const { return poly_; }
  /// Coefficient payload of an x-series; entries live in base().
  const std::vector<Poly>& series_coeffs() const { return coeffs_; }
  /// Coefficient of x^i as a base-ring element (XPowerSeries only).
  RingElement x_coeff(int i) const;
  /// Lowest index with a nonzero coefficient; nullopt if zero within precision.
  std::optional<int> valuation() const;
  /// Rational value when the element is a constant in Q.
  std::optional<Rational> as_rational() const;

  /// Replaces every occurrence of `function` (and its jets) by `value` and its
  /// derivatives (DiffPolynomial only).
  RingElement substitute(const std::string& function, const RingElement& value) const;
  /// Replaces a plain variable or constant symbol by an element of the same ring.
  RingElement substitute_variable(const std::string& name, const RingElement& value) const;

  std::string to_string() const;

  static RingElement from_poly(const Ring& ring, Poly p);
  static RingElement from_series(const Ring& ring, std::vector<Poly> coeffs, int prec);

 private:
  void normalize();

  Ring ring_;
  Poly poly_;
  std::vector<Poly> coeffs_;
  int prec_ = kExact;
};

bool equal_within_precision(const RingElement& a, const RingElement& b);

/// exp(c x) truncated at the ring's precision cap; c lives in the base ring.
RingElement exp_series(const Ring& series_ring, const RingElement& c);

std::string poly_to_string(const Poly& p, const std::vector<std::string>& names);

/// Appends c*mono to a sum being rendered, choosing " + "/" - " and adding
/// parentheses around compound coefficients. `first` suppresses the joiner.
void append_scaled_term(std::string& out, const RingElement& c, const std::string& mono, bool first);

}  // namespace sato

#endif  // SATO_RING_HPP
