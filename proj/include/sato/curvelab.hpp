#ifndef SATO_CURVELAB_HPP
#define SATO_CURVELAB_HPP

// Worked computations on rank-one algebras: gap sequences, the local ring of
// a Weierstrass family at infinity, singular cubics, the stationary KdV
// system, constant-coefficient conjugation and common eigenfunctions.

#include "sato/pdo.hpp"
#include "sato/schur.hpp"
#include "sato/series.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sato {

struct GapProfile {
  std::vector<int> achievable;  // orders in 0..bound realized by A
  std::vector<int> gaps;
  int genus = 0;
  int conductor = 0;
};
GapProfile gap_genus(const PureRankAlgebra& A, int bound);

/// y0 = y1^3 + A y0^2 y1 + B y0^3 solved near y1 = 0 over QQ[A,B], with the
/// local parameter alpha = sqrt(y0 / y1) and the affine generators in alpha.
struct EllipticLocalData {
  Ring base;              // QQ[A,B]
  Laurent y0_series;      // in y1
  Laurent alpha_series;   // in y1
  Laurent y1_of_alpha;    // in alpha
  Laurent inv_y1_sq;      // 1/y1^2 in alpha
  Laurent gen1, gen2;     // alpha^-2 and alpha^-2 / y1, in alpha
  int passes = 0;         // fixed-point passes used
  std::vector<std::pair<std::string, bool>> checks;
  bool all_hold() const;
  std::string report() const;
};
EllipticLocalData elliptic_family(int depth);

struct SingularCubic {
  PureRankAlgebra algebra;  // QQ[y^-2, y^-3 + delta y^-1]
  std::string tag;          // "cusp", "node" or "parametric"
};
SingularCubic singular_cubic(const RingElement& delta, int window = 32);

/// L = D^2 + v and P = D^3 + alpha D^2 + beta D + gamma over a jet ring.
struct KdvSystem {
  Ring ring;
  PseudoOp L, P;
  std::array<RingElement, 4> commutator;  // coefficients of [P, L] at D^3..D^0
  std::array<RingElement, 4> displayed;   // 2 alpha', alpha'' + 2 beta' - 3 v', ...
  int sign = 0;                           // commutator = sign * displayed
};
KdvSystem kdv_system();

/// (1/6) b''' - (2/3) b b'.
RingElement kdv_residual(const RingElement& beta);

/// The system with alpha = a constant, v = (2/3) beta + c1 and
/// gamma = (1/2) beta' + (2/3) a beta + c2 substituted.
struct KdvElimination {
  std::array<RingElement, 4> reduced;  // first three vanish identically
  RingElement beta;                    // the jet variable beta
};
KdvElimination kdv_eliminate(const KdvSystem& sys);

struct ConstantConjugation {
  PseudoOp T;          // T B T^-1 has constant coefficients and is differential
  RingElement shift;   // c with T (L - c) T^-1 = D^2
  std::vector<PseudoOp> conjugated;
};
/// Semi-decision within the window; absence is not a proof.
std::optional<ConstantConjugation> constant_conjugate_test(const std::vector<PseudoOp>& B);

struct EigenReport {
  bool pointwise = false;   // P(f) = lambda(P) f for every generator
  bool functional = false;  // f(a w) = lambda(P) f(w) on the Schur pair of B
  bool agree() const { return pointwise == functional; }
};
/// lambda holds one base-ring value per generator.
EigenReport eigen_check(const std::vector<PseudoOp>& B, const RingElement& f, const std::vector<RingElement>& lambda);
/// P applied to f as a differential operator.
RingElement apply(const PseudoOp& P, const RingElement& f);

/// b^2 = a^3 + c4 a^2 + c3 b + c2 a + c0 within the window, if such a relation exists.
struct CubicRelation {
  RingElement c4, c3, c2, c0;
};
std::optional<CubicRelation> cubic_relation(const Laurent& a, const Laurent& b);
/// Discriminant 4p^3 + 27q^2 of the depressed Weierstrass form (zero iff singular).
Rational cubic_discriminant(const CubicRelation& rel);

/// L = D^2 - u, P = D^3 - (3/2) u D - (3/4) u' with u'' = 3u^2 - g2, u(0) = u0,
/// u'(0) = u1. They commute; the spectral curve is smooth for generic data.
std::vector<PseudoOp> weierstrass_lax_pair(const Ring& ring, const Rational& u0, const Rational& u1,
                                           const Rational& g2, int depth);

}  // namespace sato

#endif  // SATO_CURVELAB_HPP
