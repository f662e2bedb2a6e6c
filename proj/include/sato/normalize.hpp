#ifndef SATO_NORMALIZE_HPP
#define SATO_NORMALIZE_HPP

// Conjugation normal forms for operators with x-power-series coefficients:
// X^-1 L X = D^N for monic L of order N, admissible operators, and the
// first-order gauge f^-1 D f = D + u.

#include "sato/pdo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sato {

struct ConjugationResult {
  PseudoOp conjugator;  // X, order 0 with unit leading coefficient
  PseudoOp residual;    // X^-1 L X - D^N, zero within precision
  std::string normalization;
};

/// Solves L X = X D^N term by term. Each unknown coefficient s_l satisfies a
/// first-order linear equation in x whose constant of integration is
/// s_l(0) = constants[l] (default: 1 for l = 0, else 0). Constants lie in
/// the base ring of the coefficient ring.
ConjugationResult conjugator_to_power(const PseudoOp& L, int N,
                                      const std::vector<RingElement>& constants = {});

/// X1^-1 X2; constant-coefficient when both conjugate the same L to D^N.
PseudoOp uniqueness_defect(const PseudoOp& x1, const PseudoOp& x2);

struct AdmissibilityReport {
  /// T D T^-1 has constant coefficients within precision.
  bool constant_conjugate = false;
  /// T = exp(c x) sum f_i D^-i with each f_i a polynomial of degree <= i.
  bool structural = false;
  RingElement exponent;  // c, in the base ring
};

AdmissibilityReport admissibility(const PseudoOp& T);
bool is_admissible(const PseudoOp& T);

/// Admissible T with T D^-r T^-1 = v, for v monic of order -r (v = y^r + ...).
/// The operator lives over `ring`, an x-power-series ring over v's ring.
PseudoOp admissible_root(const Laurent& v, int r, const Ring& ring);

/// f with f(0) = 1 and f' = u f, so that f^-1 D f = D + u.
RingElement gauge_first_order(const RingElement& u);

/// f P f^-1.
PseudoOp conjugate_by_unit(const PseudoOp& P, const RingElement& f);

}  // namespace sato

#endif  // SATO_NORMALIZE_HPP
