#ifndef SATO_SCHUR_HPP
#define SATO_SCHUR_HPP

// Subalgebras of R((y)), subspaces W of R((y)) given by finite bases, and the
// correspondence between monic order-0 operators and big-cell subspaces.
//
// A subspace is described by rows up to some order D. Rows past D are not
// stored; every order above D is assumed to be realized by W (true for any
// point of finite index), so membership and index questions are answered on
// orders <= D only.

#include "sato/pdo.hpp"
#include "sato/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sato {

struct PureRankAlgebra {
  std::vector<Laurent> generators;  // Laurent series in y
  int rank = 1;
};

struct Subspace {
  std::vector<Laurent> rows;
};

struct SchurPair {
  PureRankAlgebra algebra;
  Subspace space;
  int rank = 1;
  int level = -1;
  int index = 0;
};

/// gcd of the nonzero generator orders.
int pure_rank(const std::vector<Laurent>& generators);

struct Uniformizer {
  Laurent z;  // a^-i b^j, monic of order -gcd
  int i = 0;
  int j = 0;
};
Uniformizer uniformizer_z(const Laurent& a, const Laurent& b);

/// Splits v by exponent residues: y^(r q + i) with i in {-level, ..., -level + r - 1}
/// goes to component i - (-level) as z^q.
std::vector<Laurent> split_level(const Laurent& v, int r, int level);
Laurent join_level(const std::vector<Laurent>& components, int r, int level, const std::string& var = "y");

/// Rows sigma(D^n S) for n = 0..max_row (default: as many as S's window allows).
Subspace sato_forward(const PseudoOp& S, std::optional<int> max_row = std::nullopt);
/// The monic order-0 S, with coefficients in `ring`, whose rows span W.
PseudoOp sato_inverse(const Subspace& W, const Ring& ring);

/// Matrix of the level-k jet system: entry (n, i - 1) = C(n, k - i), n = 0..k-1, i = 1..k.
std::vector<std::vector<Rational>> jet_system_matrix(int k);
Rational determinant(std::vector<std::vector<Rational>> m);

/// Fully reduced echelon form: one monic row per realized order, with zero
/// coefficients at the other pivot exponents. Rows that vanish are dropped.
std::vector<Laurent> echelon(const std::vector<Laurent>& rows);
/// Rows of the echelon form indexed by order, checked to be exactly 0..D.
std::vector<Laurent> big_cell_rows(const Subspace& W);
/// Whether u (of order <= D) lies in the span, within the known window.
bool in_span(const Laurent& u, const std::vector<Laurent>& reduced);

struct Extraction {
  SchurPair pair;
  PseudoOp sato_operator;  // monic S with W = sigma(D S)
  RingElement gauge;       // f with f B f^-1 = S A S^-1
};
/// Commuting differential operators -> embedded Schur pair at level -1.
Extraction mu_forward(const std::vector<PseudoOp>& generators, int product_length = 3);
/// Embedded Schur pair -> differential operators S a S^-1, over `ring`.
std::vector<PseudoOp> mu_inverse(const SchurPair& pair, const Ring& ring);

/// Unit f with f B1_k f^-1 = B2_k for every k, if one exists within precision.
std::optional<RingElement> gauge_equivalence(const std::vector<PseudoOp>& b1, const std::vector<PseudoOp>& b2);

struct PairReport {
  bool stable = true;                // A W inside W
  bool trivial_intersection = true;  // A meets R[[y]] only in constants
  bool rank_matches = true;
  std::vector<std::string> problems;
  bool valid() const { return stable && trivial_intersection && rank_matches; }
};
PairReport validate_pair(const SchurPair& pair);

/// dim(W meets y^(-level) R[[y]]) - dim(R((y)) / (W + y^(-level) R[[y]])).
int index_of(const Subspace& W, int level);

/// N with W + y^(-rN - level) R[[y]] a direct sum equal to R((y)), if any.
std::optional<int> is_strongly_semistable(const Subspace& W, int level = -1, int rank = 1);

}  // namespace sato

#endif  // SATO_SCHUR_HPP
