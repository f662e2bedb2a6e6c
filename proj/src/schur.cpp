#include "sato/schur.hpp"

#include "sato/error.hpp"
#include "sato/normalize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace sato {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

bool known(const Laurent& v, int exponent) { return exponent < v.guaranteed(); }

int max_order(const std::vector<Laurent>& reduced) {
  int d = reduced.front().order();
  for (const auto& r : reduced) d = std::max(d, r.order());
  return d;
}

std::vector<Laurent> sorted_by_order(std::vector<Laurent> rows, bool descending) {
  std::stable_sort(rows.begin(), rows.end(), [descending](const Laurent& a, const Laurent& b) {
    return descending ? a.order() > b.order() : a.order() < b.order();
  });
  return rows;
}

// Orders realized by the span, via the echelon form.
std::vector<int> pivot_orders(const Subspace& W) {
  std::vector<int> out;
  for (const auto& r : echelon(W.rows)) out.push_back(r.order());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int pure_rank(const std::vector<Laurent>& generators) {
  int g = 0;
  bool positive = false;
  for (const auto& a : generators) {
    const int o = a.order();
    positive = positive || o > 0;
    g = std::gcd(g, std::abs(o));
  }
  if (!positive) fail(ErrorKind::NoPositiveOrder, "pure rank needs a generator of positive order");
  return g;
}

Uniformizer uniformizer_z(const Laurent& a, const Laurent& b) {
  if (!a.is_monic() || !b.is_monic()) fail(ErrorKind::NotMonic, "uniformizer needs monic generators");
  const int p = a.order(), q = b.order();
  if (p <= 0 || q <= 0) fail(ErrorKind::WrongOrder, "uniformizer needs generators of positive order");
  const int r = std::gcd(p, q);
  // Smallest i >= 1 with i p = r (mod q); then j = (i p - r) / q >= 0.
  int i = 1;
  while ((i * p - r) % q != 0) ++i;
  const int j = (i * p - r) / q;
  return {a.pow(-i) * b.pow(j), i, j};
}

std::vector<Laurent> split_level(const Laurent& v, int r, int level) {
  if (r < 1) fail(ErrorKind::InvalidArgument, "rank must be positive");
  const int first = -level;
  const int G = v.guaranteed();
  std::vector<Laurent> out;
  for (int i = first; i < first + r; ++i) {
    const int qlow = ceil_div(std::min(v.low(), G) - i, r);
    const int qg = ceil_div(G - i, r);
    std::vector<RingElement> c;
    for (int q = qlow; q < qg; ++q) c.push_back(v.coeff(r * q + i));
    out.emplace_back(v.ring(), "z", qlow, std::move(c), qg);
  }
  return out;
}

Laurent join_level(const std::vector<Laurent>& components, int r, int level, const std::string& var) {
  if (r < 1 || static_cast<int>(components.size()) != r)
    fail(ErrorKind::InvalidArgument, "expected one component per residue class");
  const Ring& ring = components.front().ring();
  const int first = -level;
  int G = 0, low = 0;
  bool init = false;
  for (int k = 0; k < r; ++k) {
    const Laurent& c = components[static_cast<std::size_t>(k)];
    const int g = r * c.guaranteed() + first + k;
    const int l = r * std::min(c.low(), c.guaranteed()) + first + k;
    G = init ? std::min(G, g) : g;
    low = init ? std::min(low, l) : l;
    init = true;
  }
  low = std::min(low, G);
  std::vector<RingElement> out(static_cast<std::size_t>(G - low), ring.zero());
  for (int k = 0; k < r; ++k) {
    const Laurent& c = components[static_cast<std::size_t>(k)];
    for (int q = c.low(); q < c.guaranteed(); ++q) {
      const int e = r * q + first + k;
      if (e < G) out[static_cast<std::size_t>(e - low)] = c.coeff(q);
    }
  }
  return Laurent(ring, var, low, std::move(out), G);
}

std::vector<Laurent> echelon(const std::vector<Laurent>& rows) {
  std::map<int, Laurent, std::greater<int>> pivots;
  for (const auto& row : rows) {
    Laurent u = row;
    while (!u.is_zero()) {
      const int o = u.order();
      auto it = pivots.find(o);
      if (it == pivots.end()) {
        if (!u.leading().is_unit())
          fail(ErrorKind::UnsupportedRing, "row reduction needs unit pivots, got " + u.leading().to_string());
        pivots.emplace(o, u * u.leading().inverse());
        break;
      }
      u = u - it->second * u.leading();
    }
  }
  // Back substitution: clear the other pivot exponents, highest order first.
  for (auto& [p, v] : pivots) {
    for (auto& [q, w] : pivots) {
      if (q >= p || !known(v, -q)) continue;
      const RingElement c = v.coeff(-q);
      if (!c.is_zero()) v = v - w * c;
    }
  }
  std::vector<Laurent> out;
  for (auto& [p, v] : pivots) out.push_back(v);
  return out;
}

bool in_span(const Laurent& u0, const std::vector<Laurent>& reduced) {
  if (u0.is_zero()) return true;
  if (reduced.empty()) return false;
  if (u0.order() > max_order(reduced))
    fail(ErrorKind::WindowTooSmall, "element of order " + std::to_string(u0.order()) + " exceeds the basis");
  Laurent u = u0;
  for (const auto& v : sorted_by_order(reduced, true)) {
    const int e = -v.order();
    if (!known(u, e)) break;
    const RingElement c = u.coeff(e);
    if (!c.is_zero()) u = u - v * c;
  }
  return u.is_zero();
}

std::vector<Laurent> big_cell_rows(const Subspace& W) {
  std::vector<Laurent> rows = sorted_by_order(echelon(W.rows), false);
  if (rows.empty()) fail(ErrorKind::NotBigCell, "empty basis");
  for (std::size_t n = 0; n < rows.size(); ++n) {
    if (rows[n].order() < 0) fail(ErrorKind::NotBigCell, "W meets y R[[y]]: " + rows[n].to_string());
    if (rows[n].order() != static_cast<int>(n))
      fail(ErrorKind::NotBigCell, "no row of order " + std::to_string(n));
  }
  return rows;
}

namespace {
// Leading terms whose value at x = 0 is known; sigma needs nothing more.
PseudoOp known_at_origin(const PseudoOp& P) {
  if (!P.ring().is_series()) return P;
  int n = 0;
  for (const auto& t : P.terms()) {
    if (t.precision() < 1) break;
    ++n;
  }
  return n == P.depth() ? P : P.with_depth(std::max(n, 1));
}
}  // namespace

Subspace sato_forward(const PseudoOp& S, std::optional<int> max_row) {
  if (S.order() != 0 || !S.is_monic())
    fail(ErrorKind::NotMonicOrderZero, "Sato map needs a monic operator of order 0, got " + S.to_string());
  const int D = max_row.value_or(S.depth() - 1);
  if (D < 0) fail(ErrorKind::InvalidArgument, "max_row must be nonnegative");
  const PseudoOp d = PseudoOp::d_power(S.ring(), 1, S.depth());
  Subspace W;
  PseudoOp P = S;
  for (int n = 0; n <= D; ++n) {
    W.rows.push_back(sigma(known_at_origin(P)));
    P = d * P;
  }
  return W;
}

PseudoOp sato_inverse(const Subspace& W, const Ring& ring) {
  if (!ring.is_series()) fail(ErrorKind::UnsupportedRing, "the recovered operator needs x-power-series coefficients");
  const std::vector<Laurent> v = big_cell_rows(W);
  const Ring& base = v.front().ring();
  if (ring.base() != base) fail(ErrorKind::RingMismatch, "basis over " + base.describe() + ", ring " + ring.describe());
  const int D = static_cast<int>(v.size()) - 1;

  // jet[i][j] = s_i^(j)(0)
  std::vector<std::vector<RingElement>> jet = {{base.one()}};
  auto J = [&](int i, int j) -> RingElement {
    if (i == 0) return j == 0 ? base.one() : base.zero();
    return jet[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  };
  // [y^-m] sigma(D^n S) for m < n.
  auto low_coeff = [&](int n, int m) {
    RingElement acc = base.zero();
    for (int i = 1; i <= n - m; ++i) {
      const Integer b = binomial(n, n - m - i);
      if (b != 0) acc += J(i, n - m - i) * Rational(b);
    }
    return acc;
  };

  int K = 0;
  for (int k = 1; k - 1 <= D; ++k) {
    // Each sigma(D^n S), n < k, must lie in W: its y^(k-n) coefficient equals
    // sum_{m<=n} [y^-m] sigma(D^n S) * [y^(k-n)] v_m.
    std::vector<RingElement> rhs;
    bool ok = true;
    for (int n = 0; n < k && ok; ++n) {
      const int e = k - n;
      RingElement acc = base.zero();
      for (int m = 0; m <= n; ++m) {
        if (!known(v[static_cast<std::size_t>(m)], e)) {
          ok = false;
          break;
        }
        const RingElement c = v[static_cast<std::size_t>(m)].coeff(e);
        if (c.is_zero()) continue;
        acc += m == n ? c : low_coeff(n, m) * c;
      }
      rhs.push_back(acc);
    }
    if (!ok) break;
    // Equation n reads sum_{j<=n} C(n, j) s_{k-j}^(j)(0) = rhs_n: the matrix is
    // Pascal's triangle with reversed columns, so forward substitution solves it.
    for (int i = 1; i <= k; ++i) jet.resize(std::max<std::size_t>(jet.size(), static_cast<std::size_t>(i) + 1));
    for (int n = 0; n < k; ++n) {
      RingElement val = rhs[static_cast<std::size_t>(n)];
      for (int j = 0; j < n; ++j) val -= J(k - j, j) * Rational(binomial(n, j));
      auto& row = jet[static_cast<std::size_t>(k - n)];
      if (row.size() != static_cast<std::size_t>(n)) fail(ErrorKind::InvalidArgument, "jet table out of step");
      row.push_back(val);
    }
    K = k;
  }

  std::vector<RingElement> terms = {ring.one()};
  for (int i = 1; i <= K; ++i) {
    const int len = std::min(K - i + 1, ring.precision());
    std::vector<Poly> c;
    Rational fact = 1;
    for (int j = 0; j < len; ++j) {
      if (j > 0) fact *= j;
      c.push_back(J(i, j).poly() * (Rational(1) / fact));
    }
    terms.push_back(RingElement::from_series(ring, std::move(c), len));
  }
  return PseudoOp(ring, 0, std::move(terms));
}

std::vector<std::vector<Rational>> jet_system_matrix(int k) {
  std::vector<std::vector<Rational>> m(static_cast<std::size_t>(k), std::vector<Rational>(static_cast<std::size_t>(k)));
  for (int n = 0; n < k; ++n)
    for (int i = 1; i <= k; ++i) m[static_cast<std::size_t>(n)][static_cast<std::size_t>(i - 1)] = Rational(binomial(n, k - i));
  return m;
}

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Extraction mu_forward(const std::vector<PseudoOp>& generators, int product_length) {
  if (generators.empty()) fail(ErrorKind::InvalidArgument, "no generators");
  const Ring& ring = generators.front().ring();
  for (const auto& g : generators) {
    if (g.ring() != ring) fail(ErrorKind::RingMismatch, "generators over different rings");
    if (!is_differential(g)) fail(ErrorKind::NotDifferential, "generator is not a differential operator: " + g.to_string());
  }

  // First monic (after scaling by a constant) element of least positive order
  // among products of up to `product_length` generators, in lexicographic order.
  std::optional<PseudoOp> best;
  int best_order = 0;
  std::vector<std::size_t> idx;
  auto consider = [&](const PseudoOp& p) {
    int o;
    try {
      o = p.order();
    } catch (const Error&) {
      return;
    }
    if (o <= 0 || (best && o >= best_order)) return;
    const RingElement& lead = p.leading();
    if (!lead.is_constant() || !lead.is_unit()) return;
    best = lead.inverse() * p;
    best_order = o;
  };
  std::function<void(std::size_t, int, const PseudoOp*)> walk = [&](std::size_t start, int len, const PseudoOp* acc) {
    if (len == product_length) return;
    for (std::size_t k = start; k < generators.size(); ++k) {
      const PseudoOp next = acc ? *acc * generators[k] : generators[k];
      consider(next);
      walk(k, len + 1, &next);
    }
  };
  walk(0, 0, nullptr);
  if (!best) fail(ErrorKind::NoPositiveOrder, "no monic element of positive order among the generators and their products");
  if (!best->is_monic()) fail(ErrorKind::NotMonic, "leading coefficient could not be normalized to 1");

  const PseudoOp X = conjugator_to_power(*best, best_order).conjugator;
  const PseudoOp Xinv = invert(X);
  const RingElement s0 = X.coeff(0);
  const PseudoOp S = PseudoOp::scalar(s0.inverse(), X.depth()) * X;

  Extraction out;
  for (const auto& g : generators) {
    const PseudoOp a = Xinv * g * X;
    if (!a.has_constant_coefficients())
      fail(ErrorKind::NonCommuting, "conjugated generator has nonconstant coefficients: " + a.to_string());
    out.pair.algebra.generators.push_back(sigma(a));
  }
  out.pair.rank = pure_rank(out.pair.algebra.generators);
  out.pair.algebra.rank = out.pair.rank;
  out.pair.space = sato_forward(S);
  out.pair.level = -1;
  out.pair.index = 0;
  out.sato_operator = S;
  out.gauge = s0.inverse();
  return out;
}

std::vector<PseudoOp> mu_inverse(const SchurPair& pair, const Ring& ring) {
  const PseudoOp S = sato_inverse(pair.space, ring);
  const PairReport rep = validate_pair(pair);
  if (!rep.stable)
    fail(ErrorKind::StabilityViolation, rep.problems.empty() ? "A W is not inside W" : rep.problems.front());
  const PseudoOp Sinv = invert(S);
  std::vector<PseudoOp> out;
  for (const auto& a : pair.algebra.generators) {
    const PseudoOp b = S * lift(a, ring) * Sinv;
    if (!is_differential(b))
      fail(ErrorKind::StabilityViolation, "S a S^-1 has negative powers of D: " + b.to_string());
    out.push_back(b.differential_part(b.depth()));
  }
  return out;
}

std::optional<RingElement> gauge_equivalence(const std::vector<PseudoOp>& b1, const std::vector<PseudoOp>& b2) {
  if (b1.size() != b2.size() || b1.empty()) return std::nullopt;
  const Ring& ring = b1.front().ring();
  if (!ring.is_series()) fail(ErrorKind::UnsupportedRing, "gauge equivalence needs x-power-series coefficients");
  std::optional<RingElement> f;
  for (std::size_t k = 0; k < b1.size() && !f; ++k) {
    int n1, n2;
    try {
      n1 = b1[k].order();
      n2 = b2[k].order();
    } catch (const Error&) {
      continue;
    }
    if (n1 != n2 || n1 < 1) continue;
    const RingElement c = b1[k].leading();
    if (!c.is_constant() || !c.is_unit() || !equal_within_precision(c, b2[k].leading())) return std::nullopt;
    // f b f^-1 = b - N c (f'/f) D^(N-1) + ...
    const RingElement w = (b1[k].coeff(n1 - 1) - b2[k].coeff(n1 - 1)) * c.inverse() * (Rational(1) / n1);
    f = gauge_first_order(w);
  }
  if (!f) return std::nullopt;
  for (std::size_t k = 0; k < b1.size(); ++k)
    if (!equal_within_precision(conjugate_by_unit(b1[k], *f), b2[k])) return std::nullopt;
  return f;
}

PairReport validate_pair(const SchurPair& pair) {
  PairReport rep;
  const std::vector<Laurent> reduced = echelon(pair.space.rows);
  if (reduced.empty()) {
    rep.stable = false;
    rep.problems.push_back("W has an empty basis");
    return rep;
  }
  const int D = max_order(reduced);
  const auto& gens = pair.algebra.generators;

  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].is_zero()) continue;
    const int p = gens[g].order();
    for (const auto& v : reduced) {
      if (v.order() + p > D) continue;
      if (!in_span(gens[g] * v, reduced)) {
        rep.stable = false;
        rep.problems.push_back("generator " + std::to_string(g) + " times the row of order " +
                               std::to_string(v.order()) + " leaves W");
      }
    }
  }

  std::vector<Laurent> sample = gens;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a; b < gens.size(); ++b) sample.push_back(gens[a] * gens[b]);
  for (const auto& e : sample) {
    if (e.is_zero() || e.order() > 0) continue;
    bool constant = e.order() == 0;
    for (int n = 1; constant && n < e.guaranteed(); ++n) constant = e.coeff(n).is_zero();
    if (!constant) {
      rep.trivial_intersection = false;
      rep.problems.push_back("A meets y R[[y]] (element " + e.to_string() + ")");
    }
  }

  bool positive = false;
  for (const auto& e : gens) positive = positive || (!e.is_zero() && e.order() > 0);
  if (!positive) {
    rep.rank_matches = false;
    rep.problems.push_back("A has no element of positive order");
  } else {
    const int r = pure_rank(gens);
    if (r != pair.rank || r != pair.algebra.rank) {
      rep.rank_matches = false;
      rep.problems.push_back("declared rank " + std::to_string(pair.rank) + " but generators give " + std::to_string(r));
    }
  }
  return rep;
}

int index_of(const Subspace& W, int level) {
  if (!W.rows.empty() && W.rows.front().ring().kind() != RingKind::Rationals)
    fail(ErrorKind::UnsupportedRing, "the index is defined here over the rationals only");
  const std::vector<int> orders = pivot_orders(W);
  if (orders.empty()) fail(ErrorKind::WindowTooSmall, "empty basis");
  const int D = orders.back();
  if (D <= level) fail(ErrorKind::WindowTooSmall, "basis stops at order " + std::to_string(D) + ", not past the level");
  int inside = 0, missing = 0;
  for (int o : orders)
    if (o <= level) ++inside;
  for (int n = level + 1; n <= D; ++n)
    if (!std::binary_search(orders.begin(), orders.end(), n)) ++missing;
  return inside - missing;
}

std::optional<int> is_strongly_semistable(const Subspace& W, int level, int rank) {
  if (rank < 1) fail(ErrorKind::InvalidArgument, "rank must be positive");
  const std::vector<int> orders = pivot_orders(W);
  if (orders.empty()) fail(ErrorKind::WindowTooSmall, "empty basis");
  for (std::size_t k = 1; k < orders.size(); ++k)
    if (orders[k] != orders[k - 1] + 1) return std::nullopt;
  // Complement is everything of order <= T.
  const int T = orders.front() - 1;
  if ((T - level) % rank != 0) return std::nullopt;
  return (T - level) / rank;
}

}  // namespace sato
