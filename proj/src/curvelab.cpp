#include "sato/curvelab.hpp"

#include "sato/error.hpp"
#include "sato/normalize.hpp"

#include <algorithm>
#include <numeric>

namespace sato {

namespace {

Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Differential operators padded with exact zeros down to D^(top - depth + 1).
PseudoOp padded(const Ring& ring, int top, std::vector<RingElement> t, int depth) {
  while (static_cast<int>(t.size()) < depth) t.push_back(ring.zero());
  return PseudoOp(ring, top, std::move(t));
}

bool all_equal(const std::array<RingElement, 4>& a, const std::array<RingElement, 4>& b, bool negate) {
  for (std::size_t k = 0; k < 4; ++k)
    if (!(a[k] == (negate ? -b[k] : b[k]))) return false;
  return true;
}

int order_or(const PseudoOp& p, int fallback) {
  try {
    return p.order();
  } catch (const Error&) {
    return fallback;
  }
}

}  // namespace

GapProfile gap_genus(const PureRankAlgebra& A, int bound) {
  if (bound < 0) fail(ErrorKind::InvalidArgument, "bound must be nonnegative");
  std::vector<int> orders;
  for (const auto& g : A.generators)
    if (!g.is_zero() && g.order() > 0) orders.push_back(g.order());
  if (orders.empty()) fail(ErrorKind::NoPositiveOrder, "no generator of positive order");
  int r = 0;
  for (int o : orders) r = std::gcd(r, o);
  if (r != 1) fail(ErrorKind::WrongShape, "gap counts need rank 1, generators have rank " + std::to_string(r));

  std::vector<bool> reach(static_cast<std::size_t>(bound) + 1, false);
  reach[0] = true;
  for (int n = 1; n <= bound; ++n)
    for (int o : orders)
      if (o <= n && reach[static_cast<std::size_t>(n - o)]) {
        reach[static_cast<std::size_t>(n)] = true;
        break;
      }

  GapProfile out;
  for (int n = 0; n <= bound; ++n) (reach[static_cast<std::size_t>(n)] ? out.achievable : out.gaps).push_back(n);
  int c = bound + 1;
  while (c > 0 && reach[static_cast<std::size_t>(c - 1)]) --c;
  if (2 * c > bound)
    fail(ErrorKind::UnstableBound, "bound " + std::to_string(bound) + " is below twice the conductor estimate " +
                                       std::to_string(c));
  out.conductor = c;
  out.genus = static_cast<int>(out.gaps.size());
  return out;
}

bool EllipticLocalData::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

std::string EllipticLocalData::report() const {
  std::string out;
  out += "y0(y1)      = " + y0_series.to_string() + "\n";
  out += "alpha(y1)   = " + alpha_series.to_string() + "\n";
  out += "y1(alpha)   = " + y1_of_alpha.to_string() + "\n";
  out += "1/y1^2      = " + inv_y1_sq.to_string() + "\n";
  out += "gen1        = " + gen1.to_string() + "\n";
  out += "gen2        = " + gen2.to_string() + "\n";
  out += "fixed-point passes: " + std::to_string(passes) + "\n";
  for (const auto& [name, ok] : checks) out += std::string(ok ? "[holds] " : "[FAILS] ") + name + "\n";
  return out;
}

EllipticLocalData elliptic_family(int depth) {
  if (depth < 6) fail(ErrorKind::DepthTooSmall, "elliptic_family needs depth >= 6");
  EllipticLocalData d;
  d.base = Ring::polynomial({"A", "B"});
  const Ring& base = d.base;
  const RingElement A = base.variable("A"), B = base.variable("B");
  const int G = depth + 3;  // y0 is known modulo y1^G
  const Laurent y1 = Laurent::monomial(base, "y1", base.one(), 1, 2 * G);

  // Each pass fixes at least one more coefficient; stop when nothing moves.
  auto step = [&](const Laurent& y0) { return (y1.pow(3) + y0 * y0 * y1 * A + y0.pow(3) * B).truncated(G); };
  Laurent y0 = Laurent::zero(base, "y1", G);
  for (int pass = 0; pass <= G; ++pass) {
    Laurent next = step(y0);
    ++d.passes;
    if (next == y0) break;
    y0 = next;
  }
  d.y0_series = y0;
  d.alpha_series = nth_root(y0.shifted(-1), 2);
  d.y1_of_alpha = revert(d.alpha_series).renamed("alpha");
  d.inv_y1_sq = (d.y1_of_alpha * d.y1_of_alpha).inverse();
  d.gen1 = Laurent::monomial(base, "alpha", base.one(), -2, d.inv_y1_sq.guaranteed());
  d.gen2 = d.gen1 * d.y1_of_alpha.inverse();

  const int big = 4 * G;
  auto alpha_term = [&](const RingElement& c, int e) { return Laurent::monomial(base, "alpha", c, e, big); };
  const Laurent expected = alpha_term(base.one(), -2) + alpha_term(A, 2) + alpha_term(B, 4);
  const Laurent cubic = d.gen2 * d.gen2 - d.gen1.pow(3) - d.gen1 * A - alpha_term(B, 0);

  d.checks.emplace_back("y0 = y1^3 + A*y0^2*y1 + B*y0^3", (y0 - step(y0)).is_zero());
  d.checks.emplace_back("alpha^2 = y0/y1", equal_within_precision(d.alpha_series * d.alpha_series, y0.shifted(-1)));
  d.checks.emplace_back("alpha(y1(alpha)) = alpha",
                        equal_within_precision(compose(d.alpha_series, d.y1_of_alpha.renamed("y1")),
                                               Laurent::monomial(base, "y1", base.one(), 1, big)));
  d.checks.emplace_back("1/y1^2 = alpha^-2 + A*alpha^2 + B*alpha^4", equal_within_precision(d.inv_y1_sq, expected));
  d.checks.emplace_back("gen2^2 = gen1^3 + A*gen1 + B", cubic.is_zero());
  return d;
}

SingularCubic singular_cubic(const RingElement& delta, int window) {
  if (window < 4) fail(ErrorKind::InvalidArgument, "window must be at least 4");
  Ring ring = delta.ring();
  RingElement d = delta;
  if (ring.kind() == RingKind::DiffPolynomial)
    fail(ErrorKind::UnsupportedRing, "delta must lie in a field or polynomial base");
  if (ring.is_series()) {
    if (!delta.is_constant()) fail(ErrorKind::WrongShape, "delta must be a constant");
    if (delta.is_zero() && !delta.is_exact())
      fail(ErrorKind::UndecidableZero, "delta vanishes only to the known x-precision");
    d = delta.eval_at_zero();
    ring = ring.base();
  }
  SingularCubic out;
  out.tag = d.is_zero() ? "cusp" : d.as_rational() ? "node" : "parametric";
  out.algebra.generators = {Laurent::monomial(ring, "y", ring.one(), -2, window),
                            Laurent(ring, "y", -3, {ring.one(), ring.zero(), d}, window)};
  out.algebra.rank = 1;
  return out;
}

KdvSystem kdv_system() {
  KdvSystem s;
  s.ring = Ring::diff_polynomial({"v", "alpha", "beta", "gamma"}, 5, {"a", "c1", "c2"});
  const Ring& J = s.ring;
  auto f = [&](const char* name, int k) { return J.jet(name, k); };
  const int depth = 6;
  s.L = padded(J, 2, {J.one(), J.zero(), f("v", 0)}, depth);
  s.P = padded(J, 3, {J.one(), f("alpha", 0), f("beta", 0), f("gamma", 0)}, depth);
  const PseudoOp C = commutator(s.P, s.L);
  if (!is_differential(C) || !C.coeff(4).is_zero())
    fail(ErrorKind::InvalidArgument, "commutator has unexpected terms: " + C.to_string());
  for (int k = 3; k >= 0; --k) s.commutator[static_cast<std::size_t>(3 - k)] = C.coeff(k);

  s.displayed = {
      f("alpha", 1) * Rational(2),
      f("alpha", 2) + f("beta", 1) * Rational(2) - f("v", 1) * Rational(3),
      f("beta", 2) + f("gamma", 1) * Rational(2) - f("v", 2) * Rational(3) - f("alpha", 0) * f("v", 1) * Rational(2),
      f("gamma", 2) - f("v", 3) - f("alpha", 0) * f("v", 2) - f("beta", 0) * f("v", 1),
  };
  s.sign = all_equal(s.commutator, s.displayed, false) ? 1 : all_equal(s.commutator, s.displayed, true) ? -1 : 0;
  return s;
}

RingElement kdv_residual(const RingElement& beta) {
  return beta.derive(3) * q(1, 6) - beta * beta.derive() * q(2, 3);
}

KdvElimination kdv_eliminate(const KdvSystem& sys) {
  const Ring& J = sys.ring;
  const RingElement b = J.jet("beta", 0), a = J.variable("a");
  const RingElement v = b * q(2, 3) + J.variable("c1");
  const RingElement g = b.derive() * q(1, 2) + a * b * q(2, 3) + J.variable("c2");
  KdvElimination out;
  out.beta = b;
  for (std::size_t k = 0; k < 4; ++k)
    out.reduced[k] = sys.displayed[k].substitute("alpha", a).substitute("v", v).substitute("gamma", g);
  return out;
}

std::optional<ConstantConjugation> constant_conjugate_test(const std::vector<PseudoOp>& B) {
  const PseudoOp* L = nullptr;
  const PseudoOp* P = nullptr;
  for (const auto& g : B) {
    const int o = order_or(g, 0);
    if (o == 1) fail(ErrorKind::WrongShape, "the algebra has an element of order 1");
    if (o == 2 && !L && g.is_monic()) L = &g;
    if (o == 3 && !P && g.is_monic()) P = &g;
  }
  if (!L || !P) fail(ErrorKind::WrongShape, "need monic generators of orders 2 and 3");
  const Ring& ring = L->ring();
  const Ring& base = ring.base();

  auto attempt = [&](const RingElement& c) -> std::optional<ConstantConjugation> {
    const PseudoOp Lc = *L - PseudoOp::scalar(ring.lift(c), L->depth());
    const PseudoOp X = conjugator_to_power(Lc, 2).conjugator;
    const PseudoOp Xi = invert(X);
    ConstantConjugation out{Xi, c, {}};
    for (const auto& g : B) {
      const PseudoOp h = Xi * g * X;
      if (!h.has_constant_coefficients() || !is_differential(h)) return std::nullopt;
      out.conjugated.push_back(h.differential_part(h.depth()));
    }
    return out;
  };

  if (auto hit = attempt(base.zero())) return hit;

  // Otherwise T L T^-1 may be D^2 + c. With n = sqrt(D^2 - c), the odd part
  // of X^-1 P X is n (D^2 + e); its D and D^-1 coefficients r1, r_1 give
  // (3/8) c^2 + (r1/2) c + r_1 = 0.
  const PseudoOp X = conjugator_to_power(*L, 2).conjugator;
  const PseudoOp R3 = invert(X) * *P * X;
  if (!R3.has_constant_coefficients() || R3.bottom() > -1) return std::nullopt;
  const auto r1 = R3.coeff(1).eval_at_zero().as_rational();
  const auto rm1 = R3.coeff(-1).eval_at_zero().as_rational();
  if (!r1 || !rm1) return std::nullopt;
  const Rational disc = (*r1) * (*r1) / 4 - Rational(3) / 2 * (*rm1);
  const auto s = exact_sqrt(disc);
  if (!s) return std::nullopt;
  for (const Rational& sign : {Rational(1), Rational(-1)}) {
    const Rational c = (-(*r1) / 2 + sign * (*s)) * Rational(4) / 3;
    if (c == 0) continue;
    if (auto hit = attempt(base.from_rational(c))) return hit;
  }
  return std::nullopt;
}

RingElement apply(const PseudoOp& P, const RingElement& f) {
  if (P.ring() != f.ring()) fail(ErrorKind::RingMismatch, "function outside the operator's ring");
  if (!is_differential(P)) fail(ErrorKind::NotDifferential, "only differential operators act on functions");
  RingElement acc = f.ring().zero();
  RingElement fk = f;
  for (int k = 0; k <= P.top(); ++k) {
    if (k > 0) fk = fk.derive();
    if (k < P.bottom()) continue;
    const RingElement c = P.coeff(k);
    if (!c.is_exact_zero()) acc += c * fk;
  }
  return acc;
}

EigenReport eigen_check(const std::vector<PseudoOp>& B, const RingElement& f, const std::vector<RingElement>& lambda) {
  if (B.empty() || B.size() != lambda.size())
    fail(ErrorKind::InvalidArgument, "need one eigenvalue per generator");
  const Ring& ring = f.ring();
  if (!ring.is_series()) fail(ErrorKind::UnsupportedRing, "eigenfunctions are x-power series");
  for (const auto& l : lambda)
    if (l.ring() != ring.base()) fail(ErrorKind::RingMismatch, "eigenvalues must lie in the base ring");

  EigenReport rep;
  rep.pointwise = true;
  for (std::size_t k = 0; k < B.size(); ++k) {
    const RingElement Pf = apply(B[k], f);
    if (Pf.precision() < 1) fail(ErrorKind::WindowTooSmall, "P(f) has no known coefficients");
    rep.pointwise = rep.pointwise && equal_within_precision(Pf, f * ring.lift(lambda[k]));
  }

  // Functional side on the Schur pair of B. mu_forward works with the gauge
  // transform g B g^-1, whose eigenfunction is g f.
  const Extraction e = mu_forward(B);
  const RingElement gf = e.gauge * f;
  const auto& rows = e.pair.space.rows;  // w_n = sigma(D^n S)
  const int D = static_cast<int>(rows.size()) - 1;
  const int usable = std::min(D, gf.precision() - 1);
  // f(w) for w in W, via w = sum c_k w_k.
  auto functional = [&](Laurent u) -> std::optional<RingElement> {
    RingElement acc = ring.base().zero();
    if (u.is_zero()) return acc;
    const int top = u.order();
    if (top > usable) return std::nullopt;
    for (int o = top; o >= 0; --o) {
      if (-o >= u.guaranteed()) return std::nullopt;
      const RingElement c = u.coeff(-o);
      if (c.is_zero()) continue;
      u = u - rows[static_cast<std::size_t>(o)] * c;
      acc += c * gf.x_coeff(o) * factorial(o);
    }
    if (!u.is_zero()) return std::nullopt;
    return acc;
  };
  rep.functional = true;
  int compared = 0;
  for (std::size_t k = 0; k < B.size(); ++k) {
    const Laurent& a = e.pair.algebra.generators[k];
    for (int n = 0; n + a.order() <= usable; ++n) {
      const auto lhs = functional(a * rows[static_cast<std::size_t>(n)]);
      const auto rhs = functional(rows[static_cast<std::size_t>(n)]);
      if (!lhs || !rhs) continue;
      ++compared;
      if (!(*lhs == *rhs * lambda[k])) rep.functional = false;
    }
  }
  if (compared == 0) fail(ErrorKind::WindowTooSmall, "no row of W can be tested within the window");
  return rep;
}

std::optional<CubicRelation> cubic_relation(const Laurent& a, const Laurent& b) {
  if (a.order() != 2 || b.order() != 3 || !a.is_monic() || !b.is_monic())
    fail(ErrorKind::WrongShape, "need monic series of orders 2 and 3");
  const Ring& ring = a.ring();
  const Laurent one = Laurent::one(ring, a.var(), std::max(a.guaranteed(), b.guaranteed()) + 8);
  Laurent r = b * b - a.pow(3);
  CubicRelation rel{ring.zero(), ring.zero(), ring.zero(), ring.zero()};
  const std::pair<int, Laurent> steps[] = {{4, a * a}, {3, b}, {2, a}, {0, one}};
  RingElement* slots[] = {&rel.c4, &rel.c3, &rel.c2, &rel.c0};
  for (std::size_t k = 0; k < 4; ++k) {
    const auto& [target, m] = steps[k];
    if (r.is_zero()) break;
    if (r.order() > target) return std::nullopt;
    if (r.order() == target) {
      *slots[k] = r.leading();
      r = r - m * r.leading();
    }
  }
  if (!r.is_zero()) return std::nullopt;
  return rel;
}

Rational cubic_discriminant(const CubicRelation& rel) {
  const auto c4 = rel.c4.as_rational(), c3 = rel.c3.as_rational(), c2 = rel.c2.as_rational(),
             c0 = rel.c0.as_rational();
  if (!c4 || !c3 || !c2 || !c0) fail(ErrorKind::UnsupportedRing, "discriminant needs rational coefficients");
  // y^2 - c3 y = x^3 + c4 x^2 + c2 x + c0, completed and depressed.
  const Rational k0 = *c0 + (*c3) * (*c3) / 4;
  const Rational p = *c2 - (*c4) * (*c4) / 3;
  const Rational qq = k0 - (*c4) * (*c2) / 3 + Rational(2) * (*c4) * (*c4) * (*c4) / 27;
  return 4 * p * p * p + 27 * qq * qq;
}

std::vector<PseudoOp> weierstrass_lax_pair(const Ring& ring, const Rational& u0, const Rational& u1,
                                           const Rational& g2, int depth) {
  if (!ring.is_series()) fail(ErrorKind::UnsupportedRing, "the potential is an x-power series");
  const int len = ring.precision();
  std::vector<Rational> c = {u0, u1};
  for (int n = 0; static_cast<int>(c.size()) < len; ++n) {
    Rational sq = 0;
    for (int i = 0; i <= n; ++i) sq += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(n - i)];
    c.push_back((3 * sq - (n == 0 ? g2 : Rational(0))) / ((n + 2) * (n + 1)));
  }
  c.resize(static_cast<std::size_t>(len));
  std::vector<Poly> p;
  for (const auto& x : c) p.push_back(Poly::constant(ring.nvars(), x));
  const RingElement u = RingElement::from_series(ring, std::move(p), len);
  const PseudoOp L = padded(ring, 2, {ring.one(), ring.zero(), -u}, depth);
  const PseudoOp P = padded(ring, 3, {ring.one(), ring.zero(), u * q(-3, 2), u.derive() * q(-3, 4)}, depth);
  return {L, P};
}

}  // namespace sato
