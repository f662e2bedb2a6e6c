#include "doctest.h"
#include "sato/curvelab.hpp"
#include "sato/error.hpp"
#include "sato/normalize.hpp"

#include <random>

using namespace sato;

namespace {

const Ring QQ = Ring::rationals();
const Ring R = Ring::x_power_series(QQ, 24);
constexpr int kDepth = 12;

PseudoOp D(int n, int depth = kDepth) { return PseudoOp::d_power(R, n, depth); }
PseudoOp S(const RingElement& c, int depth = kDepth) { return PseudoOp::scalar(c, depth); }

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}
RingElement c(long p, long d = 1) { return R.from_rational(q(p, d)); }
RingElement b(long p, long d = 1) { return QQ.from_rational(q(p, d)); }

Laurent ys(int low, std::vector<Rational> cs, int g = 40) {
  std::vector<RingElement> v;
  for (const auto& x : cs) v.push_back(QQ.from_rational(x));
  return Laurent(QQ, "y", low, v, g);
}

PureRankAlgebra algebra(std::vector<Laurent> g) {
  PureRankAlgebra a;
  a.generators = std::move(g);
  return a;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InvalidArgument;
}

// A generic unit with f(0) = 1.
RingElement sample_unit() { return gauge_first_order(c(1) + R.x() * c(2) - R.x() * R.x() * c(1, 3)); }

std::vector<PseudoOp> gauged(std::vector<PseudoOp> ops, const RingElement& f) {
  for (auto& p : ops) p = conjugate_by_unit(p, f);
  return ops;
}

}  // namespace

TEST_CASE("gap sequences of numerical semigroups") {
  SUBCASE("polynomial ring") {
    const auto g = gap_genus(algebra({ys(-1, {1})}), 10);
    CHECK(g.genus == 0);
    CHECK(g.gaps.empty());
    CHECK(g.conductor == 0);
  }
  SUBCASE("orders 2 and 3") {
    const auto g = gap_genus(algebra({ys(-2, {1}), ys(-3, {1, 0, 7})}), 12);
    CHECK(g.genus == 1);
    CHECK(g.gaps == std::vector<int>{1});
    CHECK(g.conductor == 2);
    CHECK(g.achievable.front() == 0);
  }
  SUBCASE("orders 2 and 5") {
    const auto g = gap_genus(algebra({ys(-2, {1}), ys(-5, {1})}), 12);
    CHECK(g.genus == 2);
    CHECK(g.gaps == std::vector<int>{1, 3});
    CHECK(g.conductor == 4);
  }
  SUBCASE("orders 3, 4, 5") {
    const auto g = gap_genus(algebra({ys(-3, {1}), ys(-4, {1}), ys(-5, {1})}), 12);
    CHECK(g.gaps == std::vector<int>{1, 2});
  }
  SUBCASE("failures") {
    CHECK(kind_of([] { gap_genus(algebra({ys(-2, {1}), ys(-5, {1})}), 6); }) == ErrorKind::UnstableBound);
    CHECK(kind_of([] { gap_genus(algebra({ys(-2, {1}), ys(-4, {1})}), 20); }) == ErrorKind::WrongShape);
    CHECK(kind_of([] { gap_genus(algebra({ys(0, {1}), ys(1, {1})}), 20); }) == ErrorKind::NoPositiveOrder);
  }
}

TEST_CASE("gap counts: genus equals the number of gaps below the conductor") {
  for (int a = 2; a <= 6; ++a)
    for (int bb = a + 1; bb <= 9; ++bb) {
      int g0 = a;
      for (int t = bb; t; std::swap(g0, t)) g0 %= t;
      if (g0 != 1) continue;
      const auto g = gap_genus(algebra({ys(-a, {1}), ys(-bb, {1})}), 4 * a * bb);
      // Two-generator semigroups: genus (a-1)(b-1)/2, conductor (a-1)(b-1).
      CHECK(g.genus == (a - 1) * (bb - 1) / 2);
      CHECK(g.conductor == (a - 1) * (bb - 1));
      for (int gap : g.gaps) CHECK(gap < g.conductor);
    }
}

TEST_CASE("local expansion of the Weierstrass family") {
  const auto d = elliptic_family(8);
  const RingElement A = d.base.variable("A"), B = d.base.variable("B");
  CHECK(d.all_hold());
  CHECK(d.checks.size() == 5);
  CHECK(d.y0_series.order() == -3);
  CHECK(d.y0_series.coeff(3) == d.base.one());
  CHECK(d.y0_series.coeff(4).is_zero());
  CHECK(d.y0_series.coeff(7) == A);
  CHECK(d.inv_y1_sq.coeff(-2) == d.base.one());
  CHECK(d.inv_y1_sq.coeff(0).is_zero());
  CHECK(d.inv_y1_sq.coeff(2) == A);
  CHECK(d.inv_y1_sq.coeff(4) == B);
  CHECK(d.report().find("[FAILS]") == std::string::npos);
  CHECK(kind_of([] { elliptic_family(5); }) == ErrorKind::DepthTooSmall);
}

TEST_CASE("elliptic expansion is stable in depth") {
  const auto lo = elliptic_family(7), hi = elliptic_family(11);
  CHECK(hi.all_hold());
  CHECK(equal_within_precision(lo.y0_series, hi.y0_series));
  CHECK(equal_within_precision(lo.y1_of_alpha, hi.y1_of_alpha));
  CHECK(equal_within_precision(lo.gen2, hi.gen2));
  CHECK(hi.y0_series.guaranteed() > lo.y0_series.guaranteed());
}

TEST_CASE("singular cubics") {
  CHECK(singular_cubic(b(0)).tag == "cusp");
  CHECK(singular_cubic(b(-2, 3)).tag == "node");
  const Ring T = Ring::polynomial({"t"});
  CHECK(singular_cubic(T.variable("t")).tag == "parametric");
  CHECK(singular_cubic(c(3)).tag == "node");
  CHECK(singular_cubic(c(0)).tag == "cusp");

  const auto n = singular_cubic(b(5), 20);
  REQUIRE(n.algebra.generators.size() == 2);
  CHECK(n.algebra.generators[1].coeff(-1) == b(5));
  CHECK(gap_genus(n.algebra, 10).genus == 1);

  CHECK(kind_of([] { singular_cubic(R.x()); }) == ErrorKind::WrongShape);
  CHECK(kind_of([] { singular_cubic(R.x().truncated(1)); }) == ErrorKind::UndecidableZero);
  const Ring J = Ring::diff_polynomial({"u"}, 2, {});
  CHECK(kind_of([&] { singular_cubic(J.jet("u", 0)); }) == ErrorKind::UnsupportedRing);
}

TEST_CASE("cubic relations and discriminants") {
  for (long dn : {0L, 1L, -3L, 7L}) {
    const auto cub = singular_cubic(b(dn), 30);
    const auto rel = cubic_relation(cub.algebra.generators[0], cub.algebra.generators[1]);
    REQUIRE(rel.has_value());
    CHECK(rel->c4 == b(2 * dn));
    CHECK(rel->c2 == b(dn * dn));
    CHECK(rel->c3.is_zero());
    CHECK(rel->c0.is_zero());
    CHECK(cubic_discriminant(*rel) == 0);
  }
  // y^2 = x^3 - x: smooth.
  CHECK(cubic_discriminant({b(0), b(0), b(-1), b(0)}) == 4 * q(-1));
  // Orders 2 and 3 without a relation in the window.
  CHECK_FALSE(cubic_relation(ys(-2, {1}), ys(-3, {1, 0, 0, 0, 0, 1})).has_value());
  CHECK(kind_of([] { cubic_relation(ys(-2, {2}), ys(-3, {1})); }) == ErrorKind::WrongShape);
}

TEST_CASE("stationary KdV system") {
  const auto sys = kdv_system();
  CHECK(sys.sign == -1);
  for (std::size_t k = 0; k < 4; ++k) CHECK(sys.commutator[k] == -sys.displayed[k]);

  const auto el = kdv_eliminate(sys);
  CHECK(el.reduced[0].is_zero());
  CHECK(el.reduced[1].is_zero());
  CHECK(el.reduced[2].is_zero());
  CHECK(el.reduced[3] == kdv_residual(-el.beta));
  CHECK_FALSE(el.reduced[3] == kdv_residual(el.beta));
}

TEST_CASE("KdV residual on sample potentials") {
  CHECK(kdv_residual(c(3)).is_zero());
  CHECK(equal_within_precision(kdv_residual(R.x()), R.x() * c(-2, 3)));
  const RingElement x2 = R.x() * R.x();
  CHECK(equal_within_precision(kdv_residual(x2), x2 * R.x() * c(-4, 3)));
}

TEST_CASE("conjugation to constant coefficients") {
  const RingElement f = sample_unit();
  SUBCASE("gauge transform of D^2, D^3") {
    const auto B = gauged({D(2), D(3)}, f);
    const auto hit = constant_conjugate_test(B);
    REQUIRE(hit.has_value());
    CHECK(hit->shift.is_zero());
    REQUIRE(hit->conjugated.size() == 2);
    CHECK(is_differential(hit->conjugated[0]));
    CHECK(hit->conjugated[0].has_constant_coefficients());
  }
  SUBCASE("shifted Laplacian") {
    const auto B = gauged({D(2) + S(c(5)), D(3) + D(1) * S(c(-2))}, f);
    const auto hit = constant_conjugate_test(B);
    REQUIRE(hit.has_value());
    CHECK(hit->shift == b(5));
    for (const auto& h : hit->conjugated) {
      CHECK(is_differential(h));
      CHECK(h.has_constant_coefficients());
    }
  }
  SUBCASE("Weierstrass potential") {
    const auto B = weierstrass_lax_pair(R, q(2), q(0), q(0), kDepth);
    REQUIRE(is_differential(commutator(B[0], B[1])));
    CHECK(commutator(B[0], B[1]).is_zero());
    CHECK_FALSE(constant_conjugate_test(B).has_value());
  }
  CHECK(kind_of([] { constant_conjugate_test({D(2)}); }) == ErrorKind::WrongShape);
}

TEST_CASE("Weierstrass Lax pair has a smooth spectral curve") {
  const auto B = weierstrass_lax_pair(R, q(2), q(0), q(0), kDepth);
  const auto e = mu_forward(B);
  CHECK(validate_pair(e.pair).valid());
  const auto& g = e.pair.algebra.generators;
  const auto rel = cubic_relation(g[0], g[1]);
  REQUIRE(rel.has_value());
  CHECK(cubic_discriminant(*rel) != 0);
  CHECK(gap_genus(e.pair.algebra, 8).genus == 1);
}

TEST_CASE("common eigenfunctions") {
  const RingElement ex = exp_series(R, b(3, 2));
  SUBCASE("exponential") {
    const auto r = eigen_check({D(2), D(3)}, ex, {b(9, 4), b(27, 8)});
    CHECK(r.pointwise);
    CHECK(r.functional);
  }
  SUBCASE("wrong eigenvalue") {
    const auto r = eigen_check({D(2), D(3)}, ex, {b(9, 4), b(1)});
    CHECK_FALSE(r.pointwise);
    CHECK_FALSE(r.functional);
  }
  SUBCASE("linear function") {
    const auto r = eigen_check({D(2), D(3)}, R.x(), {b(1), b(1)});
    CHECK_FALSE(r.pointwise);
    CHECK(r.agree());
  }
  SUBCASE("constant function") {
    const auto r = eigen_check({D(2)}, R.one(), {b(0)});
    CHECK(r.pointwise);
    CHECK(r.functional);
  }
  SUBCASE("through a gauge") {
    const RingElement f = sample_unit();
    const auto r = eigen_check(gauged({D(2), D(3)}, f), f * ex, {b(9, 4), b(27, 8)});
    CHECK(r.pointwise);
    CHECK(r.functional);
  }
  CHECK(kind_of([] { eigen_check({D(2)}, R.one(), {}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { apply(invert(D(2)), R.one()); }) == ErrorKind::NotDifferential);
}

TEST_CASE("eigen: pointwise and functional agree on random data") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const long p = std::uniform_int_distribution<long>(-3, 3)(rng);
    const long l2 = std::uniform_int_distribution<long>(-3, 9)(rng);
    const RingElement f = exp_series(R, b(p));
    const auto r = eigen_check({D(2), D(3)}, f, {b(l2), b(p * p * p)});
    CHECK(r.agree());
    CHECK(r.pointwise == (l2 == p * p));
  }
}
