#include "doctest.h"
#include "gen.hpp"
#include "sato/error.hpp"
#include "sato/series.hpp"

using namespace sato;

namespace {

const Ring QQ = Ring::rationals();

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

// Series over QQ from rational coefficients starting at `low`, known modulo z^g.
Laurent ser(int low, std::vector<Rational> cs, int g) {
  std::vector<RingElement> v;
  for (auto& c : cs) v.push_back(QQ.from_rational(c));
  return Laurent(QQ, "z", low, v, g);
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

// Random unit-leading series of the given valuation and relative precision.
Laurent random_unit_series(gen::Engine& rng, const Ring& ring, int low, int rel, bool monic) {
  std::vector<RingElement> v;
  v.push_back(monic ? ring.one() : ring.from_rational(gen::nonzero_rational(rng)));
  for (int k = 1; k < rel; ++k) v.push_back(gen::element(rng, ring));
  return Laurent(ring, "z", low, v);
}

std::vector<Ring> coefficient_rings() {
  return {Ring::rationals(), Ring::polynomial({"a", "b"}),
          Ring::x_power_series(Ring::rationals(), 6), Ring::diff_polynomial({"u"}, 2, {"c"})};
}

}  // namespace

TEST_CASE("order_of examples") {
  CHECK(order_of(ser(-3, {1, 0, 0, 0, 1}, 5)) == 3);
  CHECK(order_of(ser(0, {5}, 4)) == 0);
  CHECK(kind_of([] { (void)order_of(ser(0, {0, 0, 0}, 3)); }) == ErrorKind::IndeterminateOrder);
}

TEST_CASE("multiply examples") {
  CHECK(ser(-1, {1}, 6) * ser(1, {1}, 6) == ser(0, {1}, 5));
  CHECK(ser(0, {1, 1}, 8) * ser(0, {1, -1}, 8) == ser(0, {1, 0, -1}, 8));
  Laurent s = ser(1, {1, 1}, 10);
  Laurent prod = s * invert(s);
  CHECK(equal_within_precision(prod, Laurent::one(QQ, "z", prod.guaranteed())));
  CHECK(prod.guaranteed() == 9);
  CHECK(kind_of([] { (void)(ser(0, {1}, 3) * Laurent::one(QQ, "y", 3)); }) == ErrorKind::RingMismatch);
  CHECK(kind_of([] {
          (void)(ser(0, {1}, 3) * Laurent::one(Ring::polynomial({"a"}), "z", 3));
        }) == ErrorKind::RingMismatch);
}

TEST_CASE("invert examples") {
  CHECK(invert(ser(0, {1}, 8)) == ser(0, {1}, 8));
  // 1/(1+z) = sum (-1)^n z^n
  Laurent inv = invert(ser(0, {1, 1}, 8));
  for (int n = 0; n < 8; ++n) CHECK(inv.coeff(n).as_rational().value() == (n % 2 ? -1 : 1));
  // 1/(z + z^2) = z^-1 - 1 + z - z^2 + ...
  Laurent inv2 = invert(ser(1, {1, 1}, 8));
  CHECK(inv2.low() == -1);
  for (int n = -1; n < inv2.guaranteed(); ++n)
    CHECK(inv2.coeff(n).as_rational().value() == ((n + 1) % 2 ? -1 : 1));
  // constant coefficient x over a polynomial ring is not a unit
  Ring p = Ring::polynomial({"x0"});
  Laurent bad(p, "z", 0, {p.variable("x0"), p.one()}, 4);
  CHECK(kind_of([&] { (void)invert(bad); }) == ErrorKind::NonUnitLeading);
}

TEST_CASE("nth_root examples") {
  CHECK(nth_root(ser(-4, {1}, 4), 2) == ser(-2, {1}, 6));
  // z^2 (1 + z) -> z (1 + z/2 - z^2/8 + z^3/16 - 5 z^4/128 ...)
  Laurent t = nth_root(ser(2, {1, 1}, 10), 2);
  CHECK(t.low() == 1);
  CHECK(t.guaranteed() == 9);
  for (int k = 0; k < 8; ++k) {
    // Independent closed form: C(1/2, k) = prod_{j<k} (1/2 - j) / k!
    Rational c = 1;
    for (int j = 0; j < k; ++j) c *= (Rational(1, 2) - j);
    c /= factorial(k);
    CHECK(t.coeff(k + 1).as_rational().value() == c);
  }
  CHECK(equal_within_precision(t * t, ser(2, {1, 1}, 10)));
  CHECK(kind_of([] { (void)nth_root(ser(-3, {1}, 5), 2); }) == ErrorKind::DivisibilityViolation);
  CHECK(kind_of([] { (void)nth_root(ser(-2, {2}, 5), 2); }) == ErrorKind::NotMonic);
  CHECK(kind_of([] { (void)nth_root(ser(-2, {1}, 5), 0); }) == ErrorKind::ZeroN);
}

TEST_CASE("nth_root with negative index") {
  Laurent s = ser(2, {1, 3, -1}, 10);
  Laurent t = nth_root(s, -2);
  CHECK(order_of(t) == 1);
  CHECK(t.is_monic());
  CHECK(equal_within_precision(t.pow(-2), s));
}

TEST_CASE("compose examples") {
  Laurent f = ser(1, {1, 1}, 8);
  Laurent z = ser(1, {1}, 8);
  CHECK(equal_within_precision(compose(f, z), f));
  Laurent zinv = ser(-1, {1}, 8);
  Laurent got = compose(zinv, f);
  CHECK(equal_within_precision(got, invert(f)));
  CHECK(kind_of([] { (void)compose(ser(0, {1, 1}, 5), ser(0, {2}, 5)); }) == ErrorKind::NonpositiveValuation);
}

TEST_CASE("revert examples") {
  Laurent z = ser(1, {1}, 8);
  CHECK(equal_within_precision(revert(z), z));
  Laurent g = revert(ser(1, {1, 1}, 9));
  // signed Catalan numbers: (-1)^(n-1) C_(n-1)
  const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429};
  for (int n = 1; n < 9; ++n) CHECK(g.coeff(n).as_rational().value() == (n % 2 ? 1 : -1) * catalan[n - 1]);
  CHECK(g.guaranteed() == 9);
  CHECK(kind_of([] { (void)revert(ser(2, {1}, 8)); }) == ErrorKind::BadValuation);
}

TEST_CASE("printing") {
  CHECK(ser(-2, {1, 0, -1, q(2, 3)}, 3).to_string() == "z^-2 - 1 + 2/3*z + O(z^3)");
}

TEST_CASE("property: inversion round trip on every coefficient ring") {
  gen::Engine rng(2024);
  for (const Ring& ring : coefficient_rings()) {
    for (int trial = 0; trial < 100; ++trial) {
      int low = gen::uniform(rng, -3, 3);
      Laurent s = random_unit_series(rng, ring, low, gen::uniform(rng, 1, 8), false);
      Laurent t = invert(s);
      Laurent prod = s * t;
      CHECK(equal_within_precision(prod, Laurent::one(ring, "z", prod.guaranteed())));
      CHECK(prod.guaranteed() == s.relative_precision());
      CHECK(equal_within_precision(t * s, prod));
    }
  }
}

TEST_CASE("property: a series with non-unit leading coefficient has no inverse") {
  gen::Engine rng(5);
  Ring p = Ring::polynomial({"a"});
  for (int trial = 0; trial < 100; ++trial) {
    // Nonconstant leading coefficient: never a unit in a polynomial ring.
    RingElement lead = p.variable("a") * p.from_rational(gen::nonzero_rational(rng)) +
                       p.from_rational(gen::small_rational(rng));
    Laurent s(p, "z", gen::uniform(rng, -2, 2), {lead, gen::element(rng, p)});
    CHECK(kind_of([&] { (void)invert(s); }) == ErrorKind::NonUnitLeading);
  }
}

TEST_CASE("property: monic roots, powers and uniqueness") {
  gen::Engine rng(77);
  for (const Ring& ring : coefficient_rings()) {
    for (int trial = 0; trial < 100; ++trial) {
      int n = gen::uniform(rng, 1, 4) * (gen::uniform(rng, 0, 1) ? 1 : -1);
      int ord = n * gen::uniform(rng, -2, 2);
      Laurent s = random_unit_series(rng, ring, -ord, gen::uniform(rng, 1, 7), true);
      Laurent t = nth_root(s, n);
      CHECK(t.is_monic());
      CHECK(order_of(t) == ord / n);
      CHECK(equal_within_precision(t.pow(n), s));
      // Uniqueness: a root of s*u is the product of the roots.
      Laurent u = random_unit_series(rng, ring, -n * gen::uniform(rng, -1, 1), s.relative_precision(), true);
      CHECK(equal_within_precision(nth_root(s * u, n), t * nth_root(u, n)));
    }
  }
}

TEST_CASE("property: order is additive over domains") {
  gen::Engine rng(31);
  for (const Ring& ring : coefficient_rings()) {
    for (int trial = 0; trial < 60; ++trial) {
      Laurent f = random_unit_series(rng, ring, gen::uniform(rng, -3, 3), gen::uniform(rng, 1, 5), false);
      Laurent g = random_unit_series(rng, ring, gen::uniform(rng, -3, 3), gen::uniform(rng, 1, 5), false);
      CHECK(order_of(f * g) == order_of(f) + order_of(g));
      Laurent sum = f + g;
      if (!sum.is_zero()) CHECK(order_of(sum) <= std::max(order_of(f), order_of(g)));
    }
  }
}

TEST_CASE("property: reversion is a two-sided compositional inverse") {
  gen::Engine rng(11);
  for (const Ring& ring : {Ring::rationals(), Ring::polynomial({"a"})}) {
    for (int trial = 0; trial < 40; ++trial) {
      Laurent f = random_unit_series(rng, ring, 1, gen::uniform(rng, 1, 7), false);
      Laurent g = revert(f);
      Laurent id = Laurent::monomial(ring, "z", ring.one(), 1, f.guaranteed());
      CHECK(equal_within_precision(compose(f, g), id));
      CHECK(equal_within_precision(compose(g, f), id));
      CHECK(compose(f, g).guaranteed() == f.guaranteed());
    }
  }
}
