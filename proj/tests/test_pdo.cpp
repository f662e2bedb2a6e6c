#include "doctest.h"
#include "gen.hpp"
#include "sato/error.hpp"
#include "sato/pdo.hpp"

using namespace sato;

namespace {

const Ring QQ = Ring::rationals();
const Ring R = Ring::x_power_series(QQ, 12);
constexpr int kDepth = 10;

PseudoOp D(int n, int depth = kDepth) { return PseudoOp::d_power(R, n, depth); }
PseudoOp S(const RingElement& c, int depth = kDepth) { return PseudoOp::scalar(c, depth); }
RingElement X() { return R.x(); }
RingElement C(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return R.from_rational(r);
}

Laurent ysym(int low, std::vector<long> cs, int g) {
  std::vector<RingElement> v;
  for (long c : cs) v.push_back(QQ.from_int(c));
  return Laurent(QQ, "y", low, v, g);
}

bool is_identity(const PseudoOp& p) { return equal_within_precision(p, PseudoOp::identity(p.ring(), p.depth())); }

// Symbol has no positive powers of y inside its window.
bool in_symbol_of_differential(const Laurent& v) {
  for (int n = std::max(1, v.low()); n < v.guaranteed(); ++n)
    if (!v.coeff(n).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("multiply examples") {
  PseudoOp got = D(1) * S(X());
  CHECK(got.top() == 1);
  CHECK(got.coeff(1) == X());
  CHECK(got.coeff(0) == R.one());
  for (int k = -1; k >= got.bottom(); --k) CHECK(got.coeff(k).is_zero());

  PseudoOp inv = D(-1) * S(X());
  CHECK(inv.coeff(-1) == X());
  CHECK(inv.coeff(-2) == -R.one());
  for (int k = -3; k >= inv.bottom(); --k) CHECK(inv.coeff(k).is_zero());
  // Oracle: D * (D^-1 x) = x on the window.
  CHECK(equal_within_precision(D(1) * inv, S(X())));

  CHECK(is_identity(D(2) * D(-2)));
}

TEST_CASE("left normal form examples") {
  LeftNormalForm a = left_normal_form(S(X()) * D(1));
  CHECK(a.terms[0] == X());
  CHECK(a.terms[1] == -R.one());

  LeftNormalForm b = left_normal_form(D(3));
  CHECK(b.terms[0] == R.one());
  for (std::size_t k = 1; k < b.terms.size(); ++k) CHECK(b.terms[k].is_zero());

  LeftNormalForm c = left_normal_form(S(X() * X()) * D(2));
  CHECK(c.terms[0] == X() * X());
  CHECK(c.terms[1] == C(-4) * X());
  CHECK(c.terms[2] == C(2));
  for (std::size_t k = 3; k < c.terms.size(); ++k) CHECK(c.terms[k].is_zero());
  // Independent oracle: expand sum D^(M-n) b_n by operator multiplication.
  PseudoOp rebuilt = D(2) * S(c.terms[0]) + D(1) * S(c.terms[1]) + S(c.terms[2]);
  CHECK(equal_within_precision(rebuilt, S(X() * X()) * D(2)));
}

TEST_CASE("invert examples") {
  CHECK(is_identity(invert(PseudoOp::identity(R, kDepth))));
  PseudoOp T = PseudoOp::identity(R, kDepth) + S(X()) * D(-1);
  PseudoOp Ti = invert(T);
  CHECK(Ti.coeff(0) == R.one());
  CHECK(Ti.coeff(-1) == -X());
  CHECK(is_identity(Ti * T));
  CHECK(is_identity(T * Ti));
  try {
    (void)invert(S(X()) + D(-1));
    FAIL("expected non-unit-leading");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnitLeading);
  }
}

TEST_CASE("invert operators of nonzero order") {
  PseudoOp L = D(2) + S(X()) * D(1) + S(C(3));
  PseudoOp Li = invert(L);
  CHECK(Li.order() == -2);
  CHECK(is_identity(L * Li));
  CHECK(is_identity(Li * L));
}

TEST_CASE("sigma examples") {
  CHECK(sigma(S(X()) * D(1) + S(C(1))) == ysym(0, {1}, sigma(S(X()) * D(1) + S(C(1))).guaranteed()));
  Laurent s2 = sigma(D(2) + S(X() * X()) * D(1));
  CHECK(s2.low() == -2);
  CHECK(s2.coeff(-2) == QQ.one());
  for (int n = -1; n < s2.guaranteed(); ++n) CHECK(s2.coeff(n).is_zero());
  Laurent s3 = sigma(D(-1));
  CHECK(s3.low() == 1);
  CHECK(s3.coeff(1) == QQ.one());
  RingElement blind = RingElement::from_series(R, {}, 0);
  try {
    (void)sigma(S(blind));
    FAIL("expected zero-precision");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroPrecision);
  }
}

TEST_CASE("act examples") {
  Laurent one_ = act(D(1), ysym(1, {1}, kDepth + 1));
  CHECK(equal_within_precision(one_, ysym(0, {1}, 5)));
  Laurent zero_ = act(S(X()) * D(1), ysym(0, {1}, kDepth));
  CHECK(zero_.is_zero());
  PseudoOp T = PseudoOp::identity(R, kDepth) + S(X()) * D(-1);
  Laurent got = act(T, ysym(-1, {1}, kDepth));
  CHECK(equal_within_precision(got, ysym(-1, {1, 0, 1}, 4)));
  CHECK(got.coeff(-1) == QQ.one());
  CHECK(got.coeff(1) == QQ.one());
  for (int n = 2; n < got.guaranteed(); ++n) CHECK(got.coeff(n).is_zero());
}

TEST_CASE("commutator examples") {
  CHECK(is_identity(commutator(D(1), S(X()))));
  CHECK(commutator(D(2), D(3)).is_zero());
  Ring dp = Ring::diff_polynomial({"v"}, 3);
  PseudoOp d2 = PseudoOp::d_power(dp, 2, 4);
  PseudoOp v = PseudoOp::scalar(dp.jet("v", 0), 4);
  PseudoOp c = commutator(d2, v);
  CHECK(c.coeff(1) == dp.jet("v", 1) * Rational(2));
  CHECK(c.coeff(0) == dp.jet("v", 2));
  CHECK(c.coeff(2).is_zero());
}

TEST_CASE("is_differential examples") {
  CHECK(is_differential(D(2) + S(X())));
  CHECK_FALSE(is_differential(D(-1)));
  CHECK_FALSE(is_differential(PseudoOp::identity(R, kDepth) + S(X()) * D(-1)));
}

TEST_CASE("ring mismatch") {
  PseudoOp a = D(1);
  PseudoOp b = PseudoOp::d_power(Ring::x_power_series(QQ, 8), 1, kDepth);
  CHECK_THROWS_AS((void)(a * b), Error);
}

TEST_CASE("differential products stay exact") {
  PseudoOp L = D(2) + S(X()) * D(1);
  PseudoOp P = L * L;
  for (const auto& t : P.terms()) CHECK(t.is_exact());
}

TEST_CASE("printing") {
  PseudoOp p = D(2, 3) + S(X(), 3) * D(1, 3);
  CHECK(p.to_string() == "D^2 + x*D + O(D^-1)");
}

TEST_CASE("property: associativity") {
  gen::Engine rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    PseudoOp a = gen::op(rng, R, gen::uniform(rng, -2, 2), 6, 4);
    PseudoOp b = gen::op(rng, R, gen::uniform(rng, -2, 2), 6, 4);
    PseudoOp c = gen::op(rng, R, gen::uniform(rng, -2, 2), 6, 4);
    CHECK(equal_within_precision((a * b) * c, a * (b * c)));
  }
}

TEST_CASE("property: order additivity for monic operators") {
  gen::Engine rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    PseudoOp a = gen::op(rng, R, gen::uniform(rng, -3, 3), 6, 4, true);
    PseudoOp b = gen::op(rng, R, gen::uniform(rng, -3, 3), 6, 4, true);
    CHECK((a * b).order() == a.order() + b.order());
    CHECK((a * b).is_monic());
  }
}

TEST_CASE("property: normal form round trip") {
  gen::Engine rng(44);
  for (int trial = 0; trial < 60; ++trial) {
    PseudoOp a = gen::op(rng, R, gen::uniform(rng, -3, 3), 7, 5);
    LeftNormalForm lf = left_normal_form(a);
    CHECK(equal_within_precision(from_left_normal_form(lf), a));
    CHECK(lf.top == a.top());
    CHECK(equal_within_precision(lf.terms[0], a.terms()[0]));
  }
}

TEST_CASE("property: inversion both sides and uniqueness") {
  gen::Engine rng(45);
  for (int trial = 0; trial < 60; ++trial) {
    PseudoOp a = gen::op(rng, R, gen::uniform(rng, -2, 2), 7, 5);
    PseudoOp ai = invert(a);
    CHECK(is_identity(a * ai));
    CHECK(is_identity(ai * a));
    CHECK(equal_within_precision(invert(ai), a));
  }
}

TEST_CASE("property: act is independent of the lift") {
  gen::Engine rng(46);
  for (int trial = 0; trial < 40; ++trial) {
    PseudoOp p = gen::op(rng, R, gen::uniform(rng, -2, 2), 7, 5);
    PseudoOp q = gen::op(rng, R, gen::uniform(rng, -2, 2), 7, 1);  // constant coefficients
    PseudoOp noise = S(X()) * gen::op(rng, R, q.top(), 7, 4);
    PseudoOp q2 = q + noise;
    CHECK(equal_within_precision(sigma(q), sigma(q2)));
    CHECK(equal_within_precision(sigma(q * p), sigma(q2 * p)));
    CHECK(equal_within_precision(act(p, sigma(q)), sigma(q2 * p)));
  }
}

TEST_CASE("property: order-0 unit operators act bijectively on y^n R[[y]]") {
  gen::Engine rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    PseudoOp p = gen::op(rng, R, 0, 8, 5);
    PseudoOp pi = invert(p);
    int n = gen::uniform(rng, -3, 3);
    std::vector<RingElement> cs = {QQ.from_rational(gen::nonzero_rational(rng))};
    for (int k = 1; k < 6; ++k) cs.push_back(QQ.from_rational(gen::small_rational(rng)));
    Laurent v(QQ, "y", n, cs);
    Laurent w = act(p, v);
    CHECK(w.low() == n);
    CHECK(equal_within_precision(act(pi, w), v));
    // The action is a right action: (P P')(v) = P'(P(v)).
    PseudoOp p2 = gen::op(rng, R, 0, 8, 5);
    CHECK(equal_within_precision(act(p * p2, v), act(p2, act(p, v))));
  }
}

TEST_CASE("property: differential operators are exactly those preserving sigma(D)") {
  gen::Engine rng(48);
  for (int trial = 0; trial < 40; ++trial) {
    PseudoOp p = gen::diff_op(rng, R, gen::uniform(rng, 0, 3), kDepth, 4);
    CHECK(is_differential(p));
    for (int n = 0; n < 4; ++n) {
      PseudoOp qn = D(n) * gen::diff_op(rng, R, 0, kDepth, 3);
      CHECK(in_symbol_of_differential(act(p, sigma(qn))));
    }
    // Adding a negative power breaks both sides.
    PseudoOp bad = p + S(R.from_rational(gen::nonzero_rational(rng))) * D(-gen::uniform(rng, 1, 3));
    CHECK_FALSE(is_differential(bad));
    bool preserved = true;
    for (int n = 0; n < 4; ++n) preserved = preserved && in_symbol_of_differential(act(bad, sigma(D(n))));
    CHECK_FALSE(preserved);
  }
}
