#include "sato/series.hpp"

#include "sato/error.hpp"

#include <algorithm>

namespace sato {

namespace {

void require_compatible(const Laurent& a, const Laurent& b) {
  if (a.ring() != b.ring())
    fail(ErrorKind::RingMismatch, "series over different rings: " + a.ring().describe() + " vs " +
                                      b.ring().describe());
  if (a.var() != b.var())
    fail(ErrorKind::RingMismatch, "series in different variables: " + a.var() + " vs " + b.var());
}

std::string power_string(const std::string& var, int n) {
  if (n == 0) return "";
  if (n == 1) return var;
  return var + "^" + std::to_string(n);
}

}  // namespace

Laurent::Laurent(Ring ring, std::string var, int low, std::vector<RingElement> coeffs)
    : ring_(std::move(ring)), var_(std::move(var)), low_(low), coeffs_(std::move(coeffs)) {
  canonicalize();
}

Laurent::Laurent(Ring ring, std::string var, int low, std::vector<RingElement> coeffs, int guaranteed)
    : ring_(std::move(ring)), var_(std::move(var)), low_(low), coeffs_(std::move(coeffs)) {
  if (guaranteed < low_) {
    coeffs_.clear();
    low_ = guaranteed;
  } else {
    coeffs_.resize(static_cast<std::size_t>(guaranteed - low_), ring_.zero());
  }
  canonicalize();
}

void Laurent::canonicalize() {
  for (const auto& c : coeffs_)
    if (c.ring() != ring_) fail(ErrorKind::RingMismatch, "coefficient outside the series' ring");
  std::size_t k = 0;
  while (k < coeffs_.size() && coeffs_[k].is_zero()) ++k;
  if (k > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(k));
    low_ += static_cast<int>(k);
  }
}

Laurent Laurent::zero(const Ring& ring, const std::string& var, int guaranteed) {
  return Laurent(ring, var, guaranteed, {});
}

Laurent Laurent::monomial(const Ring& ring, const std::string& var, const RingElement& c, int exp,
                          int guaranteed) {
  return Laurent(ring, var, exp, {c}, guaranteed);
}

Laurent Laurent::one(const Ring& ring, const std::string& var, int guaranteed) {
  return monomial(ring, var, ring.one(), 0, guaranteed);
}

RingElement Laurent::coeff(int n) const {
  if (n >= guaranteed())
    fail(ErrorKind::ZeroPrecision, "coefficient of " + var_ + "^" + std::to_string(n) + " is unknown");
  if (n < low_) return ring_.zero();
  return coeffs_[static_cast<std::size_t>(n - low_)];
}

int Laurent::order() const {
  if (coeffs_.empty())
    fail(ErrorKind::IndeterminateOrder, "all stored coefficients vanish; order is not determined");
  return -low_;
}

const RingElement& Laurent::leading() const {
  if (coeffs_.empty())
    fail(ErrorKind::IndeterminateOrder, "all stored coefficients vanish; no leading coefficient");
  return coeffs_.front();
}

bool Laurent::is_monic() const { return !coeffs_.empty() && coeffs_.front().is_one(); }

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Laurent& Laurent::operator+=(const Laurent& other) {
  require_compatible(*this, other);
  const int g = std::min(guaranteed(), other.guaranteed());
  const int l = std::min(low_, other.low_);
  std::vector<RingElement> out;
  for (int n = l; n < g; ++n) out.push_back(coeff(n) + other.coeff(n));
  *this = Laurent(ring_, var_, l, std::move(out), g);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& other) { return *this += -other; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  require_compatible(a, b);
  const int g = std::min(a.guaranteed() + b.low(), b.guaranteed() + a.low());
  const int l = a.low() + b.low();
  std::vector<RingElement> out;
  for (int n = l; n < g; ++n) {
    RingElement acc = a.ring().zero();
    for (int i = a.low(); i < a.guaranteed(); ++i) {
      const int j = n - i;
      if (j < b.low()) break;
      if (j >= b.guaranteed()) continue;
      const auto& ai = a.coeffs()[static_cast<std::size_t>(i - a.low())];
      if (ai.is_zero()) continue;
      const auto& bj = b.coeffs()[static_cast<std::size_t>(j - b.low())];
      if (bj.is_zero()) continue;
      acc += ai * bj;
    }
    out.push_back(std::move(acc));
  }
  return Laurent(a.ring(), a.var(), l, std::move(out), g);
}

Laurent operator*(const Laurent& a, const RingElement& c) {
  if (c.ring() != a.ring()) fail(ErrorKind::RingMismatch, "scalar outside the series' ring");
  std::vector<RingElement> out;
  for (const auto& x : a.coeffs()) out.push_back(x * c);
  return Laurent(a.ring(), a.var(), a.low(), std::move(out), a.guaranteed());
}

Laurent operator*(const Laurent& a, const Rational& c) { return a * a.ring().from_rational(c); }

bool Laurent::operator==(const Laurent& other) const {
  return ring_ == other.ring_ && var_ == other.var_ && low_ == other.low_ && coeffs_ == other.coeffs_;
}

Laurent Laurent::inverse() const {
  if (coeffs_.empty()) fail(ErrorKind::IndeterminateOrder, "cannot invert a series with no known nonzero term");
  if (!coeffs_.front().is_unit())
    fail(ErrorKind::NonUnitLeading, "leading coefficient " + coeffs_.front().to_string() + " is not a unit");
  const RingElement s0inv = coeffs_.front().inverse();
  const std::size_t r = coeffs_.size();
  std::vector<RingElement> t;
  t.reserve(r);
  t.push_back(s0inv);
  for (std::size_t l = 1; l < r; ++l) {
    RingElement acc = ring_.zero();
    for (std::size_t j = 0; j < l; ++j) {
      if (coeffs_[l - j].is_zero() || t[j].is_zero()) continue;
      acc += coeffs_[l - j] * t[j];
    }
    t.push_back(-(s0inv * acc));
  }
  return Laurent(ring_, var_, -low_, std::move(t));
}

Laurent Laurent::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  if (n == 0) return one(ring_, var_, relative_precision());
  Laurent result = *this;
  Laurent base = *this;
  --n;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Laurent Laurent::shifted(int k) const {
  Laurent r = *this;
  r.low_ += k;
  return r;
}

Laurent Laurent::truncated(int g) const {
  if (g >= guaranteed()) return *this;
  return Laurent(ring_, var_, low_, coeffs_, g);
}

Laurent Laurent::renamed(const std::string& var) const {
  Laurent r = *this;
  r.var_ = var;
  return r;
}

std::string Laurent::to_string() const {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    append_scaled_term(out, coeffs_[i], power_string(var_, low_ + static_cast<int>(i)), first);
    first = false;
  }
  const std::string big = "O(" + (guaranteed() == 0 ? std::string("1") : power_string(var_, guaranteed())) + ")";
  out += first ? big : " + " + big;
  return out;
}

bool equal_within_precision(const Laurent& a, const Laurent& b) {
  require_compatible(a, b);
  const int g = std::min(a.guaranteed(), b.guaranteed());
  const int l = std::min(a.low(), b.low());
  for (int n = l; n < g; ++n)
    if (!equal_within_precision(a.coeff(n), b.coeff(n))) return false;
  return true;
}

int order_of(const Laurent& v) { return v.order(); }

Laurent multiply(const Laurent& f, const Laurent& g) { return f * g; }

Laurent invert(const Laurent& s) { return s.inverse(); }

Laurent nth_root(const Laurent& s, int n) {
  if (n == 0) fail(ErrorKind::ZeroN, "root index must be nonzero");
  const int ord = s.order();
  if (ord % n != 0)
    fail(ErrorKind::DivisibilityViolation,
         "order " + std::to_string(ord) + " is not divisible by " + std::to_string(n));
  if (!s.is_monic()) fail(ErrorKind::NotMonic, "nth_root needs a monic series");
  const Ring& ring = s.ring();
  const auto& sc = s.coeffs();  // sc[k] is the coefficient of z^(low + k); sc[0] = 1
  const std::size_t r = sc.size();
  // Write s = z^low (1 + S) and t = z^(low/n) (1 + T); then (1 + T)^n = 1 + S.
  // With p_k the z^k coefficient of (1 + T_{<k})^n, the z^k coefficient of
  // (1 + T)^n is p_k + n t_k, hence t_k = (s_k - p_k) / n.
  std::vector<RingElement> t(r, ring.zero());
  t[0] = ring.one();
  const Rational inv_n = Rational(1) / n;
  for (std::size_t k = 1; k < r; ++k) {
    std::vector<RingElement> head(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(k));
    Laurent partial(ring, s.var(), 0, std::move(head), static_cast<int>(k) + 1);
    RingElement p = partial.pow(n).coeff(static_cast<int>(k));
    t[k] = (sc[k] - p) * inv_n;
  }
  return Laurent(ring, s.var(), -ord / n, std::move(t));
}

Laurent compose(const Laurent& f, const Laurent& g) {
  if (f.ring() != g.ring()) fail(ErrorKind::RingMismatch, "compose needs series over one ring");
  if (g.is_zero()) fail(ErrorKind::IndeterminateOrder, "inner series has no known nonzero term");
  const int v = g.low();
  if (v <= 0)
    fail(ErrorKind::NonpositiveValuation, "inner series must have positive valuation, got " + std::to_string(v));
  // f is only known modulo z^Gf, i.e. f(g) modulo g^Gf = O(z^(v Gf)).
  Laurent acc = Laurent::zero(g.ring(), g.var(), v * f.guaranteed());
  if (f.is_zero()) return acc;
  Laurent gp = g.pow(f.low());
  for (int n = f.low(); n < f.guaranteed(); ++n) {
    const RingElement& c = f.coeffs()[static_cast<std::size_t>(n - f.low())];
    if (!c.is_zero()) acc += gp * c;
    if (n + 1 < f.guaranteed()) gp = gp * g;
  }
  return acc;
}

Laurent revert(const Laurent& f) {
  if (f.is_zero() || f.low() != 1)
    fail(ErrorKind::BadValuation, "revert needs a series of valuation exactly 1");
  if (!f.leading().is_unit())
    fail(ErrorKind::NonUnitLeading, "leading coefficient " + f.leading().to_string() + " is not a unit");
  const Ring& ring = f.ring();
  const int gf = f.guaranteed();
  const RingElement inv1 = f.leading().inverse();
  std::vector<RingElement> g = {inv1};  // g[k] is the coefficient of z^(k+1)
  for (int n = 2; n < gf; ++n) {
    // f(g_{<n} + g_n z^n) has z^n coefficient [z^n] f(g_{<n}) + f_1 g_n.
    Laurent head(ring, f.var(), 1, g, n + 1);
    RingElement c = compose(f.truncated(n + 1), head).coeff(n);
    g.push_back(-(c * inv1));
  }
  return Laurent(ring, f.var(), 1, std::move(g), gf);
}

}  // namespace sato
