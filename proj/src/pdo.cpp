#include "sato/pdo.hpp"

#include "sato/error.hpp"

#include <algorithm>
#include <optional>

namespace sato {

namespace {

void require_same_ring(const PseudoOp& a, const PseudoOp& b) {
  if (a.ring() != b.ring())
    fail(ErrorKind::RingMismatch, "operators over different rings: " + a.ring().describe() + " vs " +
                                      b.ring().describe());
}

std::string d_power_string(int k) {
  if (k == 0) return "";
  if (k == 1) return "D";
  return "D^" + std::to_string(k);
}

// Memoized derivatives of a coefficient list; computed only on demand so that
// differential polynomial rings never exceed their jet bound needlessly.
class DerivativeTable {
 public:
  explicit DerivativeTable(const std::vector<RingElement>& base) : rows_(base.size()) {
    for (std::size_t k = 0; k < base.size(); ++k) rows_[k].push_back(base[k]);
  }
  const RingElement& get(std::size_t k, std::size_t i) {
    auto& row = rows_[k];
    while (row.size() <= i) row.push_back(row.back().derive());
    return row[i];
  }

 private:
  std::vector<std::vector<RingElement>> rows_;
};

}  // namespace

PseudoOp::PseudoOp(Ring ring, int top, std::vector<RingElement> terms)
    : ring_(std::move(ring)), top_(top), terms_(std::move(terms)) {
  if (terms_.empty()) fail(ErrorKind::InvalidArgument, "an operator needs at least one known term");
  canonicalize();
}

void PseudoOp::canonicalize() {
  for (const auto& t : terms_)
    if (t.ring() != ring_) fail(ErrorKind::RingMismatch, "operator coefficient outside the operator's ring");
  std::size_t k = 0;
  while (k + 1 < terms_.size() && terms_[k].is_exact_zero()) ++k;
  if (k > 0) {
    terms_.erase(terms_.begin(), terms_.begin() + static_cast<std::ptrdiff_t>(k));
    top_ -= static_cast<int>(k);
  }
}

PseudoOp PseudoOp::d_power(const Ring& ring, int n, int depth) {
  if (depth < 1) fail(ErrorKind::InvalidArgument, "depth must be positive");
  std::vector<RingElement> t(static_cast<std::size_t>(depth), ring.zero());
  t[0] = ring.one();
  return PseudoOp(ring, n, std::move(t));
}

PseudoOp PseudoOp::scalar(const RingElement& c, int depth) {
  if (depth < 1) fail(ErrorKind::InvalidArgument, "depth must be positive");
  std::vector<RingElement> t(static_cast<std::size_t>(depth), c.ring().zero());
  t[0] = c;
  return PseudoOp(c.ring(), 0, std::move(t));
}

RingElement PseudoOp::coeff(int k) const {
  if (k > top_) return ring_.zero();
  if (k < bottom())
    fail(ErrorKind::ZeroPrecision, "coefficient of D^" + std::to_string(k) + " lies below the known window");
  return terms_[static_cast<std::size_t>(top_ - k)];
}

int PseudoOp::order() const {
  for (std::size_t m = 0; m < terms_.size(); ++m)
    if (!terms_[m].is_zero()) return top_ - static_cast<int>(m);
  fail(ErrorKind::IndeterminateOrder, "operator vanishes on its known window; order is not determined");
}

const RingElement& PseudoOp::leading() const { return terms_[static_cast<std::size_t>(top_ - order())]; }

bool PseudoOp::is_monic() const {
  const RingElement& lead = leading();
  return lead.precision() >= 1 && equal_within_precision(lead, ring_.one());
}

bool PseudoOp::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const RingElement& t) { return t.is_zero(); });
}

bool PseudoOp::has_constant_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const RingElement& t) { return t.is_constant(); });
}

PseudoOp PseudoOp::operator-() const {
  PseudoOp r = *this;
  for (auto& t : r.terms_) t = -t;
  return r;
}

namespace {

PseudoOp combine(const PseudoOp& a, const PseudoOp& b, bool subtract) {
  require_same_ring(a, b);
  const int top = std::max(a.top(), b.top());
  const int bottom = std::max(a.bottom(), b.bottom());
  std::vector<RingElement> out;
  for (int k = top; k >= bottom; --k) out.push_back(subtract ? a.coeff(k) - b.coeff(k) : a.coeff(k) + b.coeff(k));
  return PseudoOp(a.ring(), top, std::move(out));
}

}  // namespace

PseudoOp operator+(const PseudoOp& a, const PseudoOp& b) { return combine(a, b, false); }

PseudoOp operator-(const PseudoOp& a, const PseudoOp& b) { return combine(a, b, true); }

PseudoOp operator*(const PseudoOp& a, const PseudoOp& b) {
  require_same_ring(a, b);
  // Coefficient of D^(M+N-l):  sum_{m<=l} sum_{i<=l-m} C(M-m, i) a_m b_{l-m-i}^(i)
  const int depth = std::min(a.depth(), b.depth());
  const int M = a.top();
  const Ring& ring = a.ring();
  DerivativeTable db(b.terms());
  std::vector<RingElement> out;
  out.reserve(static_cast<std::size_t>(depth));
  for (int l = 0; l < depth; ++l) {
    RingElement acc = ring.zero();
    for (int m = 0; m <= l; ++m) {
      const RingElement& am = a.terms()[static_cast<std::size_t>(m)];
      if (am.is_exact_zero()) continue;
      for (int i = 0; i <= l - m; ++i) {
        const Integer c = binomial(M - m, i);
        if (c == 0) {
          if (M - m >= 0) break;  // C(n, i) = 0 for all i > n >= 0
          continue;
        }
        const std::size_t k = static_cast<std::size_t>(l - m - i);
        if (b.terms()[k].is_exact_zero()) continue;
        const RingElement& bk = db.get(k, static_cast<std::size_t>(i));
        if (bk.is_exact_zero()) continue;
        if (c == 1) {
          acc += am * bk;
        } else {
          acc += (am * bk) * Rational(c);
        }
      }
    }
    out.push_back(std::move(acc));
  }
  return PseudoOp(ring, M + b.top(), std::move(out));
}

PseudoOp operator*(const RingElement& c, const PseudoOp& p) {
  if (c.ring() != p.ring()) fail(ErrorKind::RingMismatch, "scalar outside the operator's ring");
  std::vector<RingElement> t;
  for (const auto& x : p.terms()) t.push_back(c * x);
  return PseudoOp(p.ring(), p.top(), std::move(t));
}

PseudoOp operator*(const Rational& c, const PseudoOp& p) { return p.ring().from_rational(c) * p; }

bool PseudoOp::operator==(const PseudoOp& other) const {
  return ring_ == other.ring_ && top_ == other.top_ && terms_ == other.terms_;
}

PseudoOp PseudoOp::with_depth(int depth) const {
  if (depth < 1) fail(ErrorKind::InvalidArgument, "depth must be positive");
  if (depth >= this->depth()) return *this;
  return PseudoOp(ring_, top_, std::vector<RingElement>(terms_.begin(), terms_.begin() + depth));
}

PseudoOp PseudoOp::differential_part(int depth) const {
  if (depth < 1) fail(ErrorKind::InvalidArgument, "depth must be positive");
  const int top = std::max(top_, 0);
  std::vector<RingElement> t;
  for (int k = top; k >= 0; --k) t.push_back(k <= top_ && k >= bottom() ? coeff(k) : ring_.zero());
  while (static_cast<int>(t.size()) < depth) t.push_back(ring_.zero());
  return PseudoOp(ring_, top, std::move(t));
}

PseudoOp PseudoOp::with_x_precision(int prec) const {
  std::vector<RingElement> t;
  for (const auto& x : terms_) t.push_back(x.truncated(prec));
  return PseudoOp(ring_, top_, std::move(t));
}

std::string PseudoOp::to_string() const {
  std::string out;
  bool first = true;
  for (std::size_t m = 0; m < terms_.size(); ++m) {
    if (terms_[m].is_exact_zero()) continue;
    append_scaled_term(out, terms_[m], d_power_string(top_ - static_cast<int>(m)), first);
    first = false;
  }
  const int unknown = bottom() - 1;
  const std::string big = "O(" + (unknown == 0 ? std::string("1") : d_power_string(unknown)) + ")";
  out += first ? big : " + " + big;
  return out;
}

bool equal_within_precision(const PseudoOp& a, const PseudoOp& b) {
  require_same_ring(a, b);
  const int top = std::max(a.top(), b.top());
  const int bottom = std::max(a.bottom(), b.bottom());
  for (int k = top; k >= bottom; --k)
    if (!equal_within_precision(a.coeff(k), b.coeff(k))) return false;
  return true;
}

PseudoOp multiply(const PseudoOp& p, const PseudoOp& q) { return p * q; }

LeftNormalForm left_normal_form(const PseudoOp& p) {
  // a_l = sum_{n<=l} C(M-n, l-n) b_n^(l-n), solved for b_l.
  const int M = p.top();
  std::vector<RingElement> b;
  std::vector<std::vector<RingElement>> jets;  // jets[n][i] = b_n^(i)
  for (int l = 0; l < p.depth(); ++l) {
    RingElement acc = p.terms()[static_cast<std::size_t>(l)];
    for (int n = 0; n < l; ++n) {
      const Integer c = binomial(M - n, l - n);
      if (c == 0) continue;
      auto& row = jets[static_cast<std::size_t>(n)];
      while (static_cast<int>(row.size()) <= l - n) row.push_back(row.back().derive());
      acc -= row[static_cast<std::size_t>(l - n)] * Rational(c);
    }
    b.push_back(acc);
    jets.push_back({acc});
  }
  return {p.ring(), M, std::move(b)};
}

PseudoOp from_left_normal_form(const LeftNormalForm& form) {
  const int M = form.top;
  std::vector<RingElement> a;
  DerivativeTable jets(form.terms);
  for (std::size_t l = 0; l < form.terms.size(); ++l) {
    RingElement acc = form.ring.zero();
    for (std::size_t n = 0; n <= l; ++n) {
      const Integer c = binomial(M - static_cast<int>(n), static_cast<long>(l - n));
      if (c == 0 || form.terms[n].is_exact_zero()) continue;
      acc += jets.get(n, l - n) * Rational(c);
    }
    a.push_back(std::move(acc));
  }
  return PseudoOp(form.ring, M, std::move(a));
}

PseudoOp invert(const PseudoOp& p) {
  const int N = p.order();
  const RingElement& s0 = p.leading();
  if (!s0.is_unit())
    fail(ErrorKind::NonUnitLeading, "leading coefficient " + s0.to_string() + " is not a unit");
  // P = P0 D^N with P0 = sum s_l D^-l of order 0; then P^-1 = D^-N P0^-1.
  const std::size_t start = static_cast<std::size_t>(p.top() - N);
  std::vector<RingElement> s(p.terms().begin() + static_cast<std::ptrdiff_t>(start), p.terms().end());
  const Ring& ring = p.ring();
  const RingElement s0inv = s0.inverse();
  DerivativeTable ds(s);
  std::vector<RingElement> t = {s0inv};
  // Coefficient of D^-l in T P0 is sum_{m<=l} sum_{i<=l-m} C(-m, i) t_m s_{l-m-i}^(i).
  for (std::size_t l = 1; l < s.size(); ++l) {
    RingElement acc = ring.zero();
    for (std::size_t m = 0; m < l; ++m) {
      if (t[m].is_exact_zero()) continue;
      for (std::size_t i = 0; i <= l - m; ++i) {
        const std::size_t k = l - m - i;
        if (s[k].is_exact_zero()) continue;
        const RingElement& sk = ds.get(k, i);
        if (sk.is_exact_zero()) continue;
        acc += (t[m] * sk) * Rational(binomial(-static_cast<long>(m), static_cast<long>(i)));
      }
    }
    t.push_back(-(s0inv * acc));
  }
  PseudoOp inv0(ring, 0, std::move(t));
  if (N == 0) return inv0;
  return PseudoOp::d_power(ring, -N, inv0.depth()) * inv0;
}

PseudoOp commutator(const PseudoOp& p, const PseudoOp& q) { return p * q - q * p; }

bool is_differential(const PseudoOp& p) {
  for (int k = std::min(-1, p.top()); k >= p.bottom(); --k)
    if (!p.coeff(k).is_zero()) return false;
  return true;
}

Laurent sigma(const PseudoOp& p) {
  const Ring& ring = p.ring();
  if (ring.kind() == RingKind::DiffPolynomial)
    fail(ErrorKind::UnsupportedRing, "the symbol map needs x-power-series or constant coefficients");
  std::vector<RingElement> c;
  for (const auto& t : p.terms()) {
    if (ring.is_series() && t.precision() < 1)
      fail(ErrorKind::ZeroPrecision, "coefficient of D^" + std::to_string(p.top() - static_cast<int>(c.size())) +
                                         " has no known constant term");
    c.push_back(ring.is_series() ? t.eval_at_zero() : t);
  }
  return Laurent(ring.base(), "y", -p.top(), std::move(c));
}

PseudoOp lift(const Laurent& v, const Ring& ring) {
  if (v.ring() != ring.base())
    fail(ErrorKind::RingMismatch, "symbol over " + v.ring().describe() + " cannot lift to " + ring.describe());
  if (v.is_zero()) return PseudoOp(ring, 1 - v.guaranteed(), {ring.zero()});
  std::vector<RingElement> t;
  for (const auto& c : v.coeffs()) t.push_back(ring.lift(c));
  return PseudoOp(ring, -v.low(), std::move(t));
}

Laurent act(const PseudoOp& p, const Laurent& v) { return sigma(lift(v, p.ring()) * p); }

}  // namespace sato
