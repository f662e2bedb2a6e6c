#include "sato/ring.hpp"

#include "sato/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace sato {

// ---------------------------------------------------------------- Poly

bool Poly::grlex_greater(const Exponents& a, const Exponents& b) {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da > db;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

Poly Poly::constant(std::size_t nvars, const Rational& c) {
  Poly p(nvars);
  if (c != 0) p.terms_.push_back({Exponents(nvars, 0), c});
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  Poly p(nvars);
  Exponents e(nvars, 0);
  e.at(index) = 1;
  p.terms_.push_back({std::move(e), Rational(1)});
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_.front().exps)
    if (e != 0) return false;
  return true;
}

Rational Poly::constant_term() const {
  if (terms_.empty()) return 0;
  const Term& last = terms_.back();  // the constant monomial sorts last
  for (int e : last.exps)
    if (e != 0) return 0;
  return last.coeff;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.front().exps;
  return std::accumulate(e.begin(), e.end(), 0);
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.exps.at(var));
  return d;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

std::vector<Poly::Term> merge_terms(const std::vector<Poly::Term>& a,
                                    const std::vector<Poly::Term>& b, int sign) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && Poly::grlex_greater(a[i].exps, b[j].exps))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || Poly::grlex_greater(b[j].exps, a[i].exps)) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = sign < 0 ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (c != 0) out.push_back({a[i].exps, c});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    nvars_ = other.nvars_;
    return *this;
  }
  terms_ = merge_terms(terms_, other.terms_, 1);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    *this = -other;
    return *this;
  }
  terms_ = merge_terms(terms_, other.terms_, -1);
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(std::max(a.nvars_, b.nvars_));
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.is_constant()) return b * a.constant_term();
  if (b.is_constant()) return a * b.constant_term();
  auto cmp = [](const Exponents& x, const Exponents& y) { return Poly::grlex_greater(x, y); };
  std::map<Exponents, Rational, decltype(cmp)> acc(cmp);
  Exponents e(r.nvars_);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ta.exps[k] + tb.exps[k];
      acc[e] += ta.coeff * tb.coeff;
    }
  }
  for (auto& [exps, c] : acc)
    if (c != 0) r.terms_.push_back({exps, c});
  return r;
}

void Poly::add_term(const Exponents& exps, const Rational& c) {
  if (c == 0) return;
  Poly single(exps.size());
  single.terms_.push_back({exps, c});
  *this += single;
}

// ---------------------------------------------------------------- Ring

struct Ring::Spec {
  RingKind kind = RingKind::Rationals;
  std::vector<std::string> names;
  std::vector<std::string> functions;
  std::vector<std::string> constants;
  int max_jet = 0;
  std::shared_ptr<const Ring> base;
  int precision = 0;
};

namespace {

std::shared_ptr<const Ring::Spec> rationals_spec() {
  static const auto spec = std::make_shared<const Ring::Spec>();
  return spec;
}

std::string jet_name(const std::string& f, int j) { return f + std::string(j, '\''); }

void require_distinct(const std::vector<std::string>& names) {
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(ErrorKind::InvalidArgument, "duplicate symbol name in ring declaration");
  for (const auto& n : names) {
    if (n.empty() || n == "x" || n == "D" || n == "y")
      fail(ErrorKind::InvalidArgument, "reserved or empty symbol name '" + n + "'");
  }
}

}  // namespace

Ring::Ring() : spec_(rationals_spec()) {}

Ring Ring::rationals() { return Ring(); }

Ring Ring::polynomial(std::vector<std::string> vars) {
  if (vars.empty()) return rationals();
  require_distinct(vars);
  auto s = std::make_shared<Spec>();
  s->kind = RingKind::Polynomial;
  s->names = std::move(vars);
  return Ring(std::move(s));
}

Ring Ring::diff_polynomial(std::vector<std::string> functions, int max_jet,
                           std::vector<std::string> constants) {
  if (max_jet < 0) fail(ErrorKind::InvalidArgument, "max jet order must be nonnegative");
  std::vector<std::string> all = functions;
  all.insert(all.end(), constants.begin(), constants.end());
  require_distinct(all);
  auto s = std::make_shared<Spec>();
  s->kind = RingKind::DiffPolynomial;
  s->max_jet = max_jet;
  for (const auto& f : functions)
    for (int j = 0; j <= max_jet; ++j) s->names.push_back(jet_name(f, j));
  for (const auto& c : constants) s->names.push_back(c);
  s->functions = std::move(functions);
  s->constants = std::move(constants);
  return Ring(std::move(s));
}

Ring Ring::x_power_series(const Ring& base, int precision) {
  if (base.kind() != RingKind::Rationals && base.kind() != RingKind::Polynomial)
    fail(ErrorKind::UnsupportedRing, "x-power-series rings need a Rationals or Polynomial base");
  if (precision < 1) fail(ErrorKind::InvalidArgument, "x-precision must be positive");
  auto s = std::make_shared<Spec>();
  s->kind = RingKind::XPowerSeries;
  s->base = std::make_shared<const Ring>(base);
  s->precision = precision;
  return Ring(std::move(s));
}

RingKind Ring::kind() const { return spec_->kind; }

const Ring& Ring::base() const { return spec_->base ? *spec_->base : *this; }

int Ring::precision() const { return spec_->kind == RingKind::XPowerSeries ? spec_->precision : kExact; }

int Ring::max_jet() const { return spec_->max_jet; }

const std::vector<std::string>& Ring::functions() const { return spec_->functions; }

const std::vector<std::string>& Ring::constants() const { return spec_->constants; }

const std::vector<std::string>& Ring::variable_names() const {
  if (spec_->base) return spec_->base->variable_names();
  return spec_->names;
}

std::optional<std::size_t> Ring::variable_index(const std::string& name) const {
  const auto& names = variable_names();
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

std::optional<std::pair<int, int>> Ring::jet_of(std::size_t var) const {
  if (kind() != RingKind::DiffPolynomial) return std::nullopt;
  const std::size_t per = static_cast<std::size_t>(spec_->max_jet + 1);
  if (var >= per * spec_->functions.size()) return std::nullopt;
  return std::make_pair(static_cast<int>(var / per), static_cast<int>(var % per));
}

std::size_t Ring::jet_index(int function, int order) const {
  return static_cast<std::size_t>(function) * static_cast<std::size_t>(spec_->max_jet + 1) +
         static_cast<std::size_t>(order);
}

Ring Ring::with_precision(int precision) const {
  if (kind() != RingKind::XPowerSeries) return *this;
  return x_power_series(base(), precision);
}

bool Ring::operator==(const Ring& other) const {
  if (spec_ == other.spec_) return true;
  const Spec& a = *spec_;
  const Spec& b = *other.spec_;
  if (a.kind != b.kind || a.names != b.names || a.functions != b.functions ||
      a.constants != b.constants || a.max_jet != b.max_jet || a.precision != b.precision)
    return false;
  if (static_cast<bool>(a.base) != static_cast<bool>(b.base)) return false;
  return !a.base || *a.base == *b.base;
}

std::string Ring::describe() const {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
    return s;
  };
  switch (kind()) {
    case RingKind::Rationals: return "QQ";
    case RingKind::Polynomial: return "QQ[" + join(spec_->names) + "]";
    case RingKind::DiffPolynomial: {
      std::string s = "QQ{" + join(spec_->functions) + "; jets<=" + std::to_string(spec_->max_jet);
      if (!spec_->constants.empty()) s += "; const " + join(spec_->constants);
      return s + "}";
    }
    case RingKind::XPowerSeries:
      return base().describe() + "[[x]]/x^" + std::to_string(spec_->precision);
  }
  return "?";
}

RingElement Ring::zero() const { return from_rational(0); }

RingElement Ring::one() const { return from_rational(1); }

RingElement Ring::from_int(long n) const { return from_rational(Rational(n)); }

RingElement Ring::from_rational(const Rational& q) const {
  if (is_series()) return RingElement::from_series(*this, {Poly::constant(nvars(), q)}, kExact);
  return RingElement::from_poly(*this, Poly::constant(nvars(), q));
}

RingElement Ring::variable(const std::string& name) const {
  if (is_series() && name == "x") return x();
  auto idx = variable_index(name);
  if (!idx) fail(ErrorKind::UnknownSymbol, "unknown symbol '" + name + "' in ring " + describe());
  Poly p = Poly::variable(nvars(), *idx);
  if (is_series()) return RingElement::from_series(*this, {p}, kExact);
  return RingElement::from_poly(*this, p);
}

RingElement Ring::jet(const std::string& function, int order) const {
  if (kind() != RingKind::DiffPolynomial)
    fail(ErrorKind::UnsupportedRing, "jet variables need a differential polynomial ring");
  auto it = std::find(spec_->functions.begin(), spec_->functions.end(), function);
  if (it == spec_->functions.end()) fail(ErrorKind::UnknownSymbol, "unknown function '" + function + "'");
  if (order < 0) fail(ErrorKind::InvalidArgument, "negative jet order");
  if (order > spec_->max_jet)
    fail(ErrorKind::JetOrderExceeded, "jet order " + std::to_string(order) + " exceeds bound " +
                                          std::to_string(spec_->max_jet));
  const int f = static_cast<int>(it - spec_->functions.begin());
  return RingElement::from_poly(*this, Poly::variable(nvars(), jet_index(f, order)));
}

RingElement Ring::x() const {
  if (!is_series()) fail(ErrorKind::UnsupportedRing, "x is only defined in x-power-series rings");
  return RingElement::from_series(*this, {Poly(nvars()), Poly::constant(nvars(), 1)}, kExact);
}

RingElement Ring::lift(const RingElement& base_element) const {
  if (!is_series()) {
    if (base_element.ring() != *this) fail(ErrorKind::RingMismatch, "cannot lift across rings");
    return base_element;
  }
  if (base_element.ring() == *this) return base_element;
  if (base_element.ring() != base()) fail(ErrorKind::RingMismatch, "element is not in the base ring");
  return RingElement::from_series(*this, {base_element.poly()}, kExact);
}

// ---------------------------------------------------------------- RingElement

RingElement RingElement::from_poly(const Ring& ring, Poly p) {
  if (ring.is_series()) fail(ErrorKind::UnsupportedRing, "polynomial payload in a series ring");
  RingElement e;
  e.ring_ = ring;
  if (p.nvars() != ring.nvars()) {
    if (!p.is_zero()) fail(ErrorKind::RingMismatch, "polynomial has the wrong number of variables");
    p = Poly(ring.nvars());
  }
  e.poly_ = std::move(p);
  return e;
}

RingElement RingElement::from_series(const Ring& ring, std::vector<Poly> coeffs, int prec) {
  if (!ring.is_series()) fail(ErrorKind::UnsupportedRing, "series payload in a non-series ring");
  RingElement e;
  e.ring_ = ring;
  for (auto& c : coeffs) {
    if (c.nvars() != ring.nvars()) {
      if (!c.is_zero()) fail(ErrorKind::RingMismatch, "coefficient has the wrong number of variables");
      c = Poly(ring.nvars());
    }
  }
  e.coeffs_ = std::move(coeffs);
  e.prec_ = prec;
  e.normalize();
  return e;
}

void RingElement::normalize() {
  if (!ring_.is_series()) {
    prec_ = kExact;
    return;
  }
  const int cap = ring_.precision();
  if (prec_ < 0) prec_ = 0;
  if (prec_ != kExact) {
    prec_ = std::min(prec_, cap);
    if (static_cast<int>(coeffs_.size()) > prec_) coeffs_.resize(static_cast<std::size_t>(prec_));
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  if (prec_ == kExact && static_cast<int>(coeffs_.size()) > cap) {
    prec_ = cap;
    coeffs_.resize(static_cast<std::size_t>(cap));
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }
}

namespace {

void require_same(const RingElement& a, const RingElement& b) {
  if (a.ring() != b.ring())
    fail(ErrorKind::RingMismatch,
         "ring mismatch: " + a.ring().describe() + " vs " + b.ring().describe());
}

}  // namespace

bool RingElement::is_zero() const {
  if (ring_.is_series()) return coeffs_.empty();
  return poly_.is_zero();
}

bool RingElement::is_one() const {
  if (ring_.is_series())
    return prec_ == kExact && coeffs_.size() == 1 && coeffs_[0].is_constant() &&
           coeffs_[0].constant_term() == 1;
  return poly_.is_constant() && poly_.constant_term() == 1;
}

bool RingElement::is_constant() const {
  switch (ring_.kind()) {
    case RingKind::Rationals:
    case RingKind::Polynomial: return true;
    case RingKind::XPowerSeries: return coeffs_.size() <= 1;
    case RingKind::DiffPolynomial:
      for (const auto& t : poly_.terms())
        for (std::size_t v = 0; v < t.exps.size(); ++v)
          if (t.exps[v] != 0 && ring_.jet_of(v)) return false;
      return true;
  }
  return false;
}

bool RingElement::is_unit() const {
  if (ring_.is_series()) {
    if (prec_ < 1 || coeffs_.empty()) return false;
    return coeffs_[0].is_constant() && !coeffs_[0].is_zero();
  }
  return poly_.is_constant() && !poly_.is_zero();
}

RingElement RingElement::operator-() const {
  RingElement r = *this;
  r.poly_ = -r.poly_;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RingElement& RingElement::operator+=(const RingElement& other) {
  require_same(*this, other);
  if (!ring_.is_series()) {
    poly_ += other.poly_;
    return *this;
  }
  prec_ = std::min(prec_, other.prec_);
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Poly(ring_.nvars()));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  normalize();
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& other) {
  require_same(*this, other);
  if (!ring_.is_series()) {
    poly_ -= other.poly_;
    return *this;
  }
  prec_ = std::min(prec_, other.prec_);
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Poly(ring_.nvars()));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  normalize();
  return *this;
}

RingElement& RingElement::operator*=(const Rational& s) {
  if (!ring_.is_series()) {
    poly_ *= s;
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  normalize();
  return *this;
}

RingElement& RingElement::operator*=(const RingElement& other) {
  require_same(*this, other);
  if (!ring_.is_series()) {
    poly_ = poly_ * other.poly_;
    return *this;
  }
  // Known modulo x^p with p = min(pa + vb, pb + va).
  const auto va = valuation();
  const auto vb = other.valuation();
  const int pa = prec_, pb = other.prec_;
  int prec = std::min(prec_add(pa, vb ? *vb : pb), prec_add(pb, va ? *va : pa));
  std::size_t len = coeffs_.empty() || other.coeffs_.empty() ? 0 : coeffs_.size() + other.coeffs_.size() - 1;
  // Exact products that spill past the cap become truncations at the cap.
  if (prec == kExact && len > static_cast<std::size_t>(ring_.precision())) prec = ring_.precision();
  if (prec != kExact) {
    prec = std::min(prec, ring_.precision());
    len = std::min(len, static_cast<std::size_t>(prec));
  }
  std::vector<Poly> out(len, Poly(ring_.nvars()));
  for (std::size_t i = 0; i < coeffs_.size() && i < len; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < other.coeffs_.size() && i + j < len; ++j) {
      if (other.coeffs_[j].is_zero()) continue;
      out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  prec_ = prec;
  normalize();
  return *this;
}

bool RingElement::operator==(const RingElement& other) const {
  return ring_ == other.ring_ && prec_ == other.prec_ && poly_ == other.poly_ && coeffs_ == other.coeffs_;
}

RingElement RingElement::derive() const {
  switch (ring_.kind()) {
    case RingKind::Rationals:
    case RingKind::Polynomial: return ring_.zero();
    case RingKind::XPowerSeries: {
      std::vector<Poly> out;
      for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
      return from_series(ring_, std::move(out), prec_ == kExact ? kExact : prec_ - 1);
    }
    case RingKind::DiffPolynomial: {
      Poly out(ring_.nvars());
      for (const auto& t : poly_.terms()) {
        for (std::size_t v = 0; v < t.exps.size(); ++v) {
          if (t.exps[v] == 0) continue;
          auto jet = ring_.jet_of(v);
          if (!jet) continue;
          if (jet->second >= ring_.max_jet())
            fail(ErrorKind::JetOrderExceeded,
                 "derivative needs jet order " + std::to_string(jet->second + 1) + " beyond bound " +
                     std::to_string(ring_.max_jet()));
          Exponents e = t.exps;
          e[v] -= 1;
          e[ring_.jet_index(jet->first, jet->second + 1)] += 1;
          out.add_term(e, t.coeff * t.exps[v]);
        }
      }
      return from_poly(ring_, std::move(out));
    }
  }
  return *this;
}

RingElement RingElement::derive(int times) const {
  RingElement r = *this;
  for (int k = 0; k < times; ++k) r = r.derive();
  return r;
}

RingElement RingElement::integrate_zero() const {
  if (!ring_.is_series())
    fail(ErrorKind::UnsupportedRing, "formal integration needs an x-power-series ring");
  std::vector<Poly> out(coeffs_.size() + 1, Poly(ring_.nvars()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    out[i + 1] = coeffs_[i] * Rational(1, static_cast<unsigned long>(i + 1));
  return from_series(ring_, std::move(out), prec_add(prec_, 1));
}

RingElement RingElement::eval_at_zero() const {
  if (!ring_.is_series()) fail(ErrorKind::UnsupportedRing, "evaluation at x = 0 needs an x-power-series ring");
  if (prec_ < 1) fail(ErrorKind::ZeroPrecision, "constant term unknown (precision 0)");
  return from_poly(ring_.base(), coeffs_.empty() ? Poly(ring_.nvars()) : coeffs_[0]);
}

RingElement RingElement::x_coeff(int i) const {
  if (!ring_.is_series()) fail(ErrorKind::UnsupportedRing, "x-coefficients need an x-power-series ring");
  if (i < 0) return ring_.base().zero();
  if (i >= prec_) fail(ErrorKind::ZeroPrecision, "coefficient of x^" + std::to_string(i) + " is unknown");
  if (static_cast<std::size_t>(i) >= coeffs_.size()) return ring_.base().zero();
  return from_poly(ring_.base(), coeffs_[static_cast<std::size_t>(i)]);
}

std::optional<int> RingElement::valuation() const {
  if (!ring_.is_series()) return poly_.is_zero() ? std::nullopt : std::optional<int>(0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<Rational> RingElement::as_rational() const {
  if (ring_.is_series()) {
    if (prec_ != kExact || coeffs_.size() > 1) return std::nullopt;
    if (coeffs_.empty()) return Rational(0);
    if (!coeffs_[0].is_constant()) return std::nullopt;
    return coeffs_[0].constant_term();
  }
  if (!poly_.is_constant()) return std::nullopt;
  return poly_.constant_term();
}

RingElement RingElement::inverse() const {
  if (!is_unit()) {
    if (ring_.is_series() && prec_ < 1) fail(ErrorKind::ZeroPrecision, "constant term unknown");
    fail(ErrorKind::NonUnit, "element " + to_string() + " is not a unit");
  }
  if (!ring_.is_series()) return from_poly(ring_, Poly::constant(ring_.nvars(), 1 / poly_.constant_term()));
  const Rational inv0 = 1 / coeffs_[0].constant_term();
  if (prec_ == kExact && coeffs_.size() == 1)
    return from_series(ring_, {Poly::constant(ring_.nvars(), inv0)}, kExact);
  const int prec = std::min(prec_, ring_.precision());
  std::vector<Poly> t(static_cast<std::size_t>(prec), Poly(ring_.nvars()));
  t[0] = Poly::constant(ring_.nvars(), inv0);
  for (std::size_t n = 1; n < t.size(); ++n) {
    Poly acc(ring_.nvars());
    for (std::size_t k = 1; k <= n && k < coeffs_.size(); ++k) acc += coeffs_[k] * t[n - k];
    t[n] = acc * Rational(-inv0);
  }
  return from_series(ring_, std::move(t), prec);
}

RingElement RingElement::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  RingElement result = ring_.one();
  RingElement base = *this;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

RingElement RingElement::truncated(int prec) const {
  if (!ring_.is_series()) return *this;
  RingElement r = *this;
  r.prec_ = std::min(prec_, std::max(prec, 0));
  r.normalize();
  return r;
}

namespace {

RingElement evaluate(const Poly& p, const Ring& ring, const std::vector<RingElement>& images) {
  RingElement acc = ring.zero();
  for (const auto& t : p.terms()) {
    RingElement m = ring.from_rational(t.coeff);
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      if (t.exps[v] != 0) m *= images[v].pow(t.exps[v]);
    acc += m;
  }
  return acc;
}

}  // namespace

RingElement RingElement::substitute(const std::string& function, const RingElement& value) const {
  if (ring_.kind() != RingKind::DiffPolynomial)
    fail(ErrorKind::UnsupportedRing, "substitution of a function needs a differential polynomial ring");
  require_same(*this, value);
  const auto& fns = ring_.functions();
  auto it = std::find(fns.begin(), fns.end(), function);
  if (it == fns.end()) fail(ErrorKind::UnknownSymbol, "unknown function '" + function + "'");
  const int f = static_cast<int>(it - fns.begin());
  std::vector<RingElement> images;
  for (std::size_t v = 0; v < ring_.nvars(); ++v) {
    auto j = ring_.jet_of(v);
    if (j && j->first == f) {
      // Derivatives are only computed when actually required.
      bool used = false;
      for (const auto& t : poly_.terms()) used = used || t.exps[v] != 0;
      if (used) {
        images.push_back(value.derive(j->second));
      } else {
        images.push_back(ring_.zero());
      }
    } else {
      images.push_back(from_poly(ring_, Poly::variable(ring_.nvars(), v)));
    }
  }
  return evaluate(poly_, ring_, images);
}

RingElement RingElement::substitute_variable(const std::string& name, const RingElement& value) const {
  auto idx = ring_.variable_index(name);
  if (!idx) fail(ErrorKind::UnknownSymbol, "unknown symbol '" + name + "'");
  if (ring_.is_series()) {
    if (value.ring() != ring_.base()) fail(ErrorKind::RingMismatch, "substituted value must lie in the base ring");
    std::vector<RingElement> images;
    for (std::size_t v = 0; v < ring_.nvars(); ++v)
      images.push_back(v == *idx ? value : from_poly(ring_.base(), Poly::variable(ring_.nvars(), v)));
    std::vector<Poly> out;
    for (const auto& c : coeffs_) out.push_back(evaluate(c, ring_.base(), images).poly());
    return from_series(ring_, std::move(out), prec_);
  }
  require_same(*this, value);
  std::vector<RingElement> images;
  for (std::size_t v = 0; v < ring_.nvars(); ++v)
    images.push_back(v == *idx ? value : from_poly(ring_, Poly::variable(ring_.nvars(), v)));
  return evaluate(poly_, ring_, images);
}

// ---------------------------------------------------------------- printing

namespace {

std::string monomial_string(const Exponents& e, const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += "*";
    s += names[v];
    if (e[v] != 1) s += "^" + std::to_string(e[v]);
  }
  return s;
}

// Appends sign and body of c*mono to out; `first` controls the leading sign.
void append_term(std::string& out, const Rational& c, const std::string& mono, bool first) {
  const bool neg = c < 0;
  const Rational a = neg ? Rational(-c) : c;
  if (first) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += sato::to_string(a);
  } else if (a == 1) {
    out += mono;
  } else {
    out += sato::to_string(a) + "*" + mono;
  }
}

}  // namespace

std::string poly_to_string(const Poly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    append_term(out, t.coeff, monomial_string(t.exps, names), first);
    first = false;
  }
  return out;
}

std::string RingElement::to_string() const {
  if (!ring_.is_series()) return poly_to_string(poly_, ring_.variable_names());
  const auto& names = ring_.variable_names();
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Poly& c = coeffs_[i];
    if (c.is_zero()) continue;
    std::string xs = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
    if (c.terms().size() == 1) {
      std::string mono = monomial_string(c.terms()[0].exps, names);
      if (!xs.empty()) mono = mono.empty() ? xs : mono + "*" + xs;
      append_term(out, c.terms()[0].coeff, mono, first);
    } else {
      if (!first) out += " + ";
      out += xs.empty() ? poly_to_string(c, names) : "(" + poly_to_string(c, names) + ")*" + xs;
    }
    first = false;
  }
  if (prec_ != kExact) {
    std::string big = "O(x^" + std::to_string(prec_) + ")";
    out += first ? big : " + " + big;
  } else if (first) {
    out = "0";
  }
  return out;
}

void append_scaled_term(std::string& out, const RingElement& c, const std::string& mono, bool first) {
  const std::string s = c.to_string();
  const bool compound = s.find(" + ", 1) != std::string::npos || s.find(" - ", 1) != std::string::npos ||
                        s.find("O(") != std::string::npos;
  if (compound) {
    if (!first) out += " + ";
    out += mono.empty() ? "(" + s + ")" : "(" + s + ")*" + mono;
    return;
  }
  const bool neg = !s.empty() && s[0] == '-';
  const std::string body = neg ? s.substr(1) : s;
  if (first) {
    if (neg) out += "-";
  } else {
    out += neg ? " - " : " + ";
  }
  if (mono.empty()) {
    out += body;
  } else if (body == "1") {
    out += mono;
  } else {
    out += body + "*" + mono;
  }
}

bool equal_within_precision(const RingElement& a, const RingElement& b) { return (a - b).is_zero(); }

RingElement exp_series(const Ring& series_ring, const RingElement& c) {
  if (!series_ring.is_series()) fail(ErrorKind::UnsupportedRing, "exp needs an x-power-series ring");
  if (c.ring() != series_ring.base()) fail(ErrorKind::RingMismatch, "exp coefficient must lie in the base ring");
  if (c.is_zero()) return series_ring.one();
  const int cap = series_ring.precision();
  std::vector<Poly> out;
  Poly power = Poly::constant(series_ring.nvars(), 1);
  for (int i = 0; i < cap; ++i) {
    out.push_back(power * (1 / factorial(i)));
    power = power * c.poly();
  }
  return RingElement::from_series(series_ring, std::move(out), cap);
}

}  // namespace sato
