#include "sato/expr.hpp"

#include "sato/error.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace sato {

bool Expr::operator==(const Expr& o) const {
  return kind == o.kind && number == o.number && name == o.name && exponent == o.exponent && args == o.args &&
         minus == o.minus;
}

namespace {

Expr leaf(Expr::Kind k) {
  Expr e;
  e.kind = k;
  return e;
}

Expr wrap(Expr::Kind k, Expr inner, int exponent = 0) {
  Expr e = leaf(k);
  e.args.push_back(std::move(inner));
  e.exponent = exponent;
  return e;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }
  bool at_digit() {
    skip();
    return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
  }
  std::string digits() {
    if (!at_digit()) error("expected an integer");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  int exponent() {
    const bool neg = eat('-');
    const std::string d = digits();
    if (d.size() > 9) error("exponent too large");
    const int n = std::stoi(d);
    return neg ? -n : n;
  }

  Expr expr() {
    Expr first = eat('-') ? wrap(Expr::Kind::Negate, term()) : term();
    Expr sum = leaf(Expr::Kind::Sum);
    sum.args.push_back(std::move(first));
    for (;;) {
      if (eat('+'))
        sum.minus.push_back(false);
      else if (eat('-'))
        sum.minus.push_back(true);
      else
        break;
      sum.args.push_back(term());
    }
    return sum.args.size() == 1 ? std::move(sum.args.front()) : sum;
  }

  Expr term() {
    Expr prod = leaf(Expr::Kind::Product);
    prod.args.push_back(factor());
    while (eat('*')) prod.args.push_back(factor());
    return prod.args.size() == 1 ? std::move(prod.args.front()) : prod;
  }

  Expr factor() {
    Expr a = atom();
    if (eat('^')) return wrap(Expr::Kind::Power, std::move(a), exponent());
    return a;
  }

  Expr atom() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = digits();
      if (eat('/')) {
        const std::string den = digits();
        if (mpz_class(den) == 0) error("zero denominator");
        num += "/" + den;
      }
      Expr e = leaf(Expr::Kind::Number);
      e.number = Rational(num);
      e.number.canonicalize();
      return e;
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      while (pos_ < s_.size() && s_[pos_] == '\'') ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "x") return leaf(Expr::Kind::X);
      if (name == "D") return leaf(Expr::Kind::D);
      if (name == "O" && eat('(')) {
        Expr base = atom();
        if (base.kind != Expr::Kind::D && base.kind != Expr::Kind::Ident) error("O(...) needs D or a variable");
        const int k = eat('^') ? exponent() : 1;
        expect(')');
        return wrap(Expr::Kind::BigO, std::move(base), k);
      }
      Expr e = leaf(Expr::Kind::Ident);
      e.name = name;
      return e;
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

bool is_atom(const Expr& e) {
  using K = Expr::Kind;
  return e.kind == K::Number || e.kind == K::X || e.kind == K::D || e.kind == K::Ident || e.kind == K::BigO;
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string print_number(const Rational& q) {
  return q < 0 ? paren(to_string(q)) : to_string(q);
}

}  // namespace

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number:
      return print_number(e.number);
    case K::X:
      return "x";
    case K::D:
      return "D";
    case K::Ident:
      return e.name;
    case K::BigO: {
      std::string s = "O(" + print_expr(e.args[0]);
      if (e.exponent != 1) s += "^" + std::to_string(e.exponent);
      return s + ")";
    }
    case K::Negate: {
      const Expr& a = e.args[0];
      const std::string inner = print_expr(a);
      return "-" + ((a.kind == K::Sum || a.kind == K::Negate) ? paren(inner) : inner);
    }
    case K::Power: {
      const std::string inner = print_expr(e.args[0]);
      return (is_atom(e.args[0]) ? inner : paren(inner)) + "^" + std::to_string(e.exponent);
    }
    case K::Product: {
      std::string s;
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        const Expr& a = e.args[k];
        const std::string inner = print_expr(a);
        if (k) s += "*";
        s += (a.kind == K::Sum || a.kind == K::Negate || a.kind == K::Product) ? paren(inner) : inner;
      }
      return s;
    }
    case K::Sum: {
      std::string s;
      for (std::size_t k = 0; k < e.args.size(); ++k) {
        const Expr& a = e.args[k];
        const std::string inner = print_expr(a);
        const bool wrapped = a.kind == K::Sum || (k > 0 && a.kind == K::Negate);
        if (k) s += e.minus[k - 1] ? " - " : " + ";
        s += wrapped ? paren(inner) : inner;
      }
      return s;
    }
  }
  return {};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    const auto a = s.find_first_not_of(" \t\n");
    const auto b = s.find_last_not_of(" \t\n");
    s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    if (s.empty()) fail(ErrorKind::SyntaxError, "empty entry in list '" + text + "'");
  }
  return out;
}

namespace {

// Ring elements, jets included.
RingElement symbol(const Ring& ring, const std::string& name) {
  const auto prime = name.find('\'');
  if (prime != std::string::npos && ring.kind() == RingKind::DiffPolynomial)
    return ring.jet(name.substr(0, prime), static_cast<int>(name.size() - prime));
  return ring.variable(name);
}

// A top-level sum may end in one O(...) term; returns it and strips it.
std::optional<Expr> take_big_o(Expr& e) {
  if (e.kind == Expr::Kind::BigO) {
    Expr o = e;
    e = leaf(Expr::Kind::Number);
    return o;
  }
  if (e.kind != Expr::Kind::Sum || e.args.back().kind != Expr::Kind::BigO) return std::nullopt;
  if (e.minus.back()) fail(ErrorKind::SyntaxError, "O(...) must be added, not subtracted");
  Expr o = e.args.back();
  e.args.pop_back();
  e.minus.pop_back();
  if (e.args.size() == 1) e = Expr(e.args.front());
  return o;
}

// Shared recursion; V supplies the leaves and the arithmetic.
template <class V>
typename V::Value eval(const Expr& e, const V& v) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Number:
      return v.number(e.number);
    case K::X:
      return v.x();
    case K::D:
      return v.d(1);
    case K::Ident:
      return v.ident(e.name);
    case K::BigO:
      fail(ErrorKind::SyntaxError, "O(...) may only close a top-level sum");
    case K::Negate:
      return -eval(e.args[0], v);
    case K::Power:
      if (e.args[0].kind == K::D) return v.d(e.exponent);
      return v.power(eval(e.args[0], v), e.exponent);
    case K::Product: {
      auto acc = eval(e.args[0], v);
      for (std::size_t k = 1; k < e.args.size(); ++k) acc = acc * eval(e.args[k], v);
      return acc;
    }
    case K::Sum: {
      auto acc = eval(e.args[0], v);
      for (std::size_t k = 1; k < e.args.size(); ++k)
        acc = e.minus[k - 1] ? acc - eval(e.args[k], v) : acc + eval(e.args[k], v);
      return acc;
    }
  }
  fail(ErrorKind::SyntaxError, "malformed expression");
}

struct OperatorMode {
  using Value = PseudoOp;
  const Ring& ring;
  int depth;
  Value number(const Rational& q) const { return PseudoOp::scalar(ring.from_rational(q), depth); }
  Value x() const { return PseudoOp::scalar(ring.x(), depth); }
  Value d(int n) const { return PseudoOp::d_power(ring, n, depth); }
  Value ident(const std::string& n) const { return PseudoOp::scalar(symbol(ring, n), depth); }
  Value power(const Value& b, int n) const {
    if (n < 0) return power(invert(b), -n);
    Value acc = PseudoOp::identity(ring, depth);
    for (int k = 0; k < n; ++k) acc = acc * b;
    return acc;
  }
};

struct SeriesMode {
  using Value = Laurent;
  const Ring& ring;
  int window;
  const std::string& var;
  Value number(const Rational& q) const {
    return q == 0 ? Laurent::zero(ring, var, window) : Laurent::monomial(ring, var, ring.from_rational(q), 0, window);
  }
  Value constant(const RingElement& c) const {
    return c.is_zero() ? Laurent::zero(ring, var, window) : Laurent::monomial(ring, var, c, 0, window);
  }
  Value x() const { return constant(ring.x()); }
  Value d(int n) const { return Laurent::monomial(ring, var, ring.one(), n, std::max(window, n + 1)); }
  Value ident(const std::string& n) const { return n == var ? d(1) : constant(symbol(ring, n)); }
  Value power(const Value& b, int n) const {
    if (b.is_zero()) fail(ErrorKind::IndeterminateOrder, "power of a series that vanishes in the window");
    // Literal monomials keep the window instead of shrinking it.
    const auto& cs = b.coeffs();
    const bool monomial = b.guaranteed() >= window &&
                          std::all_of(cs.begin() + 1, cs.end(), [](const RingElement& c) { return c.is_zero(); });
    if (monomial) {
      const RingElement c = n < 0 ? b.leading().inverse().pow(-n) : b.leading().pow(n);
      const int e = b.low() * n;
      return Laurent::monomial(ring, var, c, e, std::max(window, e + 1));
    }
    return b.pow(n);
  }
};

struct ElementMode {
  using Value = RingElement;
  const Ring& ring;
  Value number(const Rational& q) const { return ring.from_rational(q); }
  Value x() const { return ring.x(); }
  Value d(int) const { fail(ErrorKind::SyntaxError, "D is not allowed in a coefficient"); }
  Value ident(const std::string& n) const { return symbol(ring, n); }
  Value power(const Value& b, int n) const { return n < 0 ? b.inverse().pow(-n) : b.pow(n); }
};

}  // namespace

PseudoOp to_operator(const Expr& e, const Ring& ring, int depth) {
  Expr body = e;
  const auto big_o = take_big_o(body);
  PseudoOp p = eval(body, OperatorMode{ring, depth});
  if (big_o) {
    if (big_o->args[0].kind != Expr::Kind::D) fail(ErrorKind::SyntaxError, "operator text truncates with O(D^k)");
    const int keep = p.top() - big_o->exponent;
    if (keep < 1) fail(ErrorKind::ZeroPrecision, "O(...) leaves no known terms");
    p = p.with_depth(keep);
  }
  return p;
}

Laurent to_series(const Expr& e, const Ring& ring, int window, const std::string& var) {
  Expr body = e;
  const auto big_o = take_big_o(body);
  Laurent s = eval(body, SeriesMode{ring, window, var});
  if (big_o) {
    const Expr& b = big_o->args[0];
    if (b.kind != Expr::Kind::D && !(b.kind == Expr::Kind::Ident && b.name == var))
      fail(ErrorKind::SyntaxError, "series text truncates with O(" + var + "^k)");
    s = s.truncated(big_o->exponent);
  }
  return s;
}

RingElement to_element(const Expr& e, const Ring& ring) { return eval(e, ElementMode{ring}); }

PseudoOp parse_operator(const std::string& text, const Ring& ring, int depth) {
  return to_operator(parse_expr(text), ring, depth);
}
Laurent parse_series(const std::string& text, const Ring& ring, int window, const std::string& var) {
  return to_series(parse_expr(text), ring, window, var);
}
RingElement parse_element(const std::string& text, const Ring& ring) { return to_element(parse_expr(text), ring); }

}  // namespace sato
