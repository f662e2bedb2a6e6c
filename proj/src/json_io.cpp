#include "sato/json_io.hpp"

#include "sato/error.hpp"

namespace sato {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::SyntaxError, "malformed JSON: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<std::string> names_field(const Json& j, const char* key) {
  if (!j.contains(key)) return {};
  const Json& v = j.at(key);
  if (!v.is_array()) bad(std::string("\"") + key + "\" must be a list of names");
  std::vector<std::string> out;
  for (const auto& n : v) {
    if (!n.is_string()) bad(std::string("\"") + key + "\" must be a list of names");
    out.push_back(n.get<std::string>());
  }
  return out;
}

Json poly_to_json(const Poly& p, const std::vector<std::string>& names) {
  Json monos = Json::array();
  for (const auto& t : p.terms()) {
    Json exps = Json::object();
    for (std::size_t v = 0; v < t.exps.size(); ++v)
      if (t.exps[v]) exps[names[v]] = t.exps[v];
    monos.push_back({{"coeffs", to_string(t.coeff)}, {"exps", exps}});
  }
  return {{"monomials", monos}};
}

Poly poly_from_json(const Json& j, const Ring& ring) {
  Poly p(ring.nvars());
  if (j.is_string() || j.is_number_integer()) {
    p.add_term(Exponents(ring.nvars(), 0), rational_from_json(j));
    return p;
  }
  for (const auto& m : field(j, "monomials")) {
    Exponents e(ring.nvars(), 0);
    if (m.contains("exps")) {
      for (const auto& [name, power] : m.at("exps").items()) {
        const auto idx = ring.variable_index(name);
        if (!idx) fail(ErrorKind::UnknownSymbol, "unknown symbol '" + name + "' in ring " + ring.describe());
        if (!power.is_number_integer() || power.get<int>() < 0) bad("exponents must be nonnegative integers");
        e[*idx] = power.get<int>();
      }
    }
    p.add_term(e, rational_from_json(field(m, "coeffs")));
  }
  return p;
}

}  // namespace

Json ring_to_json(const Ring& ring) {
  switch (ring.kind()) {
    case RingKind::Rationals:
      return {{"kind", "rationals"}};
    case RingKind::Polynomial:
      return {{"kind", "polynomial"}, {"vars", ring.variable_names()}};
    case RingKind::DiffPolynomial:
      return {{"kind", "diff_polynomial"},
              {"functions", ring.functions()},
              {"max_jet", ring.max_jet()},
              {"constants", ring.constants()}};
    case RingKind::XPowerSeries:
      return {{"kind", "x_power_series"}, {"base", ring_to_json(ring.base())}, {"precision", ring.precision()}};
  }
  return {};
}

Ring ring_from_json(const Json& j) {
  const Json& k = field(j, "kind");
  if (!k.is_string()) bad("\"kind\" must be a string");
  const std::string kind = k.get<std::string>();
  if (kind == "rationals") return Ring::rationals();
  if (kind == "polynomial") return Ring::polynomial(names_field(j, "vars"));
  if (kind == "diff_polynomial")
    return Ring::diff_polynomial(names_field(j, "functions"), int_field(j, "max_jet"), names_field(j, "constants"));
  if (kind == "x_power_series") {
    const Ring base = j.contains("base") ? ring_from_json(j.at("base")) : Ring::rationals();
    return Ring::x_power_series(base, int_field(j, "precision"));
  }
  fail(ErrorKind::UnsupportedRing, "unknown ring kind '" + kind + "'");
}

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad("rationals are written as \"p/q\" strings");
  const auto q = parse_rational(j.get<std::string>());
  if (!q) bad("'" + j.get<std::string>() + "' is not a rational");
  return *q;
}

Json element_to_json(const RingElement& e) {
  const auto& names = e.ring().variable_names();
  if (!e.ring().is_series()) return poly_to_json(e.poly(), names);
  Json coeffs = Json::array();
  for (const auto& c : e.series_coeffs()) coeffs.push_back(poly_to_json(c, names));
  return {{"coeffs", coeffs}, {"prec", e.is_exact() ? Json(nullptr) : Json(e.precision())}};
}

RingElement element_from_json(const Json& j, const Ring& ring) {
  if (!ring.is_series()) return RingElement::from_poly(ring, poly_from_json(j, ring));
  if (j.is_string() || j.is_number_integer()) return ring.from_rational(rational_from_json(j));
  std::vector<Poly> coeffs;
  for (const auto& c : field(j, "coeffs")) coeffs.push_back(poly_from_json(c, ring.base()));
  int prec = kExact;
  if (j.contains("prec") && !j.at("prec").is_null()) prec = int_field(j, "prec");
  return RingElement::from_series(ring, std::move(coeffs), prec);
}

Json series_to_json(const Laurent& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(element_to_json(c));
  return {{"ring", ring_to_json(s.ring())},
          {"var", s.var()},
          {"low", s.low()},
          {"coeffs", coeffs},
          {"guaranteed", s.guaranteed()}};
}

Laurent series_from_json(const Json& j, const Ring& fallback) {
  const Ring ring = j.contains("ring") ? ring_from_json(j.at("ring")) : fallback;
  const std::string var = j.contains("var") ? j.at("var").get<std::string>() : "y";
  std::vector<RingElement> coeffs;
  for (const auto& c : field(j, "coeffs")) coeffs.push_back(element_from_json(c, ring));
  return Laurent(ring, var, int_field(j, "low"), std::move(coeffs), int_field(j, "guaranteed"));
}

Json operator_to_json(const PseudoOp& p) {
  Json terms = Json::array(), prec = Json::array();
  for (const auto& t : p.terms()) {
    terms.push_back(element_to_json(t));
    prec.push_back(t.is_exact() ? Json(nullptr) : Json(t.precision()));
  }
  return {{"ring", ring_to_json(p.ring())}, {"top_order", p.top()}, {"terms", terms}, {"prec", prec}};
}

PseudoOp operator_from_json(const Json& j, const Ring& fallback) {
  const Ring ring = j.contains("ring") ? ring_from_json(j.at("ring")) : fallback;
  std::vector<RingElement> terms;
  for (const auto& t : field(j, "terms")) terms.push_back(element_from_json(t, ring));
  if (terms.empty()) bad("an operator needs at least one term");
  return PseudoOp(ring, int_field(j, "top_order"), std::move(terms));
}

Json pair_to_json(const SchurPair& p) {
  Json gens = Json::array(), rows = Json::array();
  for (const auto& g : p.algebra.generators) gens.push_back(series_to_json(g));
  for (const auto& r : p.space.rows) rows.push_back(series_to_json(r));
  return {{"A", {{"generators", gens}}},
          {"W", {{"rows", rows}}},
          {"rank", p.rank},
          {"level", p.level},
          {"index", p.index}};
}

SchurPair pair_from_json(const Json& j, const Ring& fallback) {
  SchurPair p;
  for (const auto& g : field(field(j, "A"), "generators")) p.algebra.generators.push_back(series_from_json(g, fallback));
  for (const auto& r : field(field(j, "W"), "rows")) p.space.rows.push_back(series_from_json(r, fallback));
  p.rank = j.contains("rank") ? int_field(j, "rank") : 1;
  p.algebra.rank = p.rank;
  p.level = j.contains("level") ? int_field(j, "level") : -1;
  p.index = j.contains("index") ? int_field(j, "index") : 0;
  return p;
}

}  // namespace sato
