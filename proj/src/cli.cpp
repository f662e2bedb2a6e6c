#include "sato/cli.hpp"

#include "sato/curvelab.hpp"
#include "sato/error.hpp"
#include "sato/expr.hpp"
#include "sato/json_io.hpp"
#include "sato/normalize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace sato {

namespace {

struct Options {
  int depth = 16;
  int xprec = 16;
  std::string ring;      // JSON descriptor
  std::string json_out;  // path, or "-" for stdout
  std::string as;        // "series" | "operator"; empty means the command's default
};

struct Output {
  std::string text;
  Json json;
};

class Session {
 public:
  explicit Session(const Options& o) : opt_(o) {
    if (opt_.depth < 1) fail(ErrorKind::InvalidArgument, "--depth must be positive");
    if (opt_.xprec < 1) fail(ErrorKind::InvalidArgument, "--xprec must be positive");
    if (!opt_.ring.empty()) {
      Json j;
      try {
        j = Json::parse(opt_.ring);
      } catch (const Json::exception& e) {
        fail(ErrorKind::SyntaxError, std::string("--ring is not JSON: ") + e.what());
      }
      op_ring_ = ring_from_json(j);
    } else {
      op_ring_ = Ring::x_power_series(Ring::rationals(), opt_.xprec);
    }
  }

  const Options& opt() const { return opt_; }
  // Coefficients of operators; series in y live over its base.
  const Ring& op_ring() const { return op_ring_; }
  const Ring& series_ring() const { return op_ring_.base(); }

  bool as_series(bool fallback) const {
    if (opt_.as.empty()) return fallback;
    return opt_.as == "series";
  }

  PseudoOp op(const std::string& text) const { return parse_operator(text, op_ring_, opt_.depth); }
  Laurent series(const std::string& text) const { return parse_series(text, series_ring(), opt_.depth); }
  std::vector<PseudoOp> ops(const std::string& list) const {
    std::vector<PseudoOp> out;
    for (const auto& t : split_list(list)) out.push_back(op(t));
    return out;
  }
  std::vector<Laurent> serieses(const std::string& list) const {
    std::vector<Laurent> out;
    for (const auto& t : split_list(list)) out.push_back(series(t));
    return out;
  }

 private:
  Options opt_;
  Ring op_ring_;
};

Output of(const PseudoOp& p) { return {p.to_string(), operator_to_json(p)}; }
Output of(const Laurent& s) { return {s.to_string(), series_to_json(s)}; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorKind::SyntaxError, "'" + path + "' is not JSON: " + e.what());
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + std::to_string(v[k]);
  return s + "]";
}

std::string pair_text(const SchurPair& p) {
  std::ostringstream o;
  o << "A:\n";
  for (const auto& g : p.algebra.generators) o << "  " << g.to_string() << "\n";
  o << "W:\n";
  for (const auto& r : p.space.rows) o << "  " << r.to_string() << "\n";
  o << "rank " << p.rank << ", level " << p.level << ", index " << p.index;
  return o.str();
}

// ---- commands ---------------------------------------------------------------

Output cmd_mul(const Session& s, const std::vector<std::string>& args) {
  if (args.size() < 2) fail(ErrorKind::InvalidArgument, "mul needs at least two factors");
  if (s.as_series(false)) {
    Laurent acc = s.series(args[0]);
    for (std::size_t k = 1; k < args.size(); ++k) acc = multiply(acc, s.series(args[k]));
    return of(acc);
  }
  PseudoOp acc = s.op(args[0]);
  for (std::size_t k = 1; k < args.size(); ++k) acc = multiply(acc, s.op(args[k]));
  return of(acc);
}

Output cmd_invert(const Session& s, const std::string& a) {
  if (s.as_series(false)) return of(invert(s.series(a)));
  return of(invert(s.op(a)));
}

Output cmd_conjugate(const Session& s, const std::string& a, std::optional<int> power, const std::string& by) {
  const PseudoOp L = s.op(a);
  if (!by.empty()) {
    const RingElement f = parse_element(by, s.op_ring());
    return of(conjugate_by_unit(L, f));
  }
  const int N = power ? *power : L.order();
  const ConjugationResult r = conjugator_to_power(L, N);
  const bool ok = r.residual.is_zero();
  Output out;
  out.text = "conjugator: " + r.conjugator.to_string() + "\nresidual: " + r.residual.to_string() +
             "\nnormalization: " + r.normalization + "\nX^-1 L X = D^" + std::to_string(N) +
             (ok ? " within precision" : " FAILS");
  out.json = {{"conjugator", operator_to_json(r.conjugator)},
              {"residual", operator_to_json(r.residual)},
              {"normalization", r.normalization},
              {"power", N},
              {"verified", ok}};
  return out;
}

Output cmd_act(const Session& s, const std::string& p, const std::string& v) {
  return of(act(s.op(p), s.series(v)));
}

Output cmd_root(const Session& s, const std::string& a, int n) { return of(nth_root(s.series(a), n)); }

Output cmd_schur_extract(const Session& s, const std::string& gens, int product_length) {
  const Extraction e = mu_forward(s.ops(gens), product_length);
  SchurPair pair = e.pair;
  if (pair.space.rows.empty()) fail(ErrorKind::WindowTooSmall, "no rows in the window");
  Output out;
  out.text = pair_text(pair) + "\nsato operator: " + e.sato_operator.to_string() + "\ngauge: " + e.gauge.to_string();
  out.json = {{"pair", pair_to_json(pair)},
              {"sato_operator", operator_to_json(e.sato_operator)},
              {"gauge", element_to_json(e.gauge)}};
  return out;
}

SchurPair load_pair(const Session& s, const std::string& path) {
  Json j = read_json_file(path);
  if (j.contains("pair")) j = j.at("pair");  // output of `schur extract`
  return pair_from_json(j, s.series_ring());
}

Output cmd_schur_rebuild(const Session& s, const std::string& path) {
  const auto ops = mu_inverse(load_pair(s, path), s.op_ring());
  Output out;
  out.json = Json::array();
  for (const auto& p : ops) {
    out.text += (out.text.empty() ? "" : "\n") + p.to_string();
    out.json.push_back(operator_to_json(p));
  }
  return out;
}

Output cmd_schur_validate(const Session& s, const std::string& path) {
  const PairReport r = validate_pair(load_pair(s, path));
  Output out;
  out.text = r.valid() ? "valid" : "invalid";
  for (const auto& p : r.problems) out.text += "\n  " + p;
  out.json = {{"valid", r.valid()},
              {"stable", r.stable},
              {"trivial_intersection", r.trivial_intersection},
              {"rank_matches", r.rank_matches},
              {"problems", r.problems}};
  return out;
}

Output cmd_schur_index(const Session& s, const std::string& path, std::optional<int> level) {
  const SchurPair p = load_pair(s, path);
  const int lv = level ? *level : p.level;
  const int idx = index_of(p.space, lv);
  const auto N = is_strongly_semistable(p.space, lv, p.rank);
  Output out;
  out.text = "index " + std::to_string(idx) + "\nstrongly semistable: " + (N ? "yes, N = " + std::to_string(*N) : "no");
  out.json = {{"index", idx}, {"level", lv}, {"semistable", N ? Json(*N) : Json(nullptr)}};
  return out;
}

Output cmd_kdv_system() {
  const KdvSystem sys = kdv_system();
  const KdvElimination el = kdv_eliminate(sys);
  Output out;
  std::ostringstream o;
  o << "L = " << sys.L.differential_part(1).to_string() << "\nP = " << sys.P.differential_part(1).to_string() << "\n";
  o << "[P, L] coefficients (D^3 .. D^0):\n";
  Json coeffs = Json::array(), reduced = Json::array();
  for (std::size_t k = 0; k < 4; ++k) {
    o << "  D^" << 3 - k << ": " << sys.commutator[k].to_string() << "\n";
    coeffs.push_back(sys.commutator[k].to_string());
  }
  o << "[P, L] = " << sys.sign << " * (displayed system)\n";
  o << "after eliminating alpha, v, gamma:\n";
  for (std::size_t k = 0; k < 4; ++k) {
    o << "  (" << k + 1 << ") " << el.reduced[k].to_string() << "\n";
    reduced.push_back(el.reduced[k].to_string());
  }
  const bool matches = el.reduced[3] == kdv_residual(-el.beta);
  o << "last equation = kdv_residual(-beta): " << (matches ? "yes" : "no");
  out.text = o.str();
  out.json = {{"commutator", coeffs}, {"sign", sys.sign}, {"reduced", reduced}, {"residual_of_minus_beta", matches}};
  return out;
}

Output cmd_kdv_residual(const Session& s, const std::string& beta) {
  const RingElement r = kdv_residual(parse_element(beta, s.op_ring()));
  return {r.to_string(), element_to_json(r)};
}

Output cmd_elliptic(const Session& s) {
  const EllipticLocalData d = elliptic_family(s.opt().depth);
  Output out;
  out.text = d.report();
  if (!out.text.empty() && out.text.back() == '\n') out.text.pop_back();
  Json checks = Json::array();
  for (const auto& [name, ok] : d.checks) checks.push_back({{"identity", name}, {"holds", ok}});
  out.json = {{"y0", series_to_json(d.y0_series)},
              {"alpha", series_to_json(d.alpha_series)},
              {"y1_of_alpha", series_to_json(d.y1_of_alpha)},
              {"inv_y1_sq", series_to_json(d.inv_y1_sq)},
              {"gen1", series_to_json(d.gen1)},
              {"gen2", series_to_json(d.gen2)},
              {"passes", d.passes},
              {"checks", checks},
              {"all_hold", d.all_hold()}};
  return out;
}

Output cmd_cubic(const Session& s, const std::string& delta) {
  const SingularCubic c = singular_cubic(parse_element(delta, s.op_ring()), std::max(s.opt().depth, 4));
  const auto& g = c.algebra.generators;
  Output out;
  out.text = "tag: " + c.tag + "\ngenerators: " + g[0].to_string() + ", " + g[1].to_string();
  out.json = {{"tag", c.tag}, {"generators", {series_to_json(g[0]), series_to_json(g[1])}}};
  if (const auto rel = cubic_relation(g[0], g[1])) {
    out.text += "\nrelation: b^2 = a^3 + (" + rel->c4.to_string() + ")*a^2 + (" + rel->c3.to_string() + ")*b + (" +
                rel->c2.to_string() + ")*a + (" + rel->c0.to_string() + ")";
    out.json["relation"] = {{"c4", element_to_json(rel->c4)},
                            {"c3", element_to_json(rel->c3)},
                            {"c2", element_to_json(rel->c2)},
                            {"c0", element_to_json(rel->c0)}};
    if (rel->c4.as_rational() && rel->c3.as_rational() && rel->c2.as_rational() && rel->c0.as_rational()) {
      const Rational disc = cubic_discriminant(*rel);
      out.text += "\ndiscriminant: " + to_string(disc);
      out.json["discriminant"] = rational_to_json(disc);
    }
  }
  return out;
}

Output cmd_genus(const Session& s, const std::string& gens, std::optional<int> bound) {
  PureRankAlgebra A;
  if (s.as_series(true)) {
    A.generators = s.serieses(gens);
  } else {
    for (const auto& p : s.ops(gens)) A.generators.push_back(sigma(p));
  }
  int top = 1;
  for (const auto& g : A.generators)
    if (!g.is_zero()) top = std::max(top, g.order());
  const GapProfile g = gap_genus(A, bound ? *bound : 2 * top * top + 2);
  Output out;
  out.text = "genus " + std::to_string(g.genus) + "\ngaps " + join_ints(g.gaps) + "\nconductor " +
             std::to_string(g.conductor);
  out.json = {{"genus", g.genus}, {"gaps", g.gaps}, {"conductor", g.conductor}, {"achievable", g.achievable}};
  return out;
}

void emit(const Output& r, const Options& o, std::ostream& out) {
  if (!r.text.empty()) out << r.text << "\n";
  if (o.json_out.empty()) return;
  const std::string body = r.json.dump(2) + "\n";
  if (o.json_out == "-") {
    out << body;
    return;
  }
  std::ofstream f(o.json_out, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + o.json_out + "'");
  f << body;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with pseudo-differential operators and Schur pairs", "sato"};
  app.fallthrough();
  app.require_subcommand(1);
  Options opt;
  app.add_option("--depth", opt.depth, "operator depth and series window")->capture_default_str();
  app.add_option("--xprec", opt.xprec, "x-precision of the default coefficient ring")->capture_default_str();
  app.add_option("--ring", opt.ring, "coefficient ring as JSON");
  app.add_option("--json-out", opt.json_out, "write JSON output to a file ('-' for stdout)");
  app.add_option("--as", opt.as, "read expressions as series or operators")
      ->check(CLI::IsMember({"series", "operator"}));

  std::function<Output(const Session&)> action;
  auto on = [&](CLI::App* sub, std::function<Output(const Session&)> f) {
    sub->callback([&action, f = std::move(f)] { action = f; });
  };

  std::vector<std::string> exprs;
  std::string a, b, by, gens, path, beta, delta;
  int n = 0, product_length = 3;
  std::optional<int> power, level, bound;

  auto* mul = app.add_subcommand("mul", "product of operators (or series with --as series)");
  mul->add_option("factors", exprs)->required();
  on(mul, [&](const Session& s) { return cmd_mul(s, exprs); });

  auto* inv = app.add_subcommand("invert", "inverse of an operator with unit leading coefficient");
  inv->add_option("expr", a)->required();
  on(inv, [&](const Session& s) { return cmd_invert(s, a); });

  auto* conj = app.add_subcommand("conjugate", "X with X^-1 L X = D^N, or f L f^-1 with --by");
  conj->add_option("expr", a)->required();
  conj->add_option("--power", power, "N (default: the order of L)");
  conj->add_option("--by", by, "unit x-series f");
  on(conj, [&](const Session& s) { return cmd_conjugate(s, a, power, by); });

  auto* sig = app.add_subcommand("sigma", "symbol of an operator as a series in y");
  sig->add_option("expr", a)->required();
  on(sig, [&](const Session& s) { return of(sigma(s.op(a))); });

  auto* ac = app.add_subcommand("act", "right action of an operator on a series in y");
  ac->add_option("operator", a)->required();
  ac->add_option("series", b)->required();
  on(ac, [&](const Session& s) { return cmd_act(s, a, b); });

  auto* com = app.add_subcommand("commutator", "[A, B] = AB - BA");
  com->add_option("A", a)->required();
  com->add_option("B", b)->required();
  on(com, [&](const Session& s) { return of(commutator(s.op(a), s.op(b))); });

  auto* root = app.add_subcommand("root", "monic n-th root of a series in y");
  root->add_option("series", a)->required();
  root->add_option("--n", n, "root degree")->required();
  on(root, [&](const Session& s) { return cmd_root(s, a, n); });

  auto* comp = app.add_subcommand("compose", "f(g) for series in y");
  comp->add_option("f", a)->required();
  comp->add_option("g", b)->required();
  on(comp, [&](const Session& s) { return of(compose(s.series(a), s.series(b))); });

  auto* rev = app.add_subcommand("revert", "compositional inverse of a series in y");
  rev->add_option("f", a)->required();
  on(rev, [&](const Session& s) { return of(revert(s.series(a))); });

  auto* schur = app.add_subcommand("schur", "Schur pairs");
  schur->require_subcommand(1);
  auto* ext = schur->add_subcommand("extract", "commuting operators -> Schur pair");
  ext->add_option("--gens", gens, "comma-separated operators")->required();
  ext->add_option("--product-length", product_length, "search length for a monic element")->capture_default_str();
  on(ext, [&](const Session& s) { return cmd_schur_extract(s, gens, product_length); });
  auto* reb = schur->add_subcommand("rebuild", "Schur pair -> operators");
  reb->add_option("--pair", path, "pair JSON file")->required();
  on(reb, [&](const Session& s) { return cmd_schur_rebuild(s, path); });
  auto* val = schur->add_subcommand("validate", "check the Schur pair conditions");
  val->add_option("--pair", path, "pair JSON file")->required();
  on(val, [&](const Session& s) { return cmd_schur_validate(s, path); });
  auto* idx = schur->add_subcommand("index", "index and semistability of W");
  idx->add_option("--pair", path, "pair JSON file")->required();
  idx->add_option("--level", level, "level (default: the pair's)");
  on(idx, [&](const Session& s) { return cmd_schur_index(s, path, level); });

  auto* kdv = app.add_subcommand("kdv", "stationary KdV from an order 2/3 commuting pair");
  kdv->require_subcommand(1);
  auto* ksys = kdv->add_subcommand("system", "commutator coefficients and elimination");
  on(ksys, [](const Session&) { return cmd_kdv_system(); });
  auto* kres = kdv->add_subcommand("residual", "(1/6) b''' - (2/3) b b'");
  kres->add_option("--beta", beta, "coefficient expression")->required();
  on(kres, [&](const Session& s) { return cmd_kdv_residual(s, beta); });

  auto* ell = app.add_subcommand("elliptic", "local expansion of y0 = y1^3 + A y0^2 y1 + B y0^3");
  on(ell, [](const Session& s) { return cmd_elliptic(s); });

  auto* cub = app.add_subcommand("cubic", "the algebra Q[y^-2, y^-3 + delta y^-1]");
  cub->add_option("--delta", delta, "constant")->required();
  on(cub, [&](const Session& s) { return cmd_cubic(s, delta); });

  auto* gen = app.add_subcommand("genus", "gap sequence of a rank-one algebra");
  gen->add_option("--gens", gens, "comma-separated generators (series in y by default)")->required();
  gen->add_option("--bound", bound, "largest order examined");
  on(gen, [&](const Session& s) { return cmd_genus(s, gens, bound); });

  try {
    std::vector<std::string> rev_args(args.rbegin(), args.rend());
    app.parse(rev_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "invalid-argument: " << e.what() << "\n";
    return 2;
  }

  try {
    const Session session(opt);
    emit(action(session), opt, out);
    return 0;
  } catch (const Error& e) {
    err << e.category() << ": " << e.what() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << "syntax-error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace sato
