#include "sato/normalize.hpp"

#include "sato/error.hpp"

#include <algorithm>

namespace sato {

namespace {

void require_series_ring(const Ring& ring, const char* what) {
  if (!ring.is_series())
    fail(ErrorKind::UnsupportedRing, std::string(what) + " needs x-power-series coefficients (formal integration)");
}

const Poly& coeff_or(const std::vector<Poly>& v, std::size_t i, const Poly& zero) {
  return i < v.size() ? v[i] : zero;
}

}  // namespace

ConjugationResult conjugator_to_power(const PseudoOp& L, int N, const std::vector<RingElement>& constants) {
  const Ring& ring = L.ring();
  require_series_ring(ring, "conjugation to a power of D");
  if (N == 0) fail(ErrorKind::ZeroN, "the target power of D must be nonzero");
  if (L.order() != N)
    fail(ErrorKind::WrongOrder, "operator has order " + std::to_string(L.order()) + ", expected " + std::to_string(N));
  if (!L.is_monic()) fail(ErrorKind::NotMonic, "conjugation to D^N needs a monic operator");

  const std::size_t nv = ring.nvars();
  const Poly zero(nv);
  const int cap = ring.precision();
  const int known = N - L.bottom();  // u_m is known for m <= known
  if (known < 1) fail(ErrorKind::DepthTooSmall, "operator window too short to determine a conjugator");

  auto u = [&](int m) { return L.coeff(N - m); };
  const RingElement u1 = u(1);
  const Rational invN = Rational(1) / N;

  std::vector<RingElement> s;
  std::vector<std::vector<RingElement>> jets;  // jets[k][i] = s_k^(i)
  auto jet = [&](std::size_t k, std::size_t i) -> const RingElement& {
    auto& row = jets[k];
    while (row.size() <= i) row.push_back(row.back().derive());
    return row[i];
  };

  bool default_constants = true;
  for (int t = 0; t < known; ++t) {
    RingElement c = ring.base().zero();
    if (static_cast<std::size_t>(t) < constants.size()) {
      c = constants[static_cast<std::size_t>(t)];
      if (c.ring() != ring.base()) fail(ErrorKind::RingMismatch, "integration constants must lie in the base ring");
      default_constants = default_constants && (t == 0 ? c.is_one() : c.is_zero());
    } else if (t == 0) {
      c = ring.base().one();
    }
    if (t == 0 && !c.is_unit()) fail(ErrorKind::NonUnit, "the leading integration constant must be a unit");

    // Coefficient of D^(N-t-1) in L X - X D^N:
    //   N s_t' + u_1 s_t + sum_{m+i+k = t+1, k < t} C(N-m, i) u_m s_k^(i) = 0.
    RingElement P = ring.zero();
    for (int k = 0; k < t; ++k) {
      for (int m = 0; m <= t + 1 - k; ++m) {
        const int i = t + 1 - m - k;
        const Integer b = binomial(N - m, i);
        if (b == 0) continue;
        const RingElement um = u(m);
        if (um.is_exact_zero()) continue;
        const RingElement& sk = jet(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
        if (sk.is_exact_zero()) continue;
        P -= (um * sk) * Rational(b);
      }
    }

    // s' = -(1/N) u_1 s + (1/N) P, solved coefficientwise from s(0) = c.
    RingElement st;
    if (u1.is_exact_zero() && P.is_exact()) {
      st = ring.lift(c) + (P * invN).integrate_zero();
    } else {
      const int p = std::min(P.precision(), u1.precision());
      const int target = p == kExact ? cap : std::min(prec_add(p, 1), cap);
      const auto& uc = u1.series_coeffs();
      const auto& pc = P.series_coeffs();
      std::vector<Poly> sc(static_cast<std::size_t>(std::max(target, 1)), zero);
      sc[0] = c.poly();
      for (int n = 0; n + 1 < target; ++n) {
        Poly acc = coeff_or(pc, static_cast<std::size_t>(n), zero);
        for (int j = 0; j <= n; ++j) {
          const Poly& a = coeff_or(uc, static_cast<std::size_t>(n - j), zero);
          if (a.is_zero() || sc[static_cast<std::size_t>(j)].is_zero()) continue;
          acc -= a * sc[static_cast<std::size_t>(j)];
        }
        sc[static_cast<std::size_t>(n + 1)] = acc * (invN / (n + 1));
      }
      st = RingElement::from_series(ring, std::move(sc), target);
    }
    s.push_back(st);
    jets.push_back({st});
  }

  PseudoOp X(ring, 0, s);
  PseudoOp residual = invert(X) * L * X - PseudoOp::d_power(ring, N, X.depth());
  return {X, residual, default_constants ? "s0(0)=1, sl(0)=0" : "custom integration constants"};
}

PseudoOp uniqueness_defect(const PseudoOp& x1, const PseudoOp& x2) { return invert(x1) * x2; }

AdmissibilityReport admissibility(const PseudoOp& T) {
  const Ring& ring = T.ring();
  require_series_ring(ring, "admissibility");
  if (T.order() != 0) fail(ErrorKind::WrongOrder, "admissible operators have order 0");
  if (!T.leading().is_unit()) fail(ErrorKind::NonUnitLeading, "leading coefficient is not a unit");

  AdmissibilityReport report;
  const PseudoOp conj = T * PseudoOp::d_power(ring, 1, T.depth()) * invert(T);
  report.constant_conjugate = conj.has_constant_coefficients();

  const RingElement t0 = T.coeff(0);
  report.exponent = ring.base().zero();
  if (t0.precision() >= 2) report.exponent = t0.x_coeff(1) * t0.x_coeff(0).inverse();
  const RingElement e = exp_series(ring, -report.exponent);
  report.structural = true;
  for (int i = 0; i < T.depth(); ++i) {
    const RingElement f = e * T.coeff(-i);
    if (static_cast<int>(f.series_coeffs().size()) > i + 1) {
      report.structural = false;
      break;
    }
  }
  return report;
}

bool is_admissible(const PseudoOp& T) { return admissibility(T).constant_conjugate; }

PseudoOp admissible_root(const Laurent& v, int r, const Ring& ring) {
  if (r == 0) fail(ErrorKind::ZeroN, "r must be nonzero");
  require_series_ring(ring, "admissible roots");
  if (v.order() != -r)
    fail(ErrorKind::WrongOrder, "symbol has order " + std::to_string(v.order()) + ", expected " + std::to_string(-r));
  if (!v.is_monic()) fail(ErrorKind::NotMonic, "admissible_root needs a monic symbol");
  return conjugator_to_power(lift(v, ring), -r).conjugator;
}

RingElement gauge_first_order(const RingElement& u) {
  const Ring& ring = u.ring();
  require_series_ring(ring, "the first-order gauge");
  if (u.is_exact_zero()) return ring.one();
  const std::size_t nv = ring.nvars();
  const Poly zero(nv);
  const int p = u.precision();
  const int target = p == kExact ? ring.precision() : std::min(p + 1, ring.precision());
  const auto& uc = u.series_coeffs();
  // f_{i+1} = 1/(i+1) sum_{j<=i} f_j u_{i-j}
  std::vector<Poly> f(static_cast<std::size_t>(target), zero);
  f[0] = Poly::constant(nv, 1);
  for (int i = 0; i + 1 < target; ++i) {
    Poly acc(nv);
    for (int j = 0; j <= i; ++j) {
      const Poly& a = coeff_or(uc, static_cast<std::size_t>(i - j), zero);
      if (a.is_zero() || f[static_cast<std::size_t>(j)].is_zero()) continue;
      acc += f[static_cast<std::size_t>(j)] * a;
    }
    f[static_cast<std::size_t>(i + 1)] = acc * Rational(1, static_cast<unsigned long>(i + 1));
  }
  return RingElement::from_series(ring, std::move(f), target);
}

PseudoOp conjugate_by_unit(const PseudoOp& P, const RingElement& f) {
  if (f.ring() != P.ring()) fail(ErrorKind::RingMismatch, "unit outside the operator's ring");
  if (!f.is_unit()) fail(ErrorKind::NonUnit, "conjugation needs a unit, got " + f.to_string());
  return PseudoOp::scalar(f, P.depth()) * P * PseudoOp::scalar(f.inverse(), P.depth());
}

}  // namespace sato
