#include "pullback/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace pullback {

namespace {

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
}

void require_rational_coeffs(const RatFunc& g, const char* what) {
  if (g.num.k->kind() != Field::Kind::Rationals)
    fail(ErrorKind::FieldMismatch,
         std::string(what) + " requires rational coefficients");
}

// Coefficients of p as complex numbers, low degree first.
std::vector<Cx> complex_coeffs(const Poly& p) {
  std::vector<Cx> out;
  out.reserve(p.c.size());
  for (const Value& v : p.c) out.push_back(cx_from_rat(v.rat));
  return out;
}

Cx horner(const std::vector<Cx>& coeffs, const Cx& z) {
  Cx acc = cx(Real(0), Real(0));
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = cadd(cmul(acc, z), *it);
  return acc;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned bits)
    : saved_digits10_(Real::default_precision()) {
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionScope::~PrecisionScope() {
  Real::default_precision(saved_digits10_);
}

Cx cx(const Real& re, const Real& im) { return Cx{re, im}; }

Cx cx_from_rat(const Rat& r) {
  Real re(numerator(r));
  re /= Real(denominator(r));
  return Cx{re, Real(0)};
}

Cx cadd(const Cx& a, const Cx& b) { return Cx{a.re + b.re, a.im + b.im}; }
Cx csub(const Cx& a, const Cx& b) { return Cx{a.re - b.re, a.im - b.im}; }
Cx cmul(const Cx& a, const Cx& b) {
  return Cx{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cx cdiv(const Cx& a, const Cx& b) {
  Real d = b.re * b.re + b.im * b.im;
  if (d == 0) fail(ErrorKind::DivisionByZero, "complex division by zero");
  return Cx{(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Cx cneg(const Cx& a) { return Cx{-a.re, -a.im}; }
Real cabs(const Cx& a) {
  return boost::multiprecision::sqrt(a.re * a.re + a.im * a.im);
}

std::string cx_to_string(const Cx& a, unsigned digits) {
  return "(" + a.re.str(digits) + ", " + a.im.str(digits) + ")";
}

std::vector<Cx> croots(std::vector<Cx> coeffs, unsigned bits) {
  PrecisionScope scope(bits);
  while (!coeffs.empty() && cabs(coeffs.back()) == 0) coeffs.pop_back();
  if (coeffs.size() <= 1) return {};
  const int d = static_cast<int>(coeffs.size()) - 1;
  Cx lead = coeffs.back();
  for (Cx& c : coeffs) c = cdiv(c, lead);

  Real scale(1);
  for (int i = 0; i < d; ++i)
    scale = std::max(scale, cabs(coeffs[static_cast<size_t>(i)]));
  scale += 1;

  // Non-real, non-symmetric starting points on a spiral of radius ~scale.
  std::vector<Cx> z(static_cast<size_t>(d));
  Cx seed = cx(Real("0.4"), Real("0.9"));
  Cx cur = seed;
  for (int i = 0; i < d; ++i) {
    z[static_cast<size_t>(i)] = cmul(cur, cx(scale, Real(0)));
    cur = cmul(cur, seed);
  }

  Real eps = boost::multiprecision::ldexp(Real(1), -static_cast<int>(bits) + 8);
  const int max_iter = 2000;
  for (int iter = 0; iter < max_iter; ++iter) {
    Real worst(0);
    for (int i = 0; i < d; ++i) {
      Cx& zi = z[static_cast<size_t>(i)];
      Cx denom = cx(Real(1), Real(0));
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        denom = cmul(denom, csub(zi, z[static_cast<size_t>(j)]));
      }
      Cx delta = cdiv(horner(coeffs, zi), denom);
      zi = csub(zi, delta);
      Real rel = cabs(delta) / (Real(1) + cabs(zi));
      worst = std::max(worst, rel);
    }
    if (worst < eps) return z;
  }
  fail(ErrorKind::NumericFailure, "root iteration did not converge");
}

Cx rf_eval_numeric(const RatFunc& g, const Cx& z, unsigned bits) {
  PrecisionScope scope(bits);
  require_rational_coeffs(g, "numeric evaluation");
  Cx den = horner(complex_coeffs(g.den), z);
  if (cabs(den) == 0)
    fail(ErrorKind::DivisionByZero, "numeric evaluation at a pole");
  return cdiv(horner(complex_coeffs(g.num), z), den);
}

Cx fiber_sum_numeric(const RatFunc& g, const RatFunc& q, const Cx& z0,
                     unsigned bits) {
  PrecisionScope scope(bits);
  require_rational_coeffs(g, "the fiber-sum oracle");
  require_rational_coeffs(q, "the fiber-sum oracle");
  if (rf_is_constant(g))
    fail(ErrorKind::ConstantMap, "fiber sum needs a non-constant map");
  // Roots of P(w) - z0 Q(w).
  std::vector<Cx> pc = complex_coeffs(g.num);
  std::vector<Cx> qc = complex_coeffs(g.den);
  size_t n = std::max(pc.size(), qc.size());
  std::vector<Cx> f(n, cx(Real(0), Real(0)));
  for (size_t i = 0; i < pc.size(); ++i) f[i] = pc[i];
  for (size_t i = 0; i < qc.size(); ++i) f[i] = csub(f[i], cmul(z0, qc[i]));
  std::vector<Cx> roots = croots(f, bits);
  RatFunc gp = rf_deriv(g);
  Cx sum = cx(Real(0), Real(0));
  for (const Cx& w : roots) {
    Cx qv = rf_eval_numeric(q, w, bits);
    Cx gv = rf_eval_numeric(gp, w, bits);
    sum = cadd(sum, cdiv(qv, cmul(gv, gv)));
  }
  return sum;
}

AsymptoticResult asymptotic_constant(const RatFunc& g, const Rat& c_star,
                                     const std::vector<Rat>& u,
                                     const std::vector<Rat>& t_samples,
                                     unsigned precision_bits) {
  require_rational_coeffs(g, "asymptotic fitting");
  FieldPtr qf = Field::rationals();
  Value c = make_rat(c_star);
  if (is_zero(peval(g.den, c)))
    fail(ErrorKind::NotSimpleCritical,
         "the critical value at c_star is not finite");
  RatFunc g1 = rf_deriv(g);
  RatFunc g2 = rf_deriv(g1);
  Value g1v = div(peval(g1.num, c), peval(g1.den, c));
  if (!is_zero(g1v))
    fail(ErrorKind::NotSimpleCritical, "c_star is not a critical point");
  Value g2v = div(peval(g2.num, c), peval(g2.den, c));
  if (is_zero(g2v))
    fail(ErrorKind::NotSimpleCritical,
         "c_star is a critical point of multiplicity greater than two");
  Rat prod = 1;
  for (const Rat& ui : u) {
    if (ui == c_star)
      fail(ErrorKind::DegenerateInput, "c_star must not be a listed point");
    prod *= (c_star - ui);
  }
  if (t_samples.empty())
    fail(ErrorKind::DegenerateInput, "need at least one t sample");
  for (const Rat& t : t_samples)
    if (t <= 0)
      fail(ErrorKind::DegenerateInput, "t samples must be positive");

  Rat c_closed_rat = Rat(1) / (prod * g2v.rat);
  Value vstar = div(peval(g.num, c), peval(g.den, c));

  PrecisionScope scope(precision_bits);
  std::vector<Rat> ts = t_samples;
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  Cx cstar_cx = cx_from_rat(c_star);
  auto branch_sum = [&](const Rat& t) -> Cx {
    Rat target = vstar.rat + t;
    // Roots of P(w) - target Q(w); exact rational coefficients.
    Poly shifted = psub(g.num, pscale(g.den, from_rat(qf, target)));
    std::vector<Cx> roots = croots(complex_coeffs(shifted), precision_bits);
    if (roots.size() < 2)
      fail(ErrorKind::NumericFailure, "fewer than two fiber points found");
    std::sort(roots.begin(), roots.end(), [&](const Cx& a, const Cx& b) {
      return cabs(csub(a, cstar_cx)) < cabs(csub(b, cstar_cx));
    });
    Cx sum = cx(Real(0), Real(0));
    for (int i = 0; i < 2; ++i) {
      const Cx& w = roots[static_cast<size_t>(i)];
      Cx denom = cx(Real(1), Real(0));
      for (const Rat& ui : u) denom = cmul(denom, csub(w, cx_from_rat(ui)));
      Cx gv = rf_eval_numeric(g1, w, precision_bits);
      sum = cadd(sum, cdiv(cx(Real(1), Real(0)),
                           cmul(denom, cmul(gv, gv))));
    }
    return sum;
  };

  Cx fitted;
  if (ts.size() >= 2) {
    Cx s1 = branch_sum(ts[0]);
    Cx s2 = branch_sum(ts[1]);
    Cx inv_t1 = cx_from_rat(Rat(1) / ts[0]);
    Cx inv_t2 = cx_from_rat(Rat(1) / ts[1]);
    fitted = cdiv(csub(s1, s2), csub(inv_t1, inv_t2));
  } else {
    Cx s1 = branch_sum(ts[0]);
    fitted = cmul(cx_from_rat(ts[0]), s1);
  }
  Cx closed = cx_from_rat(c_closed_rat);
  Real rel = cabs(csub(fitted, closed)) / cabs(closed);
  return AsymptoticResult{fitted, closed, rel};
}

}  // namespace pullback
