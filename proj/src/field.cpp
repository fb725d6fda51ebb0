#include "pullback/field.hpp"

#include <sstream>

#include "pullback/poly.hpp"

namespace pullback {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::DegenerateTuple: return "DegenerateTuple";
    case ErrorKind::InvalidPortrait: return "InvalidPortrait";
    case ErrorKind::MarkingMismatch: return "MarkingMismatch";
    case ErrorKind::CompositionIncomplete: return "CompositionIncomplete";
    case ErrorKind::NotDynamical: return "NotDynamical";
    case ErrorKind::NotPostcriticallyClosed: return "NotPostcriticallyClosed";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::TooFewMarked: return "TooFewMarked";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::ConstantMap: return "ConstantMap";
    case ErrorKind::InternalNonInvertible: return "InternalNonInvertible";
    case ErrorKind::AdmissibilityViolated: return "AdmissibilityViolated";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotSimpleCritical: return "NotSimpleCritical";
    case ErrorKind::NumericFailure: return "NumericFailure";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::InvalidTriple: return "InvalidTriple";
    case ErrorKind::HypothesesUnmet: return "HypothesesUnmet";
    case ErrorKind::DegenerateParameter: return "DegenerateParameter";
    case ErrorKind::TrivialRoot: return "TrivialRoot";
    case ErrorKind::WitnessSearchFailed: return "WitnessSearchFailed";
    case ErrorKind::TorsionDenominator: return "TorsionDenominator";
    case ErrorKind::PoleAtTorsion: return "PoleAtTorsion";
    case ErrorKind::DegenerateFiber: return "DegenerateFiber";
    case ErrorKind::CheckFailed: return "CheckFailed";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

// --- field construction -----------------------------------------------------

namespace {

// Trailing-zero strip for number-field coefficient vectors.
void strip(std::vector<Value>& v) {
  while (!v.empty() && is_zero(v.back())) v.pop_back();
}

FieldPtr make_field(Field::Kind kind, FieldPtr base,
                    std::vector<Value> modulus, std::string gen) {
  struct Concrete : Field {
    Concrete(Kind k, FieldPtr b, std::vector<Value> m, std::string g)
        : Field(k, std::move(b), std::move(m), std::move(g)) {}
  };
  return std::make_shared<Concrete>(kind, std::move(base), std::move(modulus),
                                    std::move(gen));
}

}  // namespace

FieldPtr Field::rationals() {
  static FieldPtr q = make_field(Kind::Rationals, nullptr, {}, "");
  return q;
}

FieldPtr Field::number(FieldPtr base, std::vector<Value> modulus,
                       std::string gen) {
  if (!base) fail(ErrorKind::Internal, "number field needs a base");
  strip(modulus);
  if (modulus.size() < 2)
    fail(ErrorKind::Internal, "number-field modulus must have degree >= 1");
  for (const auto& c : modulus)
    if (!Field::same(c.field, base))
      fail(ErrorKind::FieldMismatch, "modulus coefficients not in base field");
  if (!equal(modulus.back(), one(base)))
    fail(ErrorKind::Internal, "number-field modulus must be monic");
  // Squarefree check: gcd(m, m') constant.
  Poly m = poly_from(base, modulus);
  if (!psquarefree(m))
    fail(ErrorKind::Internal, "number-field modulus must be squarefree");
  if (gen.empty()) fail(ErrorKind::Internal, "generator symbol required");
  return make_field(Kind::Number, std::move(base), std::move(modulus),
                    std::move(gen));
}

FieldPtr Field::rational_functions(FieldPtr base, std::string var) {
  if (!base) fail(ErrorKind::Internal, "function field needs a base");
  if (var.empty()) fail(ErrorKind::Internal, "variable symbol required");
  return make_field(Kind::RationalFunctions, std::move(base), {},
                    std::move(var));
}

bool Field::same(const FieldPtr& a, const FieldPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind() || a->gen() != b->gen()) return false;
  if (a->kind() == Kind::Rationals) return true;
  if (!same(a->base(), b->base())) return false;
  if (a->kind() == Kind::Number) {
    if (a->modulus().size() != b->modulus().size()) return false;
    for (size_t i = 0; i < a->modulus().size(); ++i)
      if (!equal(a->modulus()[i], b->modulus()[i])) return false;
  }
  return true;
}

std::vector<std::string> Field::generator_names() const {
  std::vector<std::string> names;
  if (base_) names = base_->generator_names();
  if (kind_ != Kind::Rationals) names.push_back(gen_);
  return names;
}

// --- constructors -----------------------------------------------------------

Value make_rat(const Rat& r) {
  Value v;
  v.field = Field::rationals();
  v.rat = r;
  return v;
}

Value zero(const FieldPtr& k) {
  switch (k->kind()) {
    case Field::Kind::Rationals:
      return make_rat(0);
    case Field::Kind::Number: {
      Value v;
      v.field = k;
      return v;  // empty coefficient vector
    }
    case Field::Kind::RationalFunctions: {
      Value v;
      v.field = k;
      v.den = {one(k->base())};
      return v;
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

Value one(const FieldPtr& k) {
  switch (k->kind()) {
    case Field::Kind::Rationals:
      return make_rat(1);
    case Field::Kind::Number: {
      Value v;
      v.field = k;
      v.num = {one(k->base())};
      return v;
    }
    case Field::Kind::RationalFunctions: {
      Value v;
      v.field = k;
      v.num = {one(k->base())};
      v.den = {one(k->base())};
      return v;
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

Value from_rat(const FieldPtr& k, const Rat& r) {
  switch (k->kind()) {
    case Field::Kind::Rationals:
      return make_rat(r);
    case Field::Kind::Number: {
      Value v;
      v.field = k;
      if (!(r == 0)) v.num = {from_rat(k->base(), r)};
      return v;
    }
    case Field::Kind::RationalFunctions: {
      Value v;
      v.field = k;
      if (!(r == 0)) v.num = {from_rat(k->base(), r)};
      v.den = {one(k->base())};
      return v;
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

Value from_int(const FieldPtr& k, long n) { return from_rat(k, Rat(n)); }

Value generator(const FieldPtr& k) {
  switch (k->kind()) {
    case Field::Kind::Rationals:
      fail(ErrorKind::Internal, "rationals have no generator");
    case Field::Kind::Number: {
      if (k->modulus().size() == 2) {
        // Linear modulus g + c = 0: the generator is the constant -c.
        Value v;
        v.field = k;
        Value root = neg(k->modulus()[0]);
        if (!is_zero(root)) v.num = {root};
        return v;
      }
      Value v;
      v.field = k;
      v.num = {zero(k->base()), one(k->base())};
      return v;
    }
    case Field::Kind::RationalFunctions: {
      Value v;
      v.field = k;
      v.num = {zero(k->base()), one(k->base())};
      v.den = {one(k->base())};
      return v;
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

Value embed(const FieldPtr& k, const Value& v) {
  if (Field::same(k, v.field)) return v;
  if (!k->base())
    fail(ErrorKind::FieldMismatch,
         "value does not belong to the requested field tower");
  Value b = embed(k->base(), v);
  Value out;
  out.field = k;
  if (k->kind() == Field::Kind::Number) {
    if (!is_zero(b)) out.num = {b};
    return out;
  }
  if (!is_zero(b)) out.num = {b};
  out.den = {one(k->base())};
  return out;
}

std::optional<Rat> rat_sqrt(const Rat& r) {
  if (r < 0) return std::nullopt;
  if (r == 0) return Rat(0);
  Int pq = numerator(r) * denominator(r);
  Int s = boost::multiprecision::sqrt(pq);
  if (s * s != pq) return std::nullopt;
  return Rat(s, denominator(r));
}

bool field_is_stage(const FieldPtr& sub, const FieldPtr& sup) {
  if (!sup) return false;
  if (Field::same(sub, sup)) return true;
  return field_is_stage(sub, sup->base());
}

FieldPtr field_join(const std::vector<FieldPtr>& fields) {
  FieldPtr best;
  for (const FieldPtr& f : fields) {
    if (!f) continue;
    if (!best || field_is_stage(best, f))
      best = f;
    else if (!field_is_stage(f, best))
      fail(ErrorKind::FieldMismatch, "values live in incompatible field towers");
  }
  if (!best) fail(ErrorKind::Internal, "field_join: no fields given");
  return best;
}

// --- helpers over coefficient vectors --------------------------------------

namespace {

void require_same(const Value& a, const Value& b) {
  if (!Field::same(a.field, b.field))
    fail(ErrorKind::FieldMismatch, "operands live in different fields");
}

Poly nf_poly(const FieldPtr& k, const std::vector<Value>& coeffs) {
  return poly_from(k->base(), coeffs);
}

Value nf_from_poly(const FieldPtr& k, const Poly& p) {
  Value v;
  v.field = k;
  v.num = p.c;
  return v;
}

Value rff_make(const FieldPtr& k, Poly num, Poly den) {
  if (den.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
  if (num.is_zero()) {
    Value v;
    v.field = k;
    v.den = {one(k->base())};
    return v;
  }
  Poly g = pgcd(num, den);
  if (g.deg() > 0) {
    num = pdiv_exact(num, g);
    den = pdiv_exact(den, g);
  }
  Value lc = den.c.back();
  if (!equal(lc, one(k->base()))) {
    num = pscale(num, inv(lc));
    den = pscale(den, inv(lc));
  }
  Value v;
  v.field = k;
  v.num = num.c;
  v.den = den.c;
  return v;
}

}  // namespace

// --- arithmetic -------------------------------------------------------------

bool is_zero(const Value& a) {
  switch (a.field->kind()) {
    case Field::Kind::Rationals:
      return a.rat == 0;
    case Field::Kind::Number:
    case Field::Kind::RationalFunctions:
      return a.num.empty();
  }
  return false;
}

bool equal(const Value& a, const Value& b) {
  require_same(a, b);
  switch (a.field->kind()) {
    case Field::Kind::Rationals:
      return a.rat == b.rat;
    case Field::Kind::Number: {
      if (a.num.size() != b.num.size()) return false;
      for (size_t i = 0; i < a.num.size(); ++i)
        if (!equal(a.num[i], b.num[i])) return false;
      return true;
    }
    case Field::Kind::RationalFunctions: {
      // Reduced canonical form: compare componentwise.
      if (a.num.size() != b.num.size() || a.den.size() != b.den.size())
        return false;
      for (size_t i = 0; i < a.num.size(); ++i)
        if (!equal(a.num[i], b.num[i])) return false;
      for (size_t i = 0; i < a.den.size(); ++i)
        if (!equal(a.den[i], b.den[i])) return false;
      return true;
    }
  }
  return false;
}

Value add(const Value& a, const Value& b) {
  require_same(a, b);
  const FieldPtr& k = a.field;
  switch (k->kind()) {
    case Field::Kind::Rationals:
      return make_rat(a.rat + b.rat);
    case Field::Kind::Number:
      return nf_from_poly(k, padd(nf_poly(k, a.num), nf_poly(k, b.num)));
    case Field::Kind::RationalFunctions: {
      Poly an = poly_from(k->base(), a.num), ad = poly_from(k->base(), a.den);
      Poly bn = poly_from(k->base(), b.num), bd = poly_from(k->base(), b.den);
      return rff_make(k, padd(pmul(an, bd), pmul(bn, ad)), pmul(ad, bd));
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

Value neg(const Value& a) {
  const FieldPtr& k = a.field;
  switch (k->kind()) {
    case Field::Kind::Rationals:
      return make_rat(-a.rat);
    case Field::Kind::Number:
      return nf_from_poly(k, pneg(nf_poly(k, a.num)));
    case Field::Kind::RationalFunctions: {
      Value v = a;
      for (auto& c : v.num) c = neg(c);
      return v;
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

Value sub(const Value& a, const Value& b) { return add(a, neg(b)); }

Value mul(const Value& a, const Value& b) {
  require_same(a, b);
  const FieldPtr& k = a.field;
  switch (k->kind()) {
    case Field::Kind::Rationals:
      return make_rat(a.rat * b.rat);
    case Field::Kind::Number: {
      Poly prod = pmul(nf_poly(k, a.num), nf_poly(k, b.num));
      Poly m = nf_poly(k, k->modulus());
      return nf_from_poly(k, pdivmod(prod, m).rem);
    }
    case Field::Kind::RationalFunctions: {
      Poly an = poly_from(k->base(), a.num), ad = poly_from(k->base(), a.den);
      Poly bn = poly_from(k->base(), b.num), bd = poly_from(k->base(), b.den);
      return rff_make(k, pmul(an, bn), pmul(ad, bd));
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

Value inv(const Value& a) {
  const FieldPtr& k = a.field;
  if (is_zero(a)) fail(ErrorKind::DivisionByZero, "inverse of zero");
  switch (k->kind()) {
    case Field::Kind::Rationals:
      return make_rat(1 / a.rat);
    case Field::Kind::Number: {
      Poly m = nf_poly(k, k->modulus());
      Poly r = pinv_mod(nf_poly(k, a.num), m);
      return nf_from_poly(k, r);
    }
    case Field::Kind::RationalFunctions: {
      Poly an = poly_from(k->base(), a.num), ad = poly_from(k->base(), a.den);
      return rff_make(k, ad, an);
    }
  }
  fail(ErrorKind::Internal, "unreachable");
}

Value div(const Value& a, const Value& b) {
  if (is_zero(b)) fail(ErrorKind::DivisionByZero, "division by zero");
  return mul(a, inv(b));
}

Value pow_int(const Value& a, long e) {
  if (e < 0) return pow_int(inv(a), -e);
  Value acc = one(a.field);
  Value base = a;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

// --- printing & rational literals ------------------------------------------

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Rat parse_rat_literal(const std::string& text) {
  if (text.empty()) fail(ErrorKind::SyntaxError, "empty rational literal", 0);
  size_t i = 0;
  if (text[i] == '-') ++i;
  if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
    fail(ErrorKind::SyntaxError, "expected digits in rational literal",
         static_cast<long>(i));
  size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash));
    Int den(text.substr(slash + 1));
    if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator literal");
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorKind::SyntaxError, "malformed rational literal: " + text, 0);
  }
}

std::string value_to_string(const Value& a) {
  switch (a.field->kind()) {
    case Field::Kind::Rationals:
      return rat_to_string(a.rat);
    case Field::Kind::Number:
      return poly_to_string(poly_from(a.field->base(), a.num),
                            a.field->gen());
    case Field::Kind::RationalFunctions: {
      Poly n = poly_from(a.field->base(), a.num);
      Poly d = poly_from(a.field->base(), a.den);
      std::string ns = poly_to_string(n, a.field->gen());
      if (d.deg() == 0 && equal(d.c[0], one(a.field->base()))) return ns;
      return "(" + ns + ")/(" + poly_to_string(d, a.field->gen()) + ")";
    }
  }
  return "?";
}

}  // namespace pullback
