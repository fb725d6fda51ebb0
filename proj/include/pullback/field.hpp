// Exact coefficient fields, built as a tower:
//
//   Rationals                       Q, arbitrary-precision fractions
//   NumberField(base, modulus, g)   base[g] / (modulus), modulus monic and
//                                   squarefree over base
//   RationalFunctionField(base, x)  base(x), reduced num/den pairs
//
// A Value is an element of one specific field; all operations require the
// operands to live in structurally identical fields (FieldMismatch
// otherwise) and return freshly built Values — nothing is mutated in place.
// Squarefreeness (not irreducibility) of number-field moduli is enforced, so
// inversion can meet a zero divisor; that surfaces as NonInvertible carrying
// the discovered factor of the modulus.

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pullback/error.hpp"

namespace pullback {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Element of a specific field. Payload depends on the field kind:
//  - Rationals:             `rat`
//  - NumberField:           `num` = coefficient vector over the base field,
//                           degree < deg(modulus), trailing zeros stripped
//  - RationalFunctionField: `num`/`den` = reduced polynomial coefficient
//                           vectors over the base field, `den` monic
struct Value {
  FieldPtr field;
  Rat rat = 0;
  std::vector<Value> num;
  std::vector<Value> den;
};

class Field : public std::enable_shared_from_this<Field> {
 public:
  enum class Kind { Rationals, Number, RationalFunctions };

  static FieldPtr rationals();
  // modulus: coefficient vector over `base`, low degree first, monic,
  // squarefree, degree >= 1. `gen` is the printed generator symbol.
  static FieldPtr number(FieldPtr base, std::vector<Value> modulus,
                         std::string gen);
  static FieldPtr rational_functions(FieldPtr base, std::string var);

  Kind kind() const { return kind_; }
  const FieldPtr& base() const { return base_; }
  const std::vector<Value>& modulus() const { return modulus_; }
  const std::string& gen() const { return gen_; }

  // Structural equality (same tower shape, generators, and moduli).
  static bool same(const FieldPtr& a, const FieldPtr& b);

  // Generator names from the leaf outward (e.g. {"w","a","b"}).
  std::vector<std::string> generator_names() const;

 protected:
  Field(Kind kind, FieldPtr base, std::vector<Value> modulus, std::string gen)
      : kind_(kind),
        base_(std::move(base)),
        modulus_(std::move(modulus)),
        gen_(std::move(gen)) {}

  Kind kind_;
  FieldPtr base_;
  std::vector<Value> modulus_;
  std::string gen_;
};

// --- constructors -----------------------------------------------------------

Value make_rat(const Rat& r);                      // element of Q
Value from_rat(const FieldPtr& k, const Rat& r);   // r lifted into k
Value from_int(const FieldPtr& k, long n);
Value zero(const FieldPtr& k);
Value one(const FieldPtr& k);
// The generator of a NumberField / the variable of a RationalFunctionField.
Value generator(const FieldPtr& k);
// Lift v (element of some field in k's tower) into k. FieldMismatch if v's
// field is not a stage of k's tower.
Value embed(const FieldPtr& k, const Value& v);

// True iff `sub` appears as a stage of `sup`'s tower (including sup itself).
bool field_is_stage(const FieldPtr& sub, const FieldPtr& sup);
// Deepest field among the arguments when they form a single tower chain;
// FieldMismatch otherwise. Requires at least one entry.
FieldPtr field_join(const std::vector<FieldPtr>& fields);

// --- arithmetic -------------------------------------------------------------

Value add(const Value& a, const Value& b);
Value sub(const Value& a, const Value& b);
Value mul(const Value& a, const Value& b);
Value neg(const Value& a);
// DivisionByZero when b = 0; NonInvertible when b is a nonzero zero divisor.
Value div(const Value& a, const Value& b);
Value inv(const Value& a);
Value pow_int(const Value& a, long e);  // e may be negative

bool is_zero(const Value& a);
bool equal(const Value& a, const Value& b);

// Decimal-friendly printing of a field element ("p/q", "w^2-1", "(a^2+1)/a").
std::string value_to_string(const Value& a);

// Rational parsing helper: "p", "-p", "p/q". SyntaxError on anything else.
Rat parse_rat_literal(const std::string& text);
std::string rat_to_string(const Rat& r);

// Exact square root of a rational when it is a square of a rational.
std::optional<Rat> rat_sqrt(const Rat& r);

}  // namespace pullback
