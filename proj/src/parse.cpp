#include "pullback/parse.hpp"

#include <cctype>
#include <map>

namespace pullback {

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;
  FieldPtr field;
  std::string var;                      // empty = no variable allowed
  std::map<std::string, RatFunc> symbols;

  explicit Parser(const std::string& t, FieldPtr k, std::string v)
      : text(t), field(std::move(k)), var(std::move(v)) {
    // Tower generators are in scope as constants.
    FieldPtr stage = field;
    while (stage && stage->kind() != Field::Kind::Rationals) {
      const std::string& g = stage->gen();
      if (g == var)
        fail(ErrorKind::Internal,
             "variable symbol collides with field generator: " + g);
      if (!symbols.count(g))
        symbols.emplace(g, rf_const(embed(field, generator(stage))));
      stage = stage->base();
    }
    if (!var.empty()) symbols.emplace(var, rf_x(field));
  }

  void skip_ws() {
    while (pos < text.size() &&
           isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  [[noreturn]] void syntax(const std::string& msg, size_t at) {
    fail(ErrorKind::SyntaxError, msg + " at byte " + std::to_string(at),
         static_cast<long>(at));
  }

  std::string read_digits() {
    size_t start = pos;
    while (pos < text.size() &&
           isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) syntax("expected digits", start);
    return text.substr(start, pos - start);
  }

  RatFunc parse_base() {
    skip_ws();
    if (pos >= text.size()) syntax("unexpected end of input", pos);
    char c = text[pos];
    if (c == '(') {
      ++pos;
      RatFunc inner = parse_expr();
      if (!accept(')')) syntax("expected ')'", pos);
      return inner;
    }
    if (c == '-' || isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      bool negative = (c == '-');
      if (negative) {
        ++pos;
        if (pos >= text.size() ||
            !isdigit(static_cast<unsigned char>(text[pos])))
          syntax("'-' must be followed by digits (no unary minus)", start);
      }
      std::string digits = read_digits();
      Rat r{Int(digits)};
      if (negative) r = -r;
      return rf_const(from_rat(field, r));
    }
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < text.size() &&
             (isalnum(static_cast<unsigned char>(text[pos])) ||
              text[pos] == '_'))
        ++pos;
      std::string name = text.substr(start, pos - start);
      auto it = symbols.find(name);
      if (it == symbols.end())
        fail(ErrorKind::UnknownSymbol,
             "unknown symbol '" + name + "' at byte " + std::to_string(start),
             static_cast<long>(start));
      return it->second;
    }
    syntax(std::string("unexpected character '") + c + "'", pos);
  }

  RatFunc parse_factor() {
    RatFunc base = parse_base();
    skip_ws();
    if (accept('^')) {
      skip_ws();
      size_t at = pos;
      std::string digits = read_digits();
      if (digits.size() > 6) syntax("exponent too large", at);
      long e = std::stol(digits);
      return rf_pow(base, e);
    }
    return base;
  }

  RatFunc parse_term() {
    RatFunc acc = parse_factor();
    for (;;) {
      if (accept('*')) {
        acc = rf_mul(acc, parse_factor());
      } else if (accept('/')) {
        size_t at = pos;
        RatFunc rhs = parse_factor();
        if (rf_is_zero(rhs))
          fail(ErrorKind::DivisionByZero,
               "division by zero at byte " + std::to_string(at),
               static_cast<long>(at));
        acc = rf_div(acc, rhs);
      } else {
        return acc;
      }
    }
  }

  RatFunc parse_expr() {
    RatFunc acc = parse_term();
    for (;;) {
      if (accept('+')) {
        acc = rf_add(acc, parse_term());
      } else if (peek('-')) {
        // Distinguish binary minus from a negative-integer literal start:
        // at this position a '-' is always the binary operator.
        ++pos;
        acc = rf_sub(acc, parse_term());
      } else {
        return acc;
      }
    }
  }

  RatFunc run() {
    RatFunc result = parse_expr();
    skip_ws();
    if (pos != text.size()) syntax("trailing input", pos);
    return result;
  }
};

}  // namespace

RatFunc parse_ratfunc(const std::string& text, const FieldPtr& field,
                      const std::string& var) {
  Parser p(text, field, var);
  return p.run();
}

Poly parse_poly(const std::string& text, const FieldPtr& field,
                const std::string& var) {
  RatFunc r = parse_ratfunc(text, field, var);
  if (r.den.deg() != 0)
    fail(ErrorKind::SyntaxError,
         "expected a polynomial but the reduced denominator is nonconstant",
         0);
  // den is monic constant = 1 after reduction.
  return r.num;
}

Value parse_value(const std::string& text, const FieldPtr& field) {
  Parser p(text, field, "");
  RatFunc r = p.run();
  if (r.num.deg() > 0 || r.den.deg() > 0)
    fail(ErrorKind::Internal, "variable leaked into a constant expression");
  if (r.num.is_zero()) return zero(field);
  return div(r.num.c[0], r.den.c[0]);
}

}  // namespace pullback
