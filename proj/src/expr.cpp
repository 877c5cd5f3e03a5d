#include "radix/expr.hpp"

#include <cctype>

#include "radix/error.hpp"

namespace radix {

ExprPtr make_literal(Rational value) {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::literal;
  e->literal = std::move(value);
  e->literal.canonicalize();
  return e;
}

ExprPtr make_index() {
  auto e = std::make_shared<Expr>();
  e->op = Expr::Op::index;
  return e;
}

ExprPtr make_unary(Expr::Op op, ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(operand);
  return e;
}

ExprPtr make_binary(Expr::Op op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    skip_space();
    if (at_end()) throw ParseError("empty expression", pos_);
    ExprPtr e = expr();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(Expr::Op::add, lhs, term());
      } else if (accept('-')) {
        lhs = make_binary(Expr::Op::subtract, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(Expr::Op::multiply, lhs, unary());
      } else if (accept('/')) {
        lhs = make_binary(Expr::Op::divide, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    if (accept('-')) return make_unary(Expr::Op::negate, unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (accept('^')) return make_binary(Expr::Op::power, base, unary());
    return base;
  }

  ExprPtr primary() {
    skip_space();
    if (at_end()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name != "n") throw ParseError("unknown identifier '" + std::string(name) + "'", start);
      return make_index();
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    std::string digits;
    std::size_t fraction_digits = 0;
    bool seen_point = false;
    while (!at_end()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_point) ++fraction_digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    Integer numerator(digits, 10);
    Integer denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 10, fraction_digits);
    return make_literal(Rational(numerator, denominator));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.op) {
    case Expr::Op::add:
    case Expr::Op::subtract:
      return 1;
    case Expr::Op::multiply:
    case Expr::Op::divide:
      return 2;
    case Expr::Op::negate:
      return 3;
    case Expr::Op::power:
      return 4;
    case Expr::Op::literal:
    case Expr::Op::index:
      return 5;
  }
  return 5;
}

// Terminating decimals print as written; anything else is parenthesized.
std::string literal_text(const Rational& q) {
  Integer den = q.get_den();
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1 || sgn(q) < 0) return "(" + q.get_str() + ")";
  const unsigned places = std::max(twos, fives);
  if (places == 0) return q.get_num().get_str();
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  const Integer scaled = q.get_num() * (scale / q.get_den());
  std::string s = scaled.get_str();
  if (s.size() <= places) s.insert(0, places + 1 - s.size(), '0');
  s.insert(s.size() - places, ".");
  return s;
}

std::string wrap(const Expr& e, bool parens) {
  std::string s = to_string(e);
  return parens ? "(" + s + ")" : s;
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Expr& e) {
  switch (e.op) {
    case Expr::Op::literal:
      return literal_text(e.literal);
    case Expr::Op::index:
      return "n";
    case Expr::Op::negate:
      return "-" + wrap(*e.lhs, precedence(*e.lhs) < 3);
    case Expr::Op::power:
      return wrap(*e.lhs, precedence(*e.lhs) < 5) + "^" + wrap(*e.rhs, precedence(*e.rhs) < 3);
    case Expr::Op::add:
    case Expr::Op::subtract:
    case Expr::Op::multiply:
    case Expr::Op::divide: {
      const int p = precedence(e);
      const char* symbol = e.op == Expr::Op::add        ? " + "
                           : e.op == Expr::Op::subtract ? " - "
                           : e.op == Expr::Op::multiply ? "*"
                                                        : "/";
      return wrap(*e.lhs, precedence(*e.lhs) < p) + symbol + wrap(*e.rhs, precedence(*e.rhs) <= p);
    }
  }
  return {};
}

bool structurally_equal(const Expr& lhs, const Expr& rhs) {
  if (lhs.op != rhs.op) return false;
  switch (lhs.op) {
    case Expr::Op::literal:
      return lhs.literal == rhs.literal;
    case Expr::Op::index:
      return true;
    case Expr::Op::negate:
      return structurally_equal(*lhs.lhs, *rhs.lhs);
    default:
      return structurally_equal(*lhs.lhs, *rhs.lhs) && structurally_equal(*lhs.rhs, *rhs.rhs);
  }
}

}  // namespace radix
