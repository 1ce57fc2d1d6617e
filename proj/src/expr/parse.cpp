// Recursive-descent parser for the expression grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | ident | func '(' expr ')' | '(' expr ')'
//
// '^' is right-associative and binds tighter than unary minus, so -x^2 is
// -(x^2) and 2^-1 is 2^(-1).

#include <cctype>
#include <charconv>

#include "noether/expr.hpp"

namespace noether {
namespace {

class Parser {
 public:
  Parser(std::string_view src, int dimension) : src_(src), dimension_(dimension) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ < src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + parse_term();
      } else if (accept('-')) {
        lhs = lhs - parse_term();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * parse_unary();
      } else if (accept('/')) {
        lhs = lhs / parse_unary();
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return -parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return Expr::pow(std::move(base), parse_unary());
    return base;
  }

  Expr parse_atom() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail("malformed number");
    }
    // An exponent needs at least one digit; otherwise 'e' is left for the
    // next token (which will then be rejected as a juxtaposed identifier).
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || ptr != src_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr(value);
  }

  Expr parse_identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view token = src_.substr(start, pos_ - start);

    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"sin", Func::Sin}, {"cos", Func::Cos},   {"exp", Func::Exp},
        {"ln", Func::Ln},   {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
    };
    for (const auto& [name, f] : kFuncs) {
      if (token == name) {
        if (!accept('(')) fail("expected '(' after " + std::string(name));
        Expr arg = parse_expr();
        if (!accept(')')) fail("expected ')'");
        return Expr::call(f, std::move(arg));
      }
    }

    if (token == "t") return Expr(Var::time());
    if (token == "s") return Expr(Var::param());
    if (token.size() >= 2 && (token[0] == 'x' || token[0] == 'v' || token[0] == 'a')) {
      std::string_view digits = token.substr(1);
      int index = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
      bool numeric = ec == std::errc() && ptr == digits.data() + digits.size() && digits[0] != '0';
      if (numeric && index >= 1 && index <= dimension_) {
        switch (token[0]) {
          case 'x': return Expr(Var::coord(index));
          case 'v': return Expr(Var::vel(index));
          default: return Expr(Var::accel(index));
        }
      }
    }
    throw UnknownIdentifierError(std::string(token), start);
  }

  std::string_view src_;
  int dimension_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view source, int dimension) {
  if (dimension < 1) throw PreconditionError("dimension must be at least 1");
  return Parser(source, dimension).parse_all();
}

}  // namespace noether
