#include <cctype>
#include <stdexcept>

#include "k3c/ratpoly.hpp"

namespace k3c {

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  const std::vector<std::string>& vars;
  int nvars;

  Parser(const std::string& text, const std::vector<std::string>& v)
      : s(text), vars(v), nvars(static_cast<int>(v.size())) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) { ++pos; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw std::invalid_argument("polynomial parse error at position " +
                                std::to_string(pos) + ": " + msg);
  }

  Int parse_uint() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected digits");
    return Int(s.substr(start, pos - start));
  }

  int parse_var() {
    skip_ws();
    for (int i = 0; i < nvars; ++i) {
      const std::string& name = vars[static_cast<size_t>(i)];
      if (s.compare(pos, name.size(), name) == 0) {
        // Longest-match guard: reject when a longer variable name also matches.
        bool shadowed = false;
        for (int j = 0; j < nvars; ++j) {
          const std::string& other = vars[static_cast<size_t>(j)];
          if (other.size() > name.size() && s.compare(pos, other.size(), other) == 0)
            shadowed = true;
        }
        if (!shadowed) { pos += name.size(); return i; }
      }
    }
    return -1;
  }

  RatPoly parse_factor() {
    skip_ws();
    if (eat('(')) {
      RatPoly p = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return maybe_pow(p);
    }
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      Int num = parse_uint();
      Int den(1);
      if (eat('/')) den = parse_uint();
      if (den == 0) fail("zero denominator");
      return maybe_pow(RatPoly::constant(nvars, Rat(num, den)));
    }
    int v = parse_var();
    if (v < 0) fail("expected number, variable, or '('");
    return maybe_pow(RatPoly::variable(nvars, v));
  }

  RatPoly maybe_pow(RatPoly base) {
    if (eat('^')) {
      Int e = parse_uint();
      if (e > 64) fail("exponent too large");
      return base.pow(static_cast<int>(e.get_si()));
    }
    return base;
  }

  RatPoly parse_term() {
    RatPoly p = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        p = p * parse_factor();
        continue;
      }
      // Juxtaposition: "3x" or "x y" also multiply.
      if (pos < s.size() &&
          (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '(')) {
        p = p * parse_factor();
        continue;
      }
      break;
    }
    return p;
  }

  RatPoly parse_expr() {
    skip_ws();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    RatPoly p = parse_term();
    if (neg) p = -p;
    for (;;) {
      skip_ws();
      if (eat('+')) p += parse_term();
      else if (eat('-')) p -= parse_term();
      else break;
    }
    return p;
  }
};

}  // namespace

RatPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  Parser p(text, vars);
  RatPoly r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

}  // namespace k3c
