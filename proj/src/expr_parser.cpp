#include <cctype>
#include <string>

#include "twsusp/error.hpp"
#include "twsusp/topology.hpp"

namespace twsusp {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) text_ += c;
  }

  Manifold manifold() {
    Manifold m = expr();
    expect_end();
    return m;
  }

  EulerClass euler_only() {
    EulerClass e = euler();
    expect_end();
    return e;
  }

 private:
  // expr := term ('x' term)*
  Manifold expr() {
    Manifold m = term();
    while (peek() == 'x') {
      ++pos_;
      m = Manifold::product(m, term());
    }
    return m;
  }

  Manifold term() {
    if (accept("(")) {
      Manifold m = expr();
      expect(")");
      return m;
    }
    if (accept("S2~S(")) {
      long q = number();
      expect(")");
      return Manifold::twisted_s2_bundle(q);
    }
    if (accept("S(")) {
      long n = number();
      expect(")");
      return Manifold::sphere(n);
    }
    if (accept("CP(")) {
      long m = number();
      expect(")");
      return Manifold::cp(m);
    }
    if (accept("lens(")) {
      long k = number();
      expect(",");
      long d = number();
      expect(")");
      return Manifold::lens(k, d);
    }
    if (accept("N(")) {
      long k = number();
      expect(")");
      return Manifold::smale(k);
    }
    if (accept("Wu")) return Manifold::wu();
    if (accept("Poincare")) return Manifold::poincare_sphere();
    if (accept("csum(")) {
      std::vector<Manifold> parts{expr()};
      while (accept(",")) parts.push_back(expr());
      expect(")");
      return connected_sum(parts);
    }
    if (accept("susp(")) {
      EulerClass e = euler();
      expect(",");
      Manifold m = expr();
      expect(")");
      return suspend(m, e);
    }
    fail("expected a manifold");
  }

  EulerClass euler() {
    if (accept("prim")) return EulerClass::primitive();
    if (accept("div(")) {
      long k = number();
      expect(")");
      return EulerClass::divisible(k);
    }
    if (accept("[")) {
      std::vector<EulerClass> parts{euler()};
      while (accept(",")) parts.push_back(euler());
      expect("]");
      return EulerClass::split(std::move(parts));
    }
    if (accept("0")) return EulerClass::zero();
    fail("expected an Euler class");
  }

  long number() {
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && text_[start] == '-')) fail("expected a number");
    try {
      return std::stol(text_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail("number out of range");
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool accept(std::string_view token) {
    if (text_.compare(pos_, token.size(), token) != 0) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  void expect_end() {
    if (pos_ != text_.size()) fail("trailing input");
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, what + " at offset " + std::to_string(pos_) + " in '" + text_ + "'");
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

Manifold parse_manifold(std::string_view text) { return Parser(text).manifold(); }

EulerClass parse_euler_class(std::string_view text) { return Parser(text).euler_only(); }

}  // namespace twsusp
