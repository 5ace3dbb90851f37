#include "fracmorrey/grammar.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "fracmorrey/error.hpp"

namespace fracmorrey {

namespace {

struct Expr {
  enum class Kind { Number, List, Call } kind = Kind::Number;
  double number = 0.0;
  std::vector<double> list;
  std::string name;
  std::vector<Expr> args;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("descriptor parse error at offset " + std::to_string(pos_) + ": " + what + " in '" +
                          std::string(s_) + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  double parse_number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == '-' || s_[pos_] == '+'))
      ++pos_;
    const std::string tok(s_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) {
      pos_ = start;
      fail("bad number '" + tok + "'");
    }
    return v;
  }

  Expr parse_expr() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '[') {
      ++pos_;
      Expr e;
      e.kind = Expr::Kind::List;
      if (!peek(']')) {
        e.list.push_back(parse_number());
        while (peek(',')) {
          ++pos_;
          e.list.push_back(parse_number());
        }
      }
      expect(']');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) && !(c == 'i' && s_.substr(pos_, 3) == "inf")) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      Expr e;
      e.kind = Expr::Kind::Call;
      e.name = std::string(s_.substr(start, pos_ - start));
      expect('(');
      if (!peek(')')) {
        e.args.push_back(parse_expr());
        while (peek(',')) {
          ++pos_;
          e.args.push_back(parse_expr());
        }
      }
      expect(')');
      return e;
    }
    Expr e;
    e.number = parse_number();
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

[[noreturn]] void bad(const std::string& what) { throw ValidationError("descriptor: " + what); }

double num(const Expr& e, const char* ctx) {
  if (e.kind != Expr::Kind::Number) bad(std::string(ctx) + " expects a number");
  return e.number;
}

Point point(const Expr& e) {
  if (e.kind == Expr::Kind::Number) return {e.number};
  if (e.kind == Expr::Kind::List && !e.list.empty()) return e.list;
  bad("expected a point (number or [x, y, ...])");
}

Shape shape(const Expr& e) {
  if (e.kind != Expr::Kind::Call || (e.name != "ball" && e.name != "cube") || e.args.size() != 2)
    bad("expected ball(c, r) or cube(c, r)");
  Shape s;
  s.kind = e.name == "ball" ? RegionKind::Ball : RegionKind::Cube;
  s.center = point(e.args[0]);
  s.radius = num(e.args[1], e.name.c_str());
  if (!(s.radius > 0.0)) bad(e.name + " radius must be positive");
  return s;
}

FunctionDescriptor to_function(const Expr& e) {
  if (e.kind != Expr::Kind::Call) bad("function descriptors must be calls like ind(...), pow(...)");
  const auto& a = e.args;
  if (e.name == "ind") {
    if (a.size() != 1) bad("ind takes one shape");
    return FunctionDescriptor::indicator(shape(a[0]));
  }
  if (e.name == "pow") {
    if (a.size() == 1) return FunctionDescriptor::power(num(a[0], "pow"));
    if (a.size() == 2) return FunctionDescriptor::power(num(a[0], "pow"), shape(a[1]));
    bad("pow takes (g) or (g, shape)");
  }
  if (e.name == "gauss") {
    if (a.size() != 2) bad("gauss takes (center, width)");
    return FunctionDescriptor::gaussian(point(a[0]), num(a[1], "gauss"));
  }
  if (e.name == "step") {
    if (a.size() != 2 && a.size() != 3) bad("step takes (seed, k) or (seed, k, cube)");
    const double seed = num(a[0], "step");
    const double k = num(a[1], "step");
    if (seed < 0 || seed != static_cast<double>(static_cast<std::uint64_t>(seed))) bad("step seed must be a nonnegative integer");
    if (k != static_cast<int>(k)) bad("step piece count must be an integer");
    Shape sup{RegionKind::Cube, {0.0}, 1.0};
    if (a.size() == 3) sup = shape(a[2]);
    return FunctionDescriptor::step(static_cast<std::uint64_t>(seed), static_cast<int>(k), sup);
  }
  if (e.name == "sum") {
    std::vector<std::pair<double, FunctionDescriptor>> terms;
    for (const auto& x : a) terms.emplace_back(1.0, to_function(x));
    return FunctionDescriptor::sum(std::move(terms));
  }
  if (e.name == "scaled") {
    if (a.size() != 2) bad("scaled takes (c, f)");
    return FunctionDescriptor::scaled(num(a[0], "scaled"), to_function(a[1]));
  }
  if (e.name == "zero") {
    if (!a.empty()) bad("zero takes no arguments");
    return FunctionDescriptor::zero();
  }
  bad("unknown function '" + e.name + "'");
}

WeightDescriptor to_weight(const Expr& e) {
  if (e.kind == Expr::Kind::Number) return WeightDescriptor::constant(e.number);
  if (e.kind != Expr::Kind::Call) bad("weight must be a number or a call");
  const auto& a = e.args;
  if (e.name == "const") {
    if (a.size() != 1) bad("const takes one number");
    return WeightDescriptor::constant(num(a[0], "const"));
  }
  if (e.name == "pow") {
    if (a.size() != 1) bad("weight pow takes one exponent");
    return WeightDescriptor::power(num(a[0], "pow"));
  }
  if (e.name == "sum" || e.name == "prod") {
    if (a.empty()) bad(e.name + " needs arguments");
    WeightDescriptor w = to_weight(a[0]);
    for (std::size_t i = 1; i < a.size(); ++i)
      w = e.name == "sum" ? WeightDescriptor::sum(w, to_weight(a[i])) : WeightDescriptor::product(w, to_weight(a[i]));
    return w;
  }
  if (e.name == "scaled") {
    if (a.size() != 2) bad("scaled takes (c, w)");
    return WeightDescriptor::scaled(num(a[0], "scaled"), to_weight(a[1]));
  }
  bad("unknown weight '" + e.name + "'");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_point(const Point& p) {
  if (p.size() == 1) return fmt(p[0]);
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + fmt(p[i]);
  return s + "]";
}

std::string fmt_shape(const Shape& s) {
  return std::string(s.kind == RegionKind::Ball ? "ball(" : "cube(") + fmt_point(s.center) + "," + fmt(s.radius) + ")";
}

}  // namespace

FunctionDescriptor parse_function(std::string_view text) { return to_function(Parser(text).parse_all()); }

WeightDescriptor parse_weight(std::string_view text) { return to_weight(Parser(text).parse_all()); }

Shape parse_shape(std::string_view text) { return shape(Parser(text).parse_all()); }

Point parse_point(std::string_view text) { return point(Parser(text).parse_all()); }

std::string to_string(const Shape& s) { return fmt_shape(s); }

std::string to_string(const FunctionDescriptor& f) {
  return std::visit(
      [](const auto& nd) -> std::string {
        using T = std::decay_t<decltype(nd)>;
        if constexpr (std::is_same_v<T, FunctionDescriptor::Indicator>) {
          return "ind(" + fmt_shape(nd.region) + ")";
        } else if constexpr (std::is_same_v<T, FunctionDescriptor::Power>) {
          return "pow(" + fmt(nd.exponent) + (nd.support ? "," + fmt_shape(*nd.support) : "") + ")";
        } else if constexpr (std::is_same_v<T, FunctionDescriptor::Gaussian>) {
          return "gauss(" + fmt_point(nd.center) + "," + fmt(nd.width) + ")";
        } else if constexpr (std::is_same_v<T, FunctionDescriptor::StepRandom>) {
          return "step(" + std::to_string(nd.seed) + "," + std::to_string(nd.pieces) + "," + fmt_shape(nd.support) + ")";
        } else {
          if (nd.terms.empty()) return "zero()";
          if (nd.terms.size() == 1) return "scaled(" + fmt(nd.terms[0].first) + "," + to_string(nd.terms[0].second) + ")";
          std::string s = "sum(";
          for (std::size_t i = 0; i < nd.terms.size(); ++i) {
            const auto& [c, g] = nd.terms[i];
            s += (i ? "," : "") + (c == 1.0 ? to_string(g) : "scaled(" + fmt(c) + "," + to_string(g) + ")");
          }
          return s + ")";
        }
      },
      f.node());
}

std::string to_string(const WeightDescriptor& v) {
  auto term = [](const PowerTerm& t) {
    if (t.exponent == 0.0) return fmt(t.coef);
    if (t.coef == 1.0) return "pow(" + fmt(t.exponent) + ")";
    return "scaled(" + fmt(t.coef) + ",pow(" + fmt(t.exponent) + "))";
  };
  const auto& ts = v.terms();
  if (ts.size() == 1) return term(ts[0]);
  std::string s = "sum(";
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? "," : "") + term(ts[i]);
  return s + ")";
}

}  // namespace fracmorrey
