#include "knotgeo/knot_expr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace knotgeo {

namespace {

const std::set<std::string>& default_names() {
  static const std::set<std::string> names = {kUnknotName, "4_1"};
  return names;
}

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!consume(c))
      throw parse_error(std::string("expected '") + c + "' " + what, pos);
  }

  // Unsigned integer with the parse-time range cap.
  std::int64_t integer(std::int64_t cap, const char* what) {
    skip_ws();
    const std::size_t start = pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw parse_error(std::string("expected integer ") + what, pos);
    std::int64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > cap) throw parse_error(std::string(what) + " exceeds bound " + std::to_string(cap), start);
      ++pos;
    }
    return value;
  }

  // Word token made of letters, digits and '_'. The grammar's names may carry
  // leading digits ("4_1"); a word that is all digits is not a name.
  std::string word() {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }
};

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

KnotBase parse_base(Lexer& lx, const std::set<std::string>& names) {
  lx.skip_ws();
  const std::size_t start = lx.pos;
  // "T(" introduces a torus knot; a bare "T" would be a named knot.
  if (lx.pos < lx.text.size() && lx.text[lx.pos] == 'T') {
    std::size_t look = lx.pos + 1;
    while (look < lx.text.size() && std::isspace(static_cast<unsigned char>(lx.text[look]))) ++look;
    if (look < lx.text.size() && lx.text[look] == '(') {
      ++lx.pos;
      lx.expect('(', "after 'T'");
      const std::int64_t p = lx.integer(kMaxTorusIndex, "torus index p");
      lx.expect(',', "between torus indices");
      const std::int64_t q = lx.integer(kMaxTorusIndex, "torus index q");
      lx.expect(')', "closing torus knot");
      if (p < 1 || q < 1) throw parse_error("torus indices must be >= 1", start);
      if (std::gcd(p, q) != 1)
        throw parse_error("T(" + std::to_string(p) + "," + std::to_string(q) +
                              ") is not a knot: gcd(p,q) != 1",
                          start);
      return TorusKnot{p, q};
    }
  }
  const std::string name = lx.word();
  if (name.empty()) throw parse_error("expected a knot (torus knot or name)", start);
  if (all_digits(name)) throw parse_error("bare integer is not a knot", start);
  if (!names.count(name)) throw parse_error("unknown named knot '" + name + "'", start);
  return NamedKnot{name};
}

Term parse_term(Lexer& lx, const std::set<std::string>& names) {
  std::int64_t sign = 1;
  if (lx.consume('-')) sign = -1;
  else if (lx.consume('+')) sign = 1;

  std::int64_t magnitude = 1;
  // Lookahead: digits followed by '*' are a multiplicity; digits followed by
  // a name character belong to a name like "4_1".
  lx.skip_ws();
  std::size_t look = lx.pos;
  while (look < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[look]))) ++look;
  if (look > lx.pos) {
    std::size_t after = look;
    while (after < lx.text.size() && std::isspace(static_cast<unsigned char>(lx.text[after]))) ++after;
    if (after < lx.text.size() && lx.text[after] == '*') {
      magnitude = lx.integer(kMaxCoefficient, "coefficient");
      lx.expect('*', "after coefficient");
    }
  }
  KnotBase base = parse_base(lx, names);
  return Term{sign * magnitude, std::move(base)};
}

int base_rank(const KnotBase& b) {
  return std::holds_alternative<TorusKnot>(b) ? 0 : 1;
}

}  // namespace

bool base_less(const KnotBase& a, const KnotBase& b) {
  if (base_rank(a) != base_rank(b)) return base_rank(a) < base_rank(b);
  if (std::holds_alternative<TorusKnot>(a))
    return std::get<TorusKnot>(a) < std::get<TorusKnot>(b);
  return std::get<NamedKnot>(a) < std::get<NamedKnot>(b);
}

KnotExpr parse(const std::string& text, const std::set<std::string>* known_names) {
  const std::set<std::string>& names = known_names ? *known_names : default_names();
  Lexer lx{text};
  if (lx.eof()) throw parse_error("empty expression", 0);
  KnotExpr expr;
  expr.terms.push_back(parse_term(lx, names));
  while (!lx.eof()) {
    lx.expect('#', "between connected-sum terms");
    expr.terms.push_back(parse_term(lx, names));
  }
  return expr;
}

KnotExpr normalize(const KnotExpr& k) {
  std::vector<Term> work;
  work.reserve(k.terms.size());
  for (const Term& t : k.terms) {
    if (t.coefficient == 0) continue;
    if (std::holds_alternative<TorusKnot>(t.base)) {
      const TorusKnot tk = std::get<TorusKnot>(t.base).normalized();
      if (tk.is_unknot()) continue;
      work.push_back(Term{t.coefficient, tk});
    } else {
      const NamedKnot& nk = std::get<NamedKnot>(t.base);
      if (nk.name == kUnknotName) continue;
      work.push_back(t);
    }
  }
  std::stable_sort(work.begin(), work.end(),
                   [](const Term& a, const Term& b) { return base_less(a.base, b.base); });
  KnotExpr out;
  for (const Term& t : work) {
    if (!out.terms.empty() && out.terms.back().base == t.base) {
      out.terms.back().coefficient += t.coefficient;
      if (out.terms.back().coefficient == 0) out.terms.pop_back();
    } else {
      out.terms.push_back(t);
    }
  }
  return out;
}

KnotExpr mirror(const KnotExpr& k) {
  KnotExpr out = k;
  for (Term& t : out.terms) t.coefficient = -t.coefficient;
  return out;
}

std::string to_text(const KnotExpr& k) {
  if (k.terms.empty()) return kUnknotName;
  std::ostringstream os;
  bool first = true;
  for (const Term& t : k.terms) {
    if (!first) os << " # ";
    first = false;
    if (t.coefficient == -1) os << "-";
    else if (t.coefficient != 1) os << t.coefficient << "*";
    if (std::holds_alternative<TorusKnot>(t.base)) {
      const TorusKnot& tk = std::get<TorusKnot>(t.base);
      os << "T(" << tk.p << "," << tk.q << ")";
    } else {
      os << std::get<NamedKnot>(t.base).name;
    }
  }
  return os.str();
}

}  // namespace knotgeo
