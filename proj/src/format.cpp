#include "psp/format.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace psp {

namespace {

struct RawMonomial {
  Rational coeff;
  std::vector<std::pair<std::string, int>> vars;  // (name, exponent)
};

struct RawEquation {
  std::string lhs;
  std::vector<RawMonomial> monomials;
  int line;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class LineParser {
 public:
  LineParser(const std::string& s, int line) : s_(s), line_(line) {}

  RawEquation parse() {
    RawEquation eq;
    eq.line = line_;
    eq.lhs = expect_ident();
    expect('=');
    eq.monomials.push_back(parse_monomial());
    while (true) {
      skip_ws();
      if (done()) break;
      expect('+');
      eq.monomials.push_back(parse_monomial());
    }
    return eq;
  }

 private:
  RawMonomial parse_monomial() {
    RawMonomial m;
    m.coeff = 1;
    bool saw_factor = false;
    while (true) {
      skip_ws();
      if (done() || peek() == '+') break;
      if (saw_factor) {
        expect('*');
        skip_ws();
      }
      if (done()) fail("dangling '*'");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        m.coeff *= parse_number();
      } else if (ident_start(c)) {
        std::string name = expect_ident();
        int e = 1;
        skip_ws();
        if (!done() && peek() == '^') {
          ++pos_;
          e = parse_uint();
          if (e < 1) fail("exponent must be >= 1");
        }
        m.vars.emplace_back(name, e);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
      saw_factor = true;
    }
    if (!saw_factor) fail("empty monomial");
    return m;
  }

  Rational parse_number() {
    size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!done() && peek() == '.') {
      ++pos_;
      while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    } else if (!done() && peek() == '/') {
      ++pos_;
      if (done() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("bad fraction");
      while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    try {
      return parse_rational(s_.substr(start, pos_ - start));
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    return Rational(0);
  }

  int parse_uint() {
    skip_ws();
    size_t start = pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoi(s_.substr(start, pos_ - start));
  }

  std::string expect_ident() {
    skip_ws();
    if (done() || !ident_start(peek())) fail("expected identifier");
    size_t start = pos_;
    while (!done() && ident_char(peek())) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  void expect(char c) {
    skip_ws();
    if (done() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  const std::string& s_;
  size_t pos_ = 0;
  int line_;
};

}  // namespace

Psp parse_psp(const std::string& text) {
  std::istringstream in(text);
  return parse_psp_stream(in);
}

Psp parse_psp_stream(std::istream& in) {
  std::vector<RawEquation> eqs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    eqs.push_back(LineParser(line, lineno).parse());
  }
  if (eqs.empty()) throw ParseError(lineno, "no equations found");

  std::map<std::string, int> index;
  Psp f;
  for (const RawEquation& eq : eqs) {
    if (index.count(eq.lhs)) throw ParseError(eq.line, "duplicate equation for '" + eq.lhs + "'");
    index[eq.lhs] = f.dim();
    f.names.push_back(eq.lhs);
    f.polys.emplace_back();
  }
  for (const RawEquation& eq : eqs) {
    std::vector<Monomial> ms;
    for (const RawMonomial& rm : eq.monomials) {
      if (rm.coeff <= 0) throw ParseError(eq.line, "coefficients must be positive");
      Monomial m;
      m.coeff = rm.coeff;
      for (const auto& [name, e] : rm.vars) {
        auto it = index.find(name);
        if (it == index.end()) throw ParseError(eq.line, "variable '" + name + "' has no defining equation");
        m.vars.emplace_back(it->second, e);
      }
      ms.push_back(std::move(m));
    }
    f.polys[index[eq.lhs]] = Polynomial::make(std::move(ms));
  }
  return f;
}

Psp load_psp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_psp_stream(in);
}

std::string print_psp(const Psp& f) {
  std::ostringstream out;
  for (int i = 0; i < f.dim(); ++i) {
    out << f.names[i] << " = ";
    std::vector<const Monomial*> ordered;  // variable terms first, constant last
    const Monomial* constant = nullptr;
    for (const Monomial& m : f.polys[i].monomials) {
      if (m.is_constant())
        constant = &m;
      else
        ordered.push_back(&m);
    }
    if (constant) ordered.push_back(constant);
    if (ordered.empty()) out << "0";  // degenerate; not produced by generators
    for (size_t k = 0; k < ordered.size(); ++k) {
      if (k) out << " + ";
      const Monomial& m = *ordered[k];
      out << rational_to_string(m.coeff);
      for (const auto& [v, e] : m.vars) {
        out << "*" << f.names[v];
        if (e > 1) out << "^" << e;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace psp
