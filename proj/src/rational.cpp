#include "psp/rational.hpp"

#include <stdexcept>

namespace psp {

Rational rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number literal");
  auto bad = [&] { throw std::invalid_argument("bad number literal: '" + text + "'"); };
  auto digits_only = [&](const std::string& s) {
    if (s.empty()) bad();
    for (char c : s)
      if (c < '0' || c > '9') bad();
  };

  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    digits_only(num);
    digits_only(den);
    Rational q{mpz_class(num, 10), mpz_class(den, 10)};
    if (q.get_den() == 0) bad();
    q.canonicalize();
    return q;
  }

  // optional scientific suffix, converted exactly: 1e-6 -> 1/1000000
  std::string mantissa = text;
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mantissa = text.substr(0, epos);
    std::string es = text.substr(epos + 1);
    bool neg = false;
    if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
      neg = es[0] == '-';
      es.erase(0, 1);
    }
    digits_only(es);
    if (es.size() > 6) bad();  // keeps 10^exp computable
    exp10 = std::stol(es) * (neg ? -1 : 1);
  }

  auto dot = mantissa.find('.');
  std::string intpart = dot == std::string::npos ? mantissa : mantissa.substr(0, dot);
  std::string frac = dot == std::string::npos ? std::string() : mantissa.substr(dot + 1);
  if (intpart.empty() && frac.empty()) bad();
  if (!intpart.empty()) digits_only(intpart);
  if (!frac.empty()) digits_only(frac);
  mpz_class scale = 1;
  for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
  mpz_class whole = intpart.empty() ? mpz_class(0) : mpz_class(intpart, 10);
  mpz_class num = whole * scale + (frac.empty() ? mpz_class(0) : mpz_class(frac, 10));
  for (long k = 0; k < exp10; ++k) num *= 10;
  for (long k = 0; k < -exp10; ++k) scale *= 10;
  Rational q(num, scale);
  q.canonicalize();
  return q;
}

namespace {

// 2^a * 5^b test; fills the number of decimal digits needed.
bool decimal_denominator(const mpz_class& den, unsigned long& digits) {
  mpz_class d = den;
  unsigned long twos = 0, fives = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return false;
  digits = std::max(twos, fives);
  return true;
}

std::string decimal_from_scaled(const mpz_class& scaled, unsigned long digits, bool negative) {
  std::string s = scaled.get_str();
  if (digits == 0) return (negative ? "-" : "") + s;
  if (s.size() <= digits) s.insert(0, digits - s.size() + 1, '0');
  s.insert(s.size() - digits, ".");
  return (negative ? "-" : "") + s;
}

}  // namespace

std::string rational_to_string(const Rational& q) {
  unsigned long digits = 0;
  if (decimal_denominator(q.get_den(), digits)) {
    mpz_class scale = 1;
    for (unsigned long i = 0; i < digits; ++i) scale *= 10;
    mpz_class scaled = q.get_num() * scale / q.get_den();
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    // trim trailing zeros in the fractional part
    std::string s = decimal_from_scaled(scaled, digits, neg);
    if (s.find('.') != std::string::npos) {
      while (s.back() == '0') s.pop_back();
      if (s.back() == '.') s.pop_back();
    }
    return s;
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string decimal_directed(const Rational& q, int digits, bool toward_pos_inf) {
  if (digits < 0) digits = 0;
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class num = q.get_num() * scale, den = q.get_den(), quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (toward_pos_inf && rem != 0) quot += 1;
  bool neg = quot < 0;
  if (neg) quot = -quot;
  return decimal_from_scaled(quot, static_cast<unsigned long>(digits), neg);
}

}  // namespace

std::string decimal_floor(const Rational& q, int digits) { return decimal_directed(q, digits, false); }
std::string decimal_ceil(const Rational& q, int digits) { return decimal_directed(q, digits, true); }

RationalMat RationalMat::identity(int dim) {
  RationalMat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

RationalVec rational_vec(int n, const Rational& value) {
  return RationalVec(static_cast<size_t>(n), value);
}

RationalVec mat_vec(const RationalMat& m, const RationalVec& x) {
  if (static_cast<int>(x.size()) != m.n) throw std::invalid_argument("mat_vec: dimension mismatch");
  RationalVec y(x.size(), Rational(0));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m.at(i, j) != 0) y[i] += m.at(i, j) * x[j];
  return y;
}

bool vec_le(const RationalVec& x, const RationalVec& y) {
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

bool vec_lt_strict(const RationalVec& x, const RationalVec& y) {
  for (size_t i = 0; i < x.size(); ++i)
    if (!(x[i] < y[i])) return false;
  return true;
}

bool vec_lt(const RationalVec& x, const RationalVec& y) {
  return vec_le(x, y) && x != y;
}

}  // namespace psp
