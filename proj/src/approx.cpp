#include "psp/approx.hpp"

#include <stdexcept>

namespace psp {

mpfr_rnd_t to_mpfr(Round r) {
  switch (r) {
    case Round::Nearest: return MPFR_RNDN;
    case Round::Down: return MPFR_RNDD;
    case Round::Up: return MPFR_RNDU;
  }
  return MPFR_RNDN;
}

Float::Float() {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_set_zero(v_, 1);
}

Float::Float(const Float& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Float::Float(Float&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Float& Float::operator=(const Float& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& o) noexcept {
  if (this != &o) mpfr_swap(v_, o.v_);
  return *this;
}

Float::~Float() { mpfr_clear(v_); }

Float Float::of_long(long v) {
  Float f;
  mpfr_prec_t p = 2;
  unsigned long mag = static_cast<unsigned long>(v < 0 ? -v : v);
  while (mag >> p) ++p;
  mpfr_set_prec(f.v_, p + 1);
  mpfr_set_si(f.v_, v, MPFR_RNDN);
  return f;
}

Float Float::of_rational(const Rational& q, mpfr_prec_t prec, Round r) {
  if (prec < MPFR_PREC_MIN) throw std::invalid_argument("float precision must be at least 2 bits");
  Float f;
  mpfr_set_prec(f.v_, prec);
  mpfr_set_q(f.v_, q.get_mpq_t(), to_mpfr(r));
  return f;
}

Rational Float::to_rational() const {
  if (!is_finite()) throw std::domain_error("non-finite float has no rational value");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return q;
}

std::string Float::exact_string() const {
  if (mpfr_zero_p(v_)) return "0";
  if (!is_finite()) return "non-finite";
  mpz_class mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), v_);
  while (mant != 0 && mpz_even_p(mant.get_mpz_t())) {
    mant /= 2;
    ++e;
  }
  if (e == 0) return mant.get_str();
  if (e > 0) return mant.get_str() + "*2^" + std::to_string(e);
  return mant.get_str() + "/2^" + std::to_string(-e);
}

std::string Float::str(int significant_digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*Rg", significant_digits, v_);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

namespace {
template <typename Op>
Float binop(const Float& a, const Float& b, mpfr_prec_t prec, Round r, Op op) {
  Float out;
  mpfr_set_prec(const_cast<mpfr_t&>(out.raw()), prec);
  op(const_cast<mpfr_t&>(out.raw()), a.raw(), b.raw(), to_mpfr(r));
  return out;
}
}  // namespace

Float Float::add(const Float& a, const Float& b, mpfr_prec_t prec, Round r) {
  return binop(a, b, prec, r, [](mpfr_t& o, const mpfr_t& x, const mpfr_t& y, mpfr_rnd_t m) { mpfr_add(o, x, y, m); });
}

Float Float::sub(const Float& a, const Float& b, mpfr_prec_t prec, Round r) {
  return binop(a, b, prec, r, [](mpfr_t& o, const mpfr_t& x, const mpfr_t& y, mpfr_rnd_t m) { mpfr_sub(o, x, y, m); });
}

Float Float::mul(const Float& a, const Float& b, mpfr_prec_t prec, Round r) {
  return binop(a, b, prec, r, [](mpfr_t& o, const mpfr_t& x, const mpfr_t& y, mpfr_rnd_t m) { mpfr_mul(o, x, y, m); });
}

Float Float::div(const Float& a, const Float& b, mpfr_prec_t prec, Round r) {
  return binop(a, b, prec, r, [](mpfr_t& o, const mpfr_t& x, const mpfr_t& y, mpfr_rnd_t m) { mpfr_div(o, x, y, m); });
}

Float Float::neg(const Float& a) {
  Float out;
  mpfr_set_prec(const_cast<mpfr_t&>(out.raw()), mpfr_get_prec(a.raw()));
  mpfr_neg(const_cast<mpfr_t&>(out.raw()), a.raw(), MPFR_RNDN);
  return out;
}

Float Float::abs(const Float& a) {
  Float out;
  mpfr_set_prec(const_cast<mpfr_t&>(out.raw()), mpfr_get_prec(a.raw()));
  mpfr_abs(const_cast<mpfr_t&>(out.raw()), a.raw(), MPFR_RNDN);
  return out;
}

Float Float::round_to(const Float& a, mpfr_prec_t prec, Round r) {
  Float out;
  mpfr_set_prec(const_cast<mpfr_t&>(out.raw()), prec);
  mpfr_set(const_cast<mpfr_t&>(out.raw()), a.raw(), to_mpfr(r));
  return out;
}

ApproxVec approx_const(size_t n, long value) {
  ApproxVec v;
  v.reserve(n);
  for (size_t i = 0; i < n; ++i) v.push_back(Float::of_long(value));
  return v;
}

RationalVec to_rational_vec(const ApproxVec& x) {
  RationalVec out;
  out.reserve(x.size());
  for (const Float& f : x) out.push_back(f.to_rational());
  return out;
}

}  // namespace psp
