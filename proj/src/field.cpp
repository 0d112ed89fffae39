#include "posetbocs/field.hpp"

namespace posetbocs {

Field Field::fp(unsigned long p) {
  mpz_class pz(static_cast<long>(p));
  if (p < 2 || mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
    throw std::invalid_argument("field modulus must be prime, got " + std::to_string(p));
  return Field(p);
}

Scalar Field::zero() const { return Scalar(mpq_class(0), p_); }
Scalar Field::one() const { return Scalar(mpq_class(1), p_); }
Scalar Field::from_int(long v) const { return Scalar(mpq_class(v), p_); }

Scalar Field::from_ratio(long num, long den) const {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (p_ == 0) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(q, 0);
  }
  return from_int(num) / from_int(den);
}

Scalar Field::parse(const std::string& text) const {
  mpq_class q;
  if (q.set_str(text, 10) != 0) throw ParseError("bad scalar literal: " + text);
  q.canonicalize();
  if (p_ == 0) return Scalar(q, 0);
  Scalar num(mpq_class(q.get_num()), p_);
  Scalar den(mpq_class(q.get_den()), p_);
  return num / den;
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

void Scalar::reduce() {
  if (p_ == 0) return;
  if (v_.get_den() != 1) throw std::logic_error("non-integral residue");
  mpz_class r;
  mpz_class p(static_cast<long>(p_));
  mpz_mod(r.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t());
  v_ = mpq_class(r);
}

unsigned long Scalar::join(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.p_;
  // a default-constructed zero is field-agnostic
  if (a.p_ == 0 && a.v_ == 0) return b.p_;
  if (b.p_ == 0 && b.v_ == 0) return a.p_;
  throw std::invalid_argument("mixed-field scalar arithmetic");
}

Scalar operator+(const Scalar& a, const Scalar& b) { return Scalar(a.v_ + b.v_, Scalar::join(a, b)); }
Scalar operator-(const Scalar& a, const Scalar& b) { return Scalar(a.v_ - b.v_, Scalar::join(a, b)); }
Scalar operator*(const Scalar& a, const Scalar& b) { return Scalar(a.v_ * b.v_, Scalar::join(a, b)); }

Scalar Scalar::operator-() const { return Scalar(-v_, p_); }

Scalar Scalar::inv() const {
  if (is_zero()) throw std::invalid_argument("inverse of zero");
  if (p_ == 0) return Scalar(1 / v_, 0);
  mpz_class r, p(static_cast<long>(p_));
  if (mpz_invert(r.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::invalid_argument("non-invertible residue");
  return Scalar(mpq_class(r), p_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  unsigned long p = Scalar::join(a, b);
  if (b.is_zero()) throw std::invalid_argument("division by zero");
  if (p == 0) return Scalar(a.v_ / b.v_, 0);
  return a * b.inv();
}

bool Scalar::operator==(const Scalar& b) const {
  join(*this, b);
  return v_ == b.v_;
}

std::string Scalar::str() const { return v_.get_str(); }

}  // namespace posetbocs
