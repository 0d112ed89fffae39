#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace posetbocs {

/// Raised when a verified structural identity fails; indicates an
/// implementation bug, never bad user input.
struct ConsistencyError : std::runtime_error {
  explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class Scalar;

/// Base field of all computations: the rationals, or Z/p for a prime p.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field fp(unsigned long p);

  bool is_rationals() const { return p_ == 0; }
  unsigned long characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long v) const;
  Scalar from_ratio(long num, long den) const;
  Scalar parse(const std::string& text) const;

  std::string name() const;
  bool operator==(const Field& other) const { return p_ == other.p_; }
  bool operator!=(const Field& other) const { return p_ != other.p_; }

 private:
  explicit Field(unsigned long p) : p_(p) {}
  unsigned long p_;
};

/// Exact field element. Rationals are kept in lowest terms with positive
/// denominator (mpq_class canonicalization); mod-p residues are kept in
/// [0, p) with denominator 1.
class Scalar {
 public:
  Scalar() = default;  // rational zero; adopts the other operand's field

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return p_ == 0 ? v_ == 1 : v_ == 1; }
  unsigned long modulus() const { return p_; }
  const mpq_class& raw() const { return v_; }

  Scalar operator-() const;
  Scalar inv() const;
  std::string str() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  bool operator==(const Scalar& b) const;
  bool operator!=(const Scalar& b) const { return !(*this == b); }

 private:
  friend class Field;
  Scalar(mpq_class v, unsigned long p) : v_(std::move(v)), p_(p) { reduce(); }
  void reduce();
  static unsigned long join(const Scalar& a, const Scalar& b);

  mpq_class v_{0};
  unsigned long p_{0};
};

}  // namespace posetbocs
