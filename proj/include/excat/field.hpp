#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace excat {

// Exact scalar arithmetic over Q or a prime field F_p (p < 2^31).
// Elements are stored as mpq_class; over F_p values are canonical
// residues 0..p-1 with denominator 1.
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(long p);

  bool is_prime_field() const { return p_ != 0; }
  long characteristic() const { return p_; }

  mpq_class canon(const mpq_class& v) const;
  mpq_class add(const mpq_class& a, const mpq_class& b) const { return canon(a + b); }
  mpq_class sub(const mpq_class& a, const mpq_class& b) const { return canon(a - b); }
  mpq_class mul(const mpq_class& a, const mpq_class& b) const { return canon(a * b); }
  mpq_class neg(const mpq_class& a) const { return canon(-a); }
  mpq_class inv(const mpq_class& a) const;
  mpq_class div(const mpq_class& a, const mpq_class& b) const { return mul(a, inv(b)); }
  bool is_zero(const mpq_class& a) const { return canon(a) == 0; }
  mpq_class one() const { return mpq_class(1); }
  mpq_class zero() const { return mpq_class(0); }
  mpq_class from_long(long v) const { return canon(mpq_class(v)); }

  // All field elements, only available over F_p.
  std::vector<mpq_class> enumerate() const;

  std::string to_string(const mpq_class& v) const;
  std::optional<mpq_class> parse(const std::string& s) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

  std::string describe() const;

 private:
  explicit Field(long p) : p_(p) {}
  long p_;  // 0 means Q
};

}  // namespace excat
