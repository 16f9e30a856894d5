#include "excat/field.hpp"

namespace excat {

namespace {

bool is_prime_long(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

Field Field::prime(long p) {
  if (!is_prime_long(p)) throw std::invalid_argument("Field::prime: " + std::to_string(p) + " is not prime");
  if (p >= (1L << 31)) throw std::invalid_argument("Field::prime: modulus must be < 2^31");
  return Field(p);
}

mpq_class Field::canon(const mpq_class& v) const {
  mpq_class c = v;
  c.canonicalize();
  if (p_ == 0) return c;
  // In F_p the denominator is invertible; fold it into the numerator.
  mpz_class num = c.get_num();
  mpz_class den = c.get_den();
  mpz_class p(p_);
  mpz_class dmod = den % p;
  if (dmod < 0) dmod += p;
  mpz_class dinv;
  if (mpz_invert(dinv.get_mpz_t(), dmod.get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::domain_error("Field::canon: denominator not invertible mod p");
  mpz_class r = (num % p) * dinv % p;
  if (r < 0) r += p;
  return mpq_class(r);
}

mpq_class Field::inv(const mpq_class& a) const {
  mpq_class c = canon(a);
  if (c == 0) throw std::domain_error("Field::inv: division by zero");
  if (p_ == 0) return 1 / c;
  mpz_class p(p_), x = c.get_num(), xinv;
  mpz_invert(xinv.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return mpq_class(xinv);
}

std::vector<mpq_class> Field::enumerate() const {
  if (p_ == 0) throw std::logic_error("Field::enumerate: Q is infinite");
  std::vector<mpq_class> out;
  out.reserve(static_cast<size_t>(p_));
  for (long i = 0; i < p_; ++i) out.emplace_back(i);
  return out;
}

std::string Field::to_string(const mpq_class& v) const {
  return canon(v).get_str();
}

std::optional<mpq_class> Field::parse(const std::string& s) const {
  mpq_class v;
  if (v.set_str(s, 10) != 0) return std::nullopt;
  if (v.get_den() == 0) return std::nullopt;
  return canon(v);
}

std::string Field::describe() const {
  return p_ == 0 ? std::string("Q") : "F_" + std::to_string(p_);
}

}  // namespace excat
