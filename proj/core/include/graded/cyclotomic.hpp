#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graded {

using Rational = mpq_class;

// Element of Q(zeta_m) on the power basis 1, z, ..., z^{phi(m)-1} reduced
// modulo the m-th cyclotomic polynomial. Each value carries its own
// conductor; mixed-conductor arithmetic embeds both sides into Q(zeta_lcm).
class Cyclotomic {
public:
  Cyclotomic();  // zero in Q = Q(zeta_1)
  explicit Cyclotomic(const Rational& r);
  explicit Cyclotomic(long n);

  static Cyclotomic root_of_unity(unsigned long m, long k);

  unsigned long conductor() const { return m_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  Cyclotomic embedded(unsigned long n) const;  // into Q(zeta_n), m | n

  Cyclotomic operator-() const;
  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);

  Cyclotomic inverse() const;  // throws std::domain_error on zero
  Cyclotomic pow(long e) const;

  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  std::optional<Rational> as_rational() const;

  // (m, k) with *this == zeta_m^k, if the value is a root of unity.
  std::optional<std::pair<unsigned long, unsigned long>> as_root_of_unity() const;

  // Deterministic square root of a root of unity: zeta_m^k -> zeta_m^{k/2}
  // when k is even, else a root in conductor m or 2m.
  Cyclotomic sqrt_root_of_unity() const;

  // Deterministic c with c^e == *this, for *this a root of unity.
  Cyclotomic nth_root_of_unity_value(unsigned long e) const;

  std::string str() const;

private:
  unsigned long m_;
  std::vector<Rational> c_;  // length phi(m_)

  void reduce_from(std::vector<Rational>& raw);  // raw may exceed phi(m_)
};

unsigned long euler_phi(unsigned long m);
unsigned long lcm_u(unsigned long a, unsigned long b);

}  // namespace graded
