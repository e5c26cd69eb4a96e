#include "graded/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace graded {

unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

unsigned long lcm_u(unsigned long a, unsigned long b) {
  return a / std::gcd(a, b) * b;
}

namespace {

using ZPoly = std::vector<mpz_class>;  // coefficient vector, low degree first

// Exact division of integer polynomials, remainder must vanish.
ZPoly zpoly_divexact(const ZPoly& num, const ZPoly& den) {
  ZPoly r = num;
  ZPoly q(num.size() - den.size() + 1, mpz_class(0));
  for (long i = (long)r.size() - 1; i >= (long)den.size() - 1; --i) {
    mpz_class c = r[i] / den.back();
    q[i - den.size() + 1] = c;
    if (c != 0)
      for (size_t j = 0; j < den.size(); ++j)
        r[i - den.size() + 1 + j] -= c * den[j];
  }
  for (const auto& x : r)
    if (x != 0) throw std::logic_error("cyclotomic polynomial division not exact");
  return q;
}

ZPoly cyclotomic_poly(unsigned long m) {
  // (x^m - 1) divided by Phi_d for every proper divisor d
  ZPoly num(m + 1, mpz_class(0));
  num[0] = -1;
  num[m] = 1;
  for (unsigned long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = zpoly_divexact(num, cyclotomic_poly(d));
  }
  return num;
}

struct ConductorTable {
  unsigned long m;
  unsigned long phi;
  ZPoly poly;                          // Phi_m, monic, degree phi
  std::vector<std::vector<mpq_class>> power;  // x^k mod Phi_m for k in [0, 2m)
};

const ConductorTable& table_for(unsigned long m) {
  static std::mutex mu;
  static std::map<unsigned long, ConductorTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;

  ConductorTable t;
  t.m = m;
  t.phi = euler_phi(m);
  t.poly = cyclotomic_poly(m);
  // remainders of x^k; enough for products of basis-reduced values and for
  // exponents up to 2m used by root-of-unity construction
  unsigned long top = std::max(2 * t.phi, 2 * m) + 1;
  std::vector<mpq_class> cur(t.phi, mpq_class(0));
  cur[0] = 1;
  t.power.push_back(cur);
  for (unsigned long k = 1; k < top; ++k) {
    std::vector<mpq_class> nxt(t.phi, mpq_class(0));
    // multiply by x, then fold the overflow term via Phi_m
    mpq_class high = cur[t.phi - 1];
    for (unsigned long i = t.phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    nxt[0] = 0;
    if (high != 0)
      for (unsigned long i = 0; i < t.phi; ++i)
        nxt[i] -= high * mpq_class(t.poly[i]);
    t.power.push_back(nxt);
    cur = std::move(nxt);
  }
  auto [pos, ok] = cache.emplace(m, std::move(t));
  (void)ok;
  return pos->second;
}

}  // namespace

Cyclotomic::Cyclotomic() : m_(1), c_(1, Rational(0)) {}

Cyclotomic::Cyclotomic(const Rational& r) : m_(1), c_(1, r) {
  c_[0].canonicalize();
}

Cyclotomic::Cyclotomic(long n) : m_(1), c_(1, Rational(n)) {}

void Cyclotomic::reduce_from(std::vector<Rational>& raw) {
  const ConductorTable& t = table_for(m_);
  c_.assign(t.phi, Rational(0));
  for (size_t k = 0; k < raw.size(); ++k) {
    if (raw[k] == 0) continue;
    const auto& row = t.power[k];
    for (unsigned long i = 0; i < t.phi; ++i) c_[i] += raw[k] * row[i];
  }
}

Cyclotomic Cyclotomic::root_of_unity(unsigned long m, long k) {
  if (m < 1) throw std::domain_error("conductor must be positive");
  long kk = k % (long)m;
  if (kk < 0) kk += m;
  Cyclotomic z;
  z.m_ = m;
  std::vector<Rational> raw((size_t)kk + 1, Rational(0));
  raw[kk] = 1;
  z.reduce_from(raw);
  return z;
}

Cyclotomic Cyclotomic::embedded(unsigned long n) const {
  if (n == m_) return *this;
  if (n % m_ != 0) throw std::domain_error("embedding requires divisible conductors");
  unsigned long step = n / m_;
  Cyclotomic z;
  z.m_ = n;
  std::vector<Rational> raw(c_.size() * step, Rational(0));
  raw.resize((c_.size() - 1) * step + 1);
  for (size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
  z.reduce_from(raw);
  return z;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic z = *this;
  for (auto& x : z.c_) x = -x;
  return z;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  unsigned long n = lcm_u(m_, o.m_);
  Cyclotomic a = embedded(n), b = o.embedded(n);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  unsigned long n = lcm_u(m_, o.m_);
  Cyclotomic a = embedded(n), b = o.embedded(n);
  std::vector<Rational> raw(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      raw[i + j] += a.c_[i] * b.c_[j];
    }
  }
  Cyclotomic z;
  z.m_ = n;
  z.reduce_from(raw);
  return z;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) { return *this = *this + o; }
Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this = *this - o; }
Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

namespace {

using QPoly = std::vector<mpq_class>;

size_t qdeg(const QPoly& p) {
  size_t d = p.size();
  while (d > 0 && p[d - 1] == 0) --d;
  return d;  // number of meaningful coefficients; 0 means zero poly
}

}  // namespace

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero cyclotomic value");
  const ConductorTable& t = table_for(m_);
  // extended Euclid on (Phi_m, value); Phi_m is irreducible so the gcd is a
  // nonzero constant and the Bezout coefficient of the value is the inverse
  QPoly r0(t.poly.size());
  for (size_t i = 0; i < t.poly.size(); ++i) r0[i] = mpq_class(t.poly[i]);
  QPoly r1(c_.begin(), c_.end());
  QPoly s0(1, mpq_class(0)), s1(1, mpq_class(1));
  while (true) {
    size_t d1 = qdeg(r1);
    if (d1 == 0) throw std::logic_error("unexpected zero remainder in cyclotomic inverse");
    if (d1 == 1) break;  // r1 is a nonzero constant
    size_t d0 = qdeg(r0);
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(s0, s1);
      continue;
    }
    // kill the top coefficient of r0 with r1
    mpq_class f = r0[d0 - 1] / r1[d1 - 1];
    size_t shift = d0 - d1;
    for (size_t i = 0; i < d1; ++i) r0[shift + i] -= f * r1[i];
    if (s1.size() + shift > s0.size()) s0.resize(s1.size() + shift, mpq_class(0));
    for (size_t i = 0; i < s1.size(); ++i) s0[shift + i] -= f * s1[i];
  }
  mpq_class c = r1[0];
  Cyclotomic z;
  z.m_ = m_;
  std::vector<Rational> raw(s1.size());
  for (size_t i = 0; i < s1.size(); ++i) raw[i] = s1[i] / c;
  z.reduce_from(raw);
  return z;
}

Cyclotomic Cyclotomic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyclotomic acc(1L);
  Cyclotomic base = *this;
  unsigned long k = (unsigned long)e;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  unsigned long n = lcm_u(m_, o.m_);
  Cyclotomic a = embedded(n), b = o.embedded(n);
  return a.c_ == b.c_;
}

bool Cyclotomic::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyclotomic::is_one() const {
  if (c_[0] != 1) return false;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

std::optional<Rational> Cyclotomic::as_rational() const {
  if (!is_rational()) return std::nullopt;
  return c_[0];
}

std::optional<std::pair<unsigned long, unsigned long>> Cyclotomic::as_root_of_unity() const {
  for (unsigned long k = 0; k < m_; ++k)
    if (*this == root_of_unity(m_, (long)k)) return std::make_pair(m_, k);
  return std::nullopt;
}

Cyclotomic Cyclotomic::sqrt_root_of_unity() const {
  auto ru = as_root_of_unity();
  if (!ru) throw std::domain_error("square root requested for a non-root-of-unity value");
  auto [m, k] = *ru;
  if (k % 2 == 0) return root_of_unity(m, (long)(k / 2));
  if (m % 2 == 1) return root_of_unity(m, (long)((k + m) / 2));
  return root_of_unity(2 * m, (long)k);
}

Cyclotomic Cyclotomic::nth_root_of_unity_value(unsigned long e) const {
  if (e == 0) throw std::domain_error("zeroth root");
  auto ru = as_root_of_unity();
  if (!ru) throw std::domain_error("nth root requested for a non-root-of-unity value");
  auto [m, k] = *ru;
  if (k % e == 0) return root_of_unity(m, (long)(k / e));
  return root_of_unity(m * e, (long)k);
}

std::string Cyclotomic::str() const {
  std::ostringstream os;
  os << "Q(z" << m_ << ")[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i].get_str();
  }
  os << "]";
  return os.str();
}

}  // namespace graded
