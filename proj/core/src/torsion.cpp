#include "graded/torsion.hpp"

#include <stdexcept>

namespace graded {

bool TorsionGroup::elementary2() const {
  for (unsigned l : ell)
    if (l != 2) return false;
  return true;
}

unsigned long TorsionGroup::order() const {
  unsigned long n = 1;
  for (unsigned l : ell) n *= (unsigned long)l * l;
  return n;
}

unsigned long TorsionGroup::exponent() const {
  unsigned long e = 1;
  for (unsigned l : ell) e = lcm_u(e, l);
  return e;
}

TorsionElement TorsionElement::identity(const TorsionGroup& T) {
  TorsionElement x;
  x.e.assign(2 * T.rank(), 0);
  return x;
}

bool TorsionElement::is_identity() const {
  for (uint8_t v : e)
    if (v) return false;
  return true;
}

TorsionElement mul(const TorsionGroup& T, const TorsionElement& x, const TorsionElement& y) {
  TorsionElement z;
  z.e.resize(x.e.size());
  for (size_t k = 0; k < x.e.size(); ++k)
    z.e[k] = (uint8_t)((x.e[k] + y.e[k]) % T.ell[k / 2]);
  return z;
}

TorsionElement inv(const TorsionGroup& T, const TorsionElement& x) {
  TorsionElement z;
  z.e.resize(x.e.size());
  for (size_t k = 0; k < x.e.size(); ++k) {
    unsigned l = T.ell[k / 2];
    z.e[k] = (uint8_t)((l - x.e[k]) % l);
  }
  return z;
}

TorsionElement pow(const TorsionGroup& T, const TorsionElement& x, long n) {
  TorsionElement z;
  z.e.resize(x.e.size());
  for (size_t k = 0; k < x.e.size(); ++k) {
    long l = (long)T.ell[k / 2];
    long v = ((long)x.e[k] * n) % l;
    if (v < 0) v += l;
    z.e[k] = (uint8_t)v;
  }
  return z;
}

unsigned long element_index(const TorsionGroup& T, const TorsionElement& x) {
  unsigned long idx = 0;
  for (size_t k = 0; k < x.e.size(); ++k) idx = idx * T.ell[k / 2] + x.e[k];
  return idx;
}

TorsionElement element_at(const TorsionGroup& T, unsigned long idx) {
  TorsionElement x;
  x.e.assign(2 * T.rank(), 0);
  for (size_t k = x.e.size(); k-- > 0;) {
    unsigned l = T.ell[k / 2];
    x.e[k] = (uint8_t)(idx % l);
    idx /= l;
  }
  return x;
}

std::vector<TorsionElement> all_elements(const TorsionGroup& T) {
  std::vector<TorsionElement> v;
  v.reserve(T.order());
  for (unsigned long i = 0; i < T.order(); ++i) v.push_back(element_at(T, i));
  return v;
}

TorsionElement basis_a(const TorsionGroup& T, unsigned k) {
  TorsionElement x = TorsionElement::identity(T);
  x.e[2 * k] = 1;
  return x;
}

TorsionElement basis_b(const TorsionGroup& T, unsigned k) {
  TorsionElement x = TorsionElement::identity(T);
  x.e[2 * k + 1] = 1;
  return x;
}

std::vector<unsigned> beta_exponents(const TorsionGroup& T, const TorsionElement& u,
                                     const TorsionElement& v) {
  std::vector<unsigned> out(T.rank());
  for (unsigned k = 0; k < T.rank(); ++k) {
    long l = (long)T.ell[k];
    long x = ((long)u.e[2 * k] * v.e[2 * k + 1] - (long)u.e[2 * k + 1] * v.e[2 * k]) % l;
    if (x < 0) x += l;
    out[k] = (unsigned)x;
  }
  return out;
}

Cyclotomic beta_eval(const TorsionGroup& T, const TorsionElement& u, const TorsionElement& v) {
  Cyclotomic r(1L);
  auto ex = beta_exponents(T, u, v);
  for (unsigned k = 0; k < T.rank(); ++k)
    if (ex[k]) r *= Cyclotomic::root_of_unity(T.ell[k], (long)ex[k]);
  return r.embedded(lcm_u(r.conductor(), T.conductor()));
}

bool beta_bit(const TorsionGroup& T, const TorsionElement& u, const TorsionElement& v) {
  unsigned acc = 0;
  for (unsigned k = 0; k < T.rank(); ++k)
    acc ^= (u.e[2 * k] & v.e[2 * k + 1]) ^ (u.e[2 * k + 1] & v.e[2 * k]);
  return (acc & 1) != 0;
}

int quad_sign(const TorsionGroup& T, const TorsionElement& t) {
  if (!T.elementary2())
    throw std::domain_error("quadratic sign form needs an elementary 2-group");
  unsigned acc = 0;
  for (unsigned k = 0; k < T.rank(); ++k) acc ^= t.e[2 * k] & t.e[2 * k + 1];
  return (acc & 1) ? -1 : 1;
}

std::string render_element(const TorsionGroup& T, const TorsionElement& x) {
  if (T.rank() == 0) return "e";
  std::string s;
  for (unsigned k = 0; k < T.rank(); ++k) {
    if (k) s += ' ';
    s += (char)('0' + x.e[2 * k]);
    s += (char)('0' + x.e[2 * k + 1]);
  }
  return s;
}

TorsionElement parse_element(const TorsionGroup& T, const std::string& s) {
  if (s == "e") return TorsionElement::identity(T);
  std::vector<uint8_t> digits;
  for (char c : s) {
    if (c == ' ' || c == '\t') continue;
    if (c < '0' || c > '9') throw std::domain_error("bad torsion element text: " + s);
    digits.push_back((uint8_t)(c - '0'));
  }
  if (digits.size() != 2 * (size_t)T.rank())
    throw std::domain_error("torsion element text has wrong length: " + s);
  TorsionElement x;
  x.e = std::move(digits);
  for (size_t k = 0; k < x.e.size(); ++k)
    if (x.e[k] >= T.ell[k / 2])
      throw std::domain_error("torsion element exponent out of range: " + s);
  return x;
}

}  // namespace graded
