#pragma once

#include "graded/cyclotomic.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace graded {

// T = (Z_l1 x Z_l1) x ... x (Z_lr x Z_lr) with symplectic basis
// a_1, b_1, ..., a_r, b_r and beta(a_k, b_k) = zeta_{l_k}.
struct TorsionGroup {
  std::vector<unsigned> ell;  // l_1..l_r, each a prime power >= 2

  unsigned rank() const { return (unsigned)ell.size(); }
  bool elementary2() const;
  unsigned long order() const;     // prod l_k^2
  unsigned long exponent() const;  // lcm of l_k, 1 when r = 0
  unsigned long conductor() const { return lcm_u(4, exponent()); }

  bool operator==(const TorsionGroup& o) const { return ell == o.ell; }
};

struct TorsionElement {
  std::vector<uint8_t> e;  // (i_1, j_1, ..., i_r, j_r), entry 2k mod l_k

  static TorsionElement identity(const TorsionGroup& T);
  bool is_identity() const;

  bool operator==(const TorsionElement& o) const { return e == o.e; }
  bool operator!=(const TorsionElement& o) const { return e != o.e; }
  bool operator<(const TorsionElement& o) const { return e < o.e; }
};

TorsionElement mul(const TorsionGroup& T, const TorsionElement& x, const TorsionElement& y);
TorsionElement inv(const TorsionGroup& T, const TorsionElement& x);
TorsionElement pow(const TorsionGroup& T, const TorsionElement& x, long n);

// dense rank in [0, |T|), mixed radix over the exponent vector
unsigned long element_index(const TorsionGroup& T, const TorsionElement& x);
TorsionElement element_at(const TorsionGroup& T, unsigned long idx);
std::vector<TorsionElement> all_elements(const TorsionGroup& T);

// basis element a_k / b_k (0-based k)
TorsionElement basis_a(const TorsionGroup& T, unsigned k);
TorsionElement basis_b(const TorsionGroup& T, unsigned k);

// exponent of beta(u, v) per pair: i_k(u) j_k(v) - j_k(u) i_k(v) mod l_k
std::vector<unsigned> beta_exponents(const TorsionGroup& T, const TorsionElement& u,
                                     const TorsionElement& v);
Cyclotomic beta_eval(const TorsionGroup& T, const TorsionElement& u, const TorsionElement& v);

// elementary-2 fast form of beta as an F2 value
bool beta_bit(const TorsionGroup& T, const TorsionElement& u, const TorsionElement& v);

// transpose sign of X_t for elementary 2-groups: (-1)^{sum i_k j_k}
int quad_sign(const TorsionGroup& T, const TorsionElement& t);

// text form "i1j1 i2j2 ..." with one digit pair per symplectic pair;
// identity of the trivial group renders as "e"
std::string render_element(const TorsionGroup& T, const TorsionElement& x);
TorsionElement parse_element(const TorsionGroup& T, const std::string& s);

}  // namespace graded
