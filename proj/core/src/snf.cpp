#include "graded/snf.hpp"

#include <cstdlib>
#include <stdexcept>

namespace graded {

namespace {

void add_row(std::vector<std::vector<mpz_class>>& M, size_t dst, size_t src,
             const mpz_class& factor) {
  for (size_t j = 0; j < M[dst].size(); ++j) M[dst][j] += factor * M[src][j];
}

}  // namespace

SmithNormalForm smith_left(std::vector<std::vector<mpz_class>> A) {
  size_t n = A.size();
  size_t m = n ? A[0].size() : 0;
  for (const auto& row : A)
    if (row.size() != m) throw std::domain_error("ragged relation matrix");

  SmithNormalForm out;
  out.U.assign(n, std::vector<mpz_class>(n, 0));
  for (size_t i = 0; i < n; ++i) out.U[i][i] = 1;

  size_t steps = std::min(n, m);
  for (size_t k = 0; k < steps; ++k) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      size_t pi = k, pj = k;
      bool found = false;
      for (size_t i = k; i < n; ++i)
        for (size_t j = k; j < m; ++j) {
          if (A[i][j] == 0) continue;
          if (!found || cmp(abs(A[i][j]), abs(A[pi][pj])) < 0) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) {
        k = steps;  // trailing block is zero, done
        break;
      }
      std::swap(A[pi], A[k]);
      std::swap(out.U[pi], out.U[k]);
      for (size_t i = 0; i < n; ++i) std::swap(A[i][pj], A[i][k]);

      bool clean = true;
      for (size_t i = k + 1; i < n; ++i) {
        if (A[i][k] == 0) continue;
        mpz_class q = A[i][k] / A[k][k];
        if (q != 0) {
          add_row(A, i, k, -q);
          add_row(out.U, i, k, -q);
        }
        if (A[i][k] != 0) clean = false;  // remainder smaller than pivot
      }
      for (size_t j = k + 1; j < m; ++j) {
        if (A[k][j] == 0) continue;
        mpz_class q = A[k][j] / A[k][k];
        if (q != 0)
          for (size_t i = 0; i < n; ++i) A[i][j] -= q * A[i][k];
        if (A[k][j] != 0) clean = false;
      }
      if (!clean) continue;

      bool divisible = true;
      for (size_t i = k + 1; i < n && divisible; ++i)
        for (size_t j = k + 1; j < m && divisible; ++j)
          if (A[i][j] % A[k][k] != 0) {
            add_row(A, k, i, 1);
            add_row(out.U, k, i, 1);
            divisible = false;
          }
      if (!divisible) continue;

      if (A[k][k] < 0) {
        for (size_t j = 0; j < m; ++j) A[k][j] = -A[k][j];
        for (size_t j = 0; j < n; ++j) out.U[k][j] = -out.U[k][j];
      }
      break;
    }
    if (k == steps) break;
  }

  out.diag.resize(std::min(n, m));
  for (size_t k = 0; k < out.diag.size(); ++k) out.diag[k] = A[k][k];
  return out;
}

AbelianInvariants abelian_quotient(
    unsigned generators, const std::vector<std::vector<mpz_class>>& relation_columns) {
  std::vector<std::vector<mpz_class>> A(generators,
                                        std::vector<mpz_class>(relation_columns.size(), 0));
  for (size_t j = 0; j < relation_columns.size(); ++j) {
    if (relation_columns[j].size() != generators)
      throw std::domain_error("relation column has wrong length");
    for (size_t i = 0; i < generators; ++i) A[i][j] = relation_columns[j][i];
  }
  SmithNormalForm snf = smith_left(std::move(A));
  AbelianInvariants inv;
  unsigned rank = 0;
  for (const mpz_class& d : snf.diag) {
    if (d == 0) continue;
    ++rank;
    if (d > 1) inv.torsion.push_back(d.get_ui());
  }
  inv.free_rank = generators - rank;
  return inv;
}

}  // namespace graded
