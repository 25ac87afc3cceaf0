#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bondle/algebra.hpp"
#include "bondle/common.hpp"

namespace bondle {

// Dense integer matrix with a right-hand side, interpreted modulo some n.
struct LinearSystem {
  std::size_t cols = 0;
  std::vector<std::vector<std::int64_t>> rows;
  std::vector<std::int64_t> rhs;

  void add_row(std::vector<std::int64_t> row, std::int64_t b) {
    rows.push_back(std::move(row));
    rhs.push_back(b);
  }
};

namespace detail {

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
  return static_cast<std::int64_t>(static_cast<__int128>(a) * b % n);
}

inline int valuation(std::int64_t v, std::int64_t p, int cap) {
  if (v == 0) return cap;
  int k = 0;
  while (v % p == 0 && k < cap) {
    v /= p;
    ++k;
  }
  return k;
}

// Number of solutions of A x = b over Z_{p^e}. Diagonalizes A by row and
// column operations, pivoting on the entry of least p-valuation (every other
// entry in the active block is then a multiple of the pivot).
inline Count count_prime_power(const LinearSystem& S, std::int64_t p, int e) {
  std::int64_t q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  const std::size_t r = S.rows.size(), c = S.cols;
  std::vector<std::vector<std::int64_t>> A(r, std::vector<std::int64_t>(c));
  std::vector<std::int64_t> b(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) A[i][j] = mod(S.rows[i][j], q);
    b[i] = mod(S.rhs[i], q);
  }

  Count count = 1;
  std::size_t rank = 0;
  for (; rank < std::min(r, c); ++rank) {
    std::size_t pi = r, pj = c;
    int best = e;
    for (std::size_t i = rank; i < r && best > 0; ++i)
      for (std::size_t j = rank; j < c; ++j) {
        const int v = valuation(A[i][j], p, e);
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
          if (v == 0) break;
        }
      }
    if (pi == r) break;  // remaining block is zero
    std::swap(A[rank], A[pi]);
    std::swap(b[rank], b[pi]);
    for (auto& row : A) std::swap(row[rank], row[pj]);

    std::int64_t pv = 1;
    for (int k = 0; k < best; ++k) pv *= p;
    // pivot = pv * unit; scale the row so the pivot becomes exactly pv
    const auto unit = A[rank][rank] / pv;
    const auto uinv = *inverse_mod(unit, q);
    for (auto& x : A[rank]) x = mulmod(x, uinv, q);
    b[rank] = mulmod(b[rank], uinv, q);

    for (std::size_t i = 0; i < r; ++i) {
      if (i == rank || A[i][rank] == 0) continue;
      const auto t = A[i][rank] / pv;
      for (std::size_t j = rank; j < c; ++j) A[i][j] = mod(A[i][j] - mulmod(t, A[rank][j], q), q);
      b[i] = mod(b[i] - mulmod(t, b[rank], q), q);
    }
    // Column operations change variables only; the right-hand side is untouched.
    for (std::size_t j = rank + 1; j < c; ++j) A[rank][j] = 0;

    if (b[rank] % pv != 0) return 0;
    count *= pv;
  }
  for (std::size_t i = rank; i < r; ++i)
    if (b[i] != 0) return 0;
  for (std::size_t j = rank; j < c; ++j) count *= q;
  return count;
}

}  // namespace detail

// Number of solutions of A x = b over Z_n, combining prime powers by CRT.
inline Count count_solutions_mod(const LinearSystem& S, std::int64_t n) {
  if (n <= 0) throw Error("modulus must be positive");
  Count total = 1;
  for (auto [p, e] : factorize(n)) {
    total *= detail::count_prime_power(S, p, e);
    if (total == 0) break;
  }
  return total;
}

}  // namespace bondle
