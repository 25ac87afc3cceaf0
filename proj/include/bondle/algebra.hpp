#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bondle/common.hpp"

namespace bondle {

// Parameters of the affine family on Z_n:
//   x*y = a x + (1-a) y,  x /y = a^-1 x + (1-a^-1) y,
//   R1 = b x + (1-b) y,   R2 = a(1-b) x + (b + (1-a)(1-b)) y,
//   R3 = m x + (1-m) y    (absent when m is unset).
struct AffineParams {
  std::int64_t a = 1;
  std::int64_t b = 0;
  std::optional<std::int64_t> m;

  friend bool operator==(const AffineParams&, const AffineParams&) = default;
};

// Finite bondle on {0..n-1}. `starbar` is the right inverse of `star`.
// `r3` is only needed to color anti-parallel bonds.
struct FiniteBondle {
  std::size_t n = 0;
  Table star;
  Table starbar;
  Table r1;
  Table r2;
  std::optional<Table> r3;
  std::optional<AffineParams> affine;

  bool has_r3() const noexcept { return r3.has_value(); }

  friend bool operator==(const FiniteBondle&, const FiniteBondle&) = default;
};

namespace detail {

inline void require_table(const Table& t, std::size_t n, const char* name) {
  if (t.size() != n)
    throw Error(std::string(name) + ": table is " + std::to_string(t.size()) + "x" + std::to_string(t.size()) +
                ", expected " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t i = 0; i < t.cells().size(); ++i)
    if (t.cells()[i] >= n)
      throw Error(std::string(name) + ": entry (" + std::to_string(i / n) + "," + std::to_string(i % n) + ") = " +
                  std::to_string(t.cells()[i]) + " outside [0," + std::to_string(n) + ")");
}

}  // namespace detail

// Builds a bondle from explicit tables. Checks shape and closure only; the
// axioms are left to check_quandle / check_singquandle / check_bondle.
inline FiniteBondle new_table_bondle(std::size_t n, Table star, Table starbar, Table r1, Table r2,
                                     std::optional<Table> r3 = std::nullopt) {
  if (n == 0) throw Error("carrier size must be positive");
  detail::require_table(star, n, "star");
  detail::require_table(starbar, n, "starbar");
  detail::require_table(r1, n, "r1");
  detail::require_table(r2, n, "r2");
  if (r3) detail::require_table(*r3, n, "r3");
  return FiniteBondle{n, std::move(star), std::move(starbar), std::move(r1), std::move(r2), std::move(r3), std::nullopt};
}

using Rows = std::vector<std::vector<std::int64_t>>;

inline FiniteBondle new_table_bondle(std::size_t n, const Rows& star, const Rows& starbar, const Rows& r1,
                                     const Rows& r2, const std::optional<Rows>& r3 = std::nullopt) {
  if (n == 0) throw Error("carrier size must be positive");
  const auto bound = static_cast<std::int64_t>(n);
  std::optional<Table> t3;
  if (r3) t3 = table_from_rows(*r3, n, bound, "r3");
  return new_table_bondle(n, table_from_rows(star, n, bound, "star"), table_from_rows(starbar, n, bound, "starbar"),
                          table_from_rows(r1, n, bound, "r1"), table_from_rows(r2, n, bound, "r2"), std::move(t3));
}

// ---------------------------------------------------------------------------
// Number theory helpers

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline std::optional<std::int64_t> inverse_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r0 = n, r1 = mod(a, n), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const auto q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
  }
  if (r0 != 1) return std::nullopt;
  return mod(s0, n);
}

// Trial division; returns (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Distinct odd primes (p, q) with p < q and n = p q, if n has that shape.
inline std::optional<std::pair<std::int64_t, std::int64_t>> odd_semiprime(std::int64_t n) {
  if (n < 15) return std::nullopt;
  const auto f = factorize(n);
  if (f.size() != 2 || f[0].second != 1 || f[1].second != 1 || f[0].first == 2) return std::nullopt;
  return std::make_pair(f[0].first, f[1].first);
}

// The divisibility condition on m: (p | m and q | m-1) or (p | m-1 and q | m).
inline bool affine_r3_admissible(std::int64_t p, std::int64_t q, std::int64_t m) {
  return (mod(m, p) == 0 && mod(m - 1, q) == 0) || (mod(m - 1, p) == 0 && mod(m, q) == 0);
}

// Fills the affine tables without checking any hypothesis. Used both by the
// checked constructors below and to force-build structures outside the
// admissible family.
inline FiniteBondle affine_tables(std::int64_t n, std::int64_t a, std::int64_t b, std::optional<std::int64_t> m) {
  if (n <= 0) throw Error("carrier size must be positive");
  const auto ainv = inverse_mod(a, n);
  if (!ainv) throw Error("a = " + std::to_string(a) + " is not invertible modulo " + std::to_string(n));
  auto lin = [n](std::int64_t alpha, std::int64_t beta) {
    return Table::generate(static_cast<std::size_t>(n), [=](Element x, Element y) {
      return static_cast<Element>(mod(mod(alpha, n) * x + mod(beta, n) * y, n));
    });
  };
  FiniteBondle B;
  B.n = static_cast<std::size_t>(n);
  B.star = lin(a, 1 - a);
  B.starbar = lin(*ainv, 1 - *ainv);
  B.r1 = lin(b, 1 - b);
  B.r2 = lin(a * (1 - b), b + (1 - a) * (1 - b));
  if (m) B.r3 = lin(*m, 1 - *m);
  B.affine = AffineParams{mod(a, n), mod(b, n), m ? std::optional<std::int64_t>(mod(*m, n)) : std::nullopt};
  return B;
}

// Affine bondle on Z_n for n = pq (distinct odd primes), a a unit and m
// satisfying the divisibility condition.
inline FiniteBondle affine_bondle(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t m) {
  const auto pq = odd_semiprime(n);
  if (!pq) throw Error("n = " + std::to_string(n) + " is not a product of two distinct odd primes");
  if (!inverse_mod(a, n)) throw Error("a = " + std::to_string(a) + " is not invertible modulo " + std::to_string(n));
  const auto [p, q] = *pq;
  if (!affine_r3_admissible(p, q, m))
    throw Error("m = " + std::to_string(m) + " fails the divisibility condition: need (" + std::to_string(p) + "|m and " +
                std::to_string(q) + "|m-1) or (" + std::to_string(p) + "|m-1 and " + std::to_string(q) + "|m)");
  return affine_tables(n, a, b, m);
}

// Affine singquandle (no R3) on any Z_n with a a unit.
inline FiniteBondle affine_singquandle(std::int64_t n, std::int64_t a, std::int64_t b) {
  return affine_tables(n, a, b, std::nullopt);
}

// ---------------------------------------------------------------------------
// Axiom checking

struct Violation {
  std::string axiom;
  std::vector<Element> witness;  // (x), (x,y) or (x,y,z)

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AxiomReport {
  bool passed = true;
  std::vector<Violation> violations;

  void add(Violation v) {
    passed = false;
    violations.push_back(std::move(v));
  }
  void merge(const AxiomReport& other) {
    for (const auto& v : other.violations) add(v);
  }
  std::size_t count(std::string_view axiom) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.axiom == axiom; }));
  }
};

namespace detail {

// An axiom as "lhs == rhs" evaluated at a witness.
struct AxiomSpec {
  const char* id;
  int arity;
  std::function<std::pair<std::int64_t, std::int64_t>(Element, Element, Element)> sides;
};

// Enumerates witnesses in lexicographic order, so each axiom's violations come
// out sorted.
inline void run_axioms(std::size_t n, const std::vector<AxiomSpec>& axioms, AxiomReport& report) {
  for (const auto& ax : axioms) {
    const std::size_t ny = ax.arity >= 2 ? n : 1, nz = ax.arity >= 3 ? n : 1;
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < ny; ++y)
        for (Element z = 0; z < nz; ++z) {
          const auto [lhs, rhs] = ax.sides(x, y, z);
          if (lhs == rhs) continue;
          std::vector<Element> w{x};
          if (ax.arity >= 2) w.push_back(y);
          if (ax.arity >= 3) w.push_back(z);
          report.add({ax.id, std::move(w)});
        }
  }
}

}  // namespace detail

inline AxiomReport check_quandle(const FiniteBondle& B) {
  const auto& s = B.star;
  const auto& sb = B.starbar;
  AxiomReport report;
  detail::run_axioms(
      B.n,
      {
          {"q-idempotent", 1, [&](Element x, Element, Element) { return std::pair<std::int64_t, std::int64_t>(s.at(x, x), x); }},
          {"q-invertible", 2,
           [&](Element x, Element y, Element) {
             // Both halves must hold; report lhs/rhs of the first that fails.
             const Element a = sb.at(s.at(x, y), y);
             if (a != x) return std::pair<std::int64_t, std::int64_t>(a, x);
             return std::pair<std::int64_t, std::int64_t>(s.at(sb.at(x, y), y), x);
           }},
          {"q-distributive", 3,
           [&](Element x, Element y, Element z) {
             return std::pair<std::int64_t, std::int64_t>(s.at(s.at(x, y), z), s.at(s.at(x, z), s.at(y, z)));
           }},
      },
      report);
  return report;
}

// Quandle failures (if any) come first in the report.
inline AxiomReport check_singquandle(const FiniteBondle& B) {
  AxiomReport report = check_quandle(B);
  const auto& s = B.star;
  const auto& sb = B.starbar;
  const auto& R1 = B.r1;
  const auto& R2 = B.r2;
  using P = std::pair<std::int64_t, std::int64_t>;
  detail::run_axioms(
      B.n,
      {
          {"sRIIIa.1", 3, [&](Element x, Element y, Element z) { return P(s.at(R1.at(sb.at(x, y), z), y), R1.at(x, s.at(z, y))); }},
          {"sRIIIa.2", 3, [&](Element x, Element y, Element z) { return P(R2.at(sb.at(x, y), z), sb.at(R2.at(x, s.at(z, y)), y)); }},
          {"sRIIIb", 3,
           [&](Element x, Element y, Element z) {
             return P(s.at(sb.at(y, R1.at(x, z)), x), sb.at(s.at(y, R2.at(x, z)), z));
           }},
          {"sRII.1", 2, [&](Element x, Element y, Element) { return P(R2.at(x, y), R1.at(y, s.at(x, y))); }},
          {"sRII.2", 2, [&](Element x, Element y, Element) { return P(s.at(R1.at(x, y), R2.at(x, y)), R2.at(y, s.at(x, y))); }},
      },
      report);
  return report;
}

// Requires r3. Includes the singquandle (and quandle) checks.
inline AxiomReport check_bondle(const FiniteBondle& B) {
  if (!B.r3) throw Error("check_bondle: structure has no R3 table");
  AxiomReport report = check_singquandle(B);
  const auto& s = B.star;
  const auto& sb = B.starbar;
  const auto& R3 = *B.r3;
  using P = std::pair<std::int64_t, std::int64_t>;
  detail::run_axioms(
      B.n,
      {
          {"bRIIIa.1", 3, [&](Element x, Element y, Element z) { return P(R3.at(y, sb.at(x, z)), sb.at(R3.at(s.at(y, z), x), z)); }},
          {"bRIIIa.2", 3, [&](Element x, Element y, Element z) { return P(R3.at(x, s.at(y, z)), s.at(R3.at(sb.at(x, z), y), z)); }},
          {"bRIIIb", 3,
           [&](Element x, Element y, Element z) {
             return P(s.at(sb.at(z, R3.at(x, y)), x), s.at(sb.at(z, y), R3.at(y, x)));
           }},
          {"bRII", 2, [&](Element x, Element y, Element) { return P(sb.at(R3.at(x, y), y), R3.at(sb.at(x, R3.at(y, x)), y)); }},
      },
      report);
  return report;
}

}  // namespace bondle
