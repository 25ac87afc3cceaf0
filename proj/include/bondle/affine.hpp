#pragma once

#include <array>
#include <optional>
#include <string>

#include "bondle/algebra.hpp"
#include "bondle/diagram.hpp"
#include "bondle/modular.hpp"
#include "bondle/solver.hpp"

namespace bondle {

// op(x, y) = alpha x + beta y + gamma over Z_n.
struct AffineForm {
  std::int64_t alpha = 0, beta = 0, gamma = 0;
};

// Recovers the affine form of a table, or nullopt if the table is not affine.
inline std::optional<AffineForm> affine_form(const Table& t) {
  const auto n = static_cast<std::int64_t>(t.size());
  if (n == 0) return std::nullopt;
  AffineForm f;
  f.gamma = t.at(0, 0);
  f.alpha = n > 1 ? mod(static_cast<std::int64_t>(t.at(1, 0)) - f.gamma, n) : 0;
  f.beta = n > 1 ? mod(static_cast<std::int64_t>(t.at(0, 1)) - f.gamma, n) : 0;
  for (std::int64_t x = 0; x < n; ++x)
    for (std::int64_t y = 0; y < n; ++y)
      if (t.at(static_cast<Element>(x), static_cast<Element>(y)) != mod(f.alpha * x + f.beta * y + f.gamma, n))
        return std::nullopt;
  return f;
}

// Counts colorings by linear algebra over Z_n. The affine coefficients are
// read from the tables, so any bondle whose operations are affine qualifies.
inline Count count_colorings_affine(const BondedDiagram& D, const FiniteBondle& B) {
  const auto sys = compile(D, B);
  const auto n = static_cast<std::int64_t>(B.n);
  std::array<std::optional<AffineForm>, 6> forms;
  auto form = [&](Op op) -> const AffineForm& {
    auto& f = forms[static_cast<std::size_t>(op)];
    if (!f) {
      f = affine_form(*sys.table(op));
      if (!f) {
        static const char* names[] = {"copy", "star", "starbar", "r1", "r2", "r3"};
        throw Error(std::string("bondle is not affine: ") + names[static_cast<std::size_t>(op)] + " is not of the form ax+by+c");
      }
    }
    return *f;
  };

  LinearSystem L;
  L.cols = sys.variables;
  for (const auto& c : sys.constraints) {
    std::vector<std::int64_t> row(sys.variables, 0);
    row[c.out] += 1;
    std::int64_t rhs = 0;
    if (c.op == Op::copy) {
      row[c.left] -= 1;
    } else {
      const auto& f = form(c.op);
      row[c.left] -= f.alpha;
      row[c.right] -= f.beta;
      rhs = f.gamma;
    }
    L.add_row(std::move(row), rhs);
  }
  return count_solutions_mod(L, n);
}

}  // namespace bondle
