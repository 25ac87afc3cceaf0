#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "bondle/algebra.hpp"
#include "bondle/diagram.hpp"
#include "bondle/solver.hpp"
#include "bondle/weights.hpp"

namespace bondle {

// Sum of a_i u^i in the group ring of Z_m.
struct StateSum {
  std::int64_t m = 1;
  std::vector<Count> coeffs;

  Count total() const {
    Count s = 0;
    for (const auto& a : coeffs) s += a;
    return s;
  }

  friend bool operator==(const StateSum&, const StateSum&) = default;
  friend auto operator<=>(const StateSum& l, const StateSum& r) {
    if (auto c = l.m <=> r.m; c != 0) return c;
    for (std::size_t i = 0; i < std::min(l.coeffs.size(), r.coeffs.size()); ++i) {
      if (l.coeffs[i] < r.coeffs[i]) return std::strong_ordering::less;
      if (r.coeffs[i] < l.coeffs[i]) return std::strong_ordering::greater;
    }
    return l.coeffs.size() <=> r.coeffs.size();
  }
};

// Ascending powers, zero terms omitted: "45", "45u", "3 + 42u^3".
inline std::string render(const StateSum& S) {
  std::string out;
  for (std::size_t i = 0; i < S.coeffs.size(); ++i) {
    const auto& a = S.coeffs[i];
    if (a == 0) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) {
      out += a.str();
      continue;
    }
    if (a != 1) out += a.str();
    out += "u";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

namespace detail {

// Exponent of one coloring: signed phi at each under passage (under colour,
// over colour), phi1 / phi2 at each bond on (role 1 incoming, role 2 incoming).
inline std::int64_t exponent(const BondedDiagram& D, const BoltzmannWeights& W, const Coloring& c) {
  std::int64_t s = 0;
  const auto& ev = D.events();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const auto& e = ev[i];
    switch (e.passage) {
      case Passage::over:
        break;
      case Passage::under:
        s += e.sign * static_cast<std::int64_t>(W.phi.at(c[i], c[D.over_position(e.id)]));
        break;
      case Passage::parallel:
      case Passage::antiparallel:
        if (e.role == 1) {
          const auto& t = e.passage == Passage::parallel ? W.phi1 : W.phi2;
          s += t.at(c[i], c[D.role_position(e.id, 2)]);
        }
        break;
    }
  }
  return mod(s, W.m);
}

inline void require_compatible(const FiniteBondle& B, const BoltzmannWeights& W) {
  if (W.n() != B.n)
    throw Error("weights are " + std::to_string(W.n()) + "x" + std::to_string(W.n()) + " but bondle has n = " +
                std::to_string(B.n));
}

}  // namespace detail

inline std::int64_t weight_of_coloring(const BondedDiagram& D, const FiniteBondle& B, const BoltzmannWeights& W,
                                       const Coloring& c) {
  detail::require_compatible(B, W);
  if (!compile(D, B).satisfied(c)) throw Error("invalid coloring: it violates the diagram's coloring rules");
  return detail::exponent(D, W, c);
}

inline StateSum state_sum(const BondedDiagram& D, const FiniteBondle& B, const BoltzmannWeights& W) {
  detail::require_compatible(B, W);
  const auto sys = compile(D, B);
  const auto m = static_cast<std::size_t>(W.m);
  const auto parts = detail::parallel_fold<std::vector<std::uint64_t>>(
      sys, [m] { return std::vector<std::uint64_t>(m, 0); },
      [&](std::vector<std::uint64_t>& acc, const Coloring& c) { ++acc[static_cast<std::size_t>(detail::exponent(D, W, c))]; });
  StateSum S{W.m, std::vector<Count>(m, 0)};
  for (const auto& p : parts)
    for (std::size_t i = 0; i < m; ++i) S.coeffs[i] += p[i];
  return S;
}

}  // namespace bondle
