#pragma once

#include <random>
#include <string>

#include "bondle/diagram.hpp"

namespace bondle {

struct AppliedMove {
  BondedDiagram result;
  std::string description;  // e.g. "r1(3,-)" or "r2(0)"
};

// One uniformly chosen kink or poke at a uniformly chosen semiarc.
template <typename Rng>
AppliedMove random_move(const BondedDiagram& D, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pos(0, D.events().size());
  std::bernoulli_distribution coin(0.5);
  const auto p = pos(rng);
  if (coin(rng)) {
    const int sign = coin(rng) ? 1 : -1;
    return {insert_r1(D, p, sign), "r1(" + std::to_string(p) + "," + (sign > 0 ? "+" : "-") + ")"};
  }
  return {insert_r2(D, p, p), "r2(" + std::to_string(p) + ")"};
}

}  // namespace bondle
