#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "bondle/diagram.hpp"

namespace bondle::test_support {

struct RandomDiagramOptions {
  std::size_t max_events = 6;
  bool allow_bonds = true;
  bool allow_antiparallel = true;
};

// Random valid Gauss code: each crossing or bond contributes two passages,
// placed at uniformly shuffled positions. Not necessarily planar.
template <typename Rng>
BondedDiagram random_diagram(Rng& rng, const RandomDiagramOptions& opt = {}) {
  std::uniform_int_distribution<std::size_t> pieces(0, opt.max_events / 2);
  std::bernoulli_distribution coin(0.5);
  std::vector<Event> events;
  int crossing = 0, bond = 0;
  const auto k = pieces(rng);
  for (std::size_t i = 0; i < k; ++i) {
    const int kind = opt.allow_bonds ? std::uniform_int_distribution<int>(0, opt.allow_antiparallel ? 2 : 1)(rng) : 0;
    if (kind == 0) {
      const int sign = coin(rng) ? 1 : -1;
      ++crossing;
      events.push_back(Event::over(crossing, sign));
      events.push_back(Event::under(crossing, sign));
    } else {
      ++bond;
      events.push_back(kind == 1 ? Event::parallel(bond, 1) : Event::antiparallel(bond, 1));
      events.push_back(kind == 1 ? Event::parallel(bond, 2) : Event::antiparallel(bond, 2));
    }
  }
  std::shuffle(events.begin(), events.end(), rng);
  return BondedDiagram::from_events(std::move(events));
}

// Random n x n table.
template <typename Rng>
Table random_table(Rng& rng, std::size_t n, std::size_t bound) {
  std::uniform_int_distribution<Element> d(0, static_cast<Element>(bound - 1));
  return Table::generate(n, [&](Element, Element) { return d(rng); });
}

}  // namespace bondle::test_support
