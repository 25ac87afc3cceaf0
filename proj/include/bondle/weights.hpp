#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "bondle/algebra.hpp"
#include "bondle/common.hpp"

namespace bondle {

// Boltzmann weights into Z_m: phi at classical crossings, phi1 at parallel
// bonds, phi2 at anti-parallel bonds.
struct BoltzmannWeights {
  std::int64_t m = 1;
  Table phi;
  Table phi1;
  Table phi2;
  std::optional<std::pair<std::int64_t, std::int64_t>> constant;  // (a, b) when built by constant_weights

  std::size_t n() const noexcept { return phi.size(); }

  friend bool operator==(const BoltzmannWeights& l, const BoltzmannWeights& r) {
    return l.m == r.m && l.phi == r.phi && l.phi1 == r.phi1 && l.phi2 == r.phi2;
  }
};

inline BoltzmannWeights make_weights(std::int64_t m, Table phi, Table phi1, Table phi2) {
  if (m <= 0) throw Error("weight group order m must be positive");
  const auto n = phi.size();
  if (phi1.size() != n || phi2.size() != n) throw Error("weight tables have mismatched dimensions");
  for (const Table* t : {&phi, &phi1, &phi2})
    for (auto v : t->cells())
      if (static_cast<std::int64_t>(v) >= m) throw Error("weight entry " + std::to_string(v) + " outside Z_" + std::to_string(m));
  return BoltzmannWeights{m, std::move(phi), std::move(phi1), std::move(phi2), std::nullopt};
}

// phi = 0, phi1 = a, phi2 = b. Valid for every bondle.
inline BoltzmannWeights constant_weights(const FiniteBondle& B, std::int64_t m, std::int64_t a, std::int64_t b) {
  if (m <= 0) throw Error("weight group order m must be positive");
  if (a < 0 || a >= m) throw Error("phi1 constant " + std::to_string(a) + " outside Z_" + std::to_string(m));
  if (b < 0 || b >= m) throw Error("phi2 constant " + std::to_string(b) + " outside Z_" + std::to_string(m));
  BoltzmannWeights W{m, Table(B.n, 0), Table(B.n, static_cast<Element>(a)), Table(B.n, static_cast<Element>(b)),
                     std::make_pair(a, b)};
  return W;
}

// Checks the cocycle, singular-move and bond-move conditions exhaustively.
// Bond conditions are skipped when the bondle has no R3 (phi2 unused).
inline AxiomReport check_weights(const FiniteBondle& B, const BoltzmannWeights& W) {
  if (W.n() != B.n)
    throw Error("weights are " + std::to_string(W.n()) + "x" + std::to_string(W.n()) + " but bondle has n = " + std::to_string(B.n));
  const auto& s = B.star;
  const auto& sb = B.starbar;
  const auto& R1 = B.r1;
  const auto& R2 = B.r2;
  const auto m = W.m;
  auto f = [&](Element x, Element y) -> std::int64_t { return W.phi.at(x, y); };
  auto f1 = [&](Element x, Element y) -> std::int64_t { return W.phi1.at(x, y); };
  auto f2 = [&](Element x, Element y) -> std::int64_t { return W.phi2.at(x, y); };
  auto side = [m](std::int64_t l, std::int64_t r) { return std::pair<std::int64_t, std::int64_t>(mod(l, m), mod(r, m)); };

  std::vector<detail::AxiomSpec> axioms{
      {"w-cocycle", 3,
       [&](Element x, Element y, Element z) { return side(f(x, y) + f(s.at(x, y), z), f(x, z) + f(s.at(x, z), s.at(y, z))); }},
      {"w-diagonal", 1, [&](Element x, Element, Element) { return side(f(x, x), 0); }},
      {"w-sRIIIa", 3,
       [&](Element x, Element y, Element z) {
         const Element xb = sb.at(x, y), zy = s.at(z, y);
         return side(-f(xb, y) + f1(xb, z) + f(R1.at(xb, z), y), f(z, y) + f1(x, zy) - f(sb.at(R2.at(x, zy), y), y));
       }},
      {"w-sRIIIb", 3,
       [&](Element x, Element y, Element z) {
         const Element r1 = R1.at(x, z), r2 = R2.at(x, z);
         const Element t = sb.at(y, r1);
         return side(f(t, x) - f(t, r1), -f(sb.at(s.at(y, r2), z), z) + f(y, r2));
       }},
      {"w-sRII", 2,
       [&](Element x, Element y, Element) { return side(f1(x, y) + f(R1.at(x, y), R2.at(x, y)), f(x, y) + f1(y, s.at(x, y))); }},
  };
  if (B.r3) {
    const auto& R3 = *B.r3;
    axioms.push_back({"w-bRIIIa", 3, [&](Element x, Element y, Element z) {
                        const Element xz = sb.at(x, z), yz = s.at(y, z);
                        return side(-f(xz, z) + f(R3.at(xz, y), z) + f2(xz, y), f2(x, yz) - f(sb.at(R3.at(yz, x), z), z) + f(y, z));
                      }});
    axioms.push_back({"w-bRIIIb", 3, [&](Element x, Element y, Element z) {
                        const Element r = R3.at(x, y), t = sb.at(z, r), u = sb.at(z, y);
                        return side(f(t, x) - f(t, r) + f2(x, y), f(u, R3.at(y, x)) - f(u, y) + f2(x, y));
                      }});
    axioms.push_back({"w-bRII", 2, [&](Element x, Element y, Element) {
                        const Element ryx = R3.at(y, x), t = sb.at(x, ryx);
                        return side(-f(t, ryx) + f2(y, t), f2(x, y) - f(sb.at(R3.at(x, y), y), y));
                      }});
  }
  AxiomReport report;
  detail::run_axioms(B.n, axioms, report);
  return report;
}

// ---------------------------------------------------------------------------
// Weight search with phi = 0.
//
// With phi identically zero every remaining condition equates two phi1 cells
// or two phi2 cells:
//   phi1(x/y, z) = phi1(x, z*y),   phi1(x, y) = phi1(y, x*y),
//   phi2(x/z, y) = phi2(x, y*z),   phi2(y, x/R3(y,x)) = phi2(x, y).
// Solutions are exactly the functions constant on the classes of the
// generated equivalence relation.

enum class WeightFamily {
  general,       // arbitrary n x n tables
  row_constant,  // phi1(x,y) = f(x), phi2(x,y) = g(x)
};

struct WeightSearchResult {
  std::vector<BoltzmannWeights> solutions;
  bool truncated = false;
  Count total;                  // exact size of the solution space
  std::size_t phi1_classes = 0;  // free parameters of phi1
  std::size_t phi2_classes = 0;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// For each cell (x,y): index of its equivalence class, classes numbered in
// order of first appearance.
struct CellClasses {
  std::vector<std::size_t> of_cell;
  std::size_t count = 0;
};

template <typename Relate>
CellClasses cell_classes(std::size_t n, WeightFamily family, Relate&& relate) {
  auto param = [&](Element x, Element y) -> std::size_t { return family == WeightFamily::general ? x * n + y : x; };
  const std::size_t params = family == WeightFamily::general ? n * n : n;
  UnionFind uf(params);
  relate([&](Element x1, Element y1, Element x2, Element y2) { uf.unite(param(x1, y1), param(x2, y2)); });
  CellClasses out;
  out.of_cell.resize(n * n);
  std::vector<std::size_t> label(params, SIZE_MAX);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      auto root = uf.find(param(x, y));
      if (label[root] == SIZE_MAX) label[root] = out.count++;
      out.of_cell[x * n + y] = label[root];
    }
  return out;
}

inline Table fill_from_classes(std::size_t n, const CellClasses& cls, const std::vector<std::int64_t>& values,
                               std::size_t offset) {
  Table t(n);
  for (std::size_t c = 0; c < n * n; ++c) t.at(c / n, c % n) = static_cast<Element>(values[offset + cls.of_cell[c]]);
  return t;
}

}  // namespace detail

// Enumerates phi = 0 weight triples, constant solutions first and then the
// remaining class assignments in lexicographic order, examining at most
// `budget` candidates.
inline WeightSearchResult search_weights(const FiniteBondle& B, std::int64_t m, std::uint64_t budget,
                                         WeightFamily family = WeightFamily::general) {
  if (m <= 0) throw Error("weight group order m must be positive");
  const auto n = B.n;
  const auto& s = B.star;
  const auto& sb = B.starbar;

  auto c1 = detail::cell_classes(n, family, [&](auto&& tie) {
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) {
        tie(x, y, y, s.at(x, y));
        for (Element z = 0; z < n; ++z) tie(sb.at(x, y), z, x, s.at(z, y));
      }
  });
  auto c2 = detail::cell_classes(n, family, [&](auto&& tie) {
    if (!B.r3) return;
    const auto& R3 = *B.r3;
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y) {
        tie(y, sb.at(x, R3.at(y, x)), x, y);
        for (Element z = 0; z < n; ++z) tie(sb.at(x, z), y, x, s.at(y, z));
      }
  });

  WeightSearchResult result;
  result.phi1_classes = c1.count;
  result.phi2_classes = c2.count;
  result.total = boost::multiprecision::pow(Count(m), static_cast<unsigned>(c1.count + c2.count));

  const std::size_t k = c1.count + c2.count;
  std::uint64_t examined = 0;
  auto emit = [&](const std::vector<std::int64_t>& values) -> bool {
    if (examined == budget) {
      result.truncated = true;
      return false;
    }
    ++examined;
    result.solutions.push_back(make_weights(m, Table(n, 0), detail::fill_from_classes(n, c1, values, 0),
                                            detail::fill_from_classes(n, c2, values, c1.count)));
    return true;
  };

  // Constants: all phi1 classes share a, all phi2 classes share b.
  std::vector<std::int64_t> values(k, 0);
  for (std::int64_t a = 0; a < m; ++a)
    for (std::int64_t b = 0; b < m; ++b) {
      std::fill(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(c1.count), a);
      std::fill(values.begin() + static_cast<std::ptrdiff_t>(c1.count), values.end(), b);
      if (!emit(values)) return result;
    }

  auto is_constant = [&](const std::vector<std::int64_t>& v) {
    for (std::size_t i = 1; i < c1.count; ++i)
      if (v[i] != v[0]) return false;
    for (std::size_t i = c1.count + 1; i < k; ++i)
      if (v[i] != v[c1.count]) return false;
    return true;
  };

  // Odometer over the remaining assignments.
  std::fill(values.begin(), values.end(), 0);
  while (true) {
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++values[i] < m) break;
      values[i] = 0;
      if (i == 0) return result;
    }
    if (k == 0) return result;
    if (is_constant(values)) continue;
    if (!emit(values)) return result;
  }
}

}  // namespace bondle
