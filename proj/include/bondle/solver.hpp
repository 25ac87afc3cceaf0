#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>
#include <vector>

#include "bondle/algebra.hpp"
#include "bondle/common.hpp"
#include "bondle/diagram.hpp"

namespace bondle {

// One output equation: c[out] = op(c[left], c[right]). Over passages use
// op = copy and ignore `right`.
enum class Op { copy, star, starbar, r1, r2, r3 };

struct Constraint {
  Op op = Op::copy;
  std::size_t out = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t event = 0;  // event index that produced this equation

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

struct ConstraintSystem {
  std::size_t n = 0;
  std::size_t variables = 0;  // semiarcs
  std::vector<Constraint> constraints;
  const FiniteBondle* bondle = nullptr;

  const Table* table(Op op) const {
    switch (op) {
      case Op::copy:
        return nullptr;
      case Op::star:
        return &bondle->star;
      case Op::starbar:
        return &bondle->starbar;
      case Op::r1:
        return &bondle->r1;
      case Op::r2:
        return &bondle->r2;
      case Op::r3:
        return &*bondle->r3;
    }
    return nullptr;
  }

  Element apply(const Constraint& c, Element l, Element r) const {
    const Table* t = table(c.op);
    return t ? t->at(l, r) : l;
  }

  bool satisfied(const std::vector<Element>& colors) const {
    if (colors.size() != variables) return false;
    for (auto v : colors)
      if (v >= n) return false;
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const Constraint& c) { return colors[c.out] == apply(c, colors[c.left], colors[c.right]); });
  }
};

// The bondle must outlive the returned system.
inline ConstraintSystem compile(const BondedDiagram& D, const FiniteBondle& B) {
  if (D.has_antiparallel() && !B.r3) throw Error("diagram has anti-parallel bonds but the bondle has no R3");
  ConstraintSystem sys;
  sys.n = B.n;
  sys.variables = D.semiarc_count();
  sys.bondle = &B;
  const auto& ev = D.events();
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const auto& e = ev[i];
    Constraint c;
    c.out = i + 1;
    c.left = i;
    c.right = i;
    c.event = i;
    switch (e.passage) {
      case Passage::over:
        c.op = Op::copy;
        break;
      case Passage::under:
        c.op = e.sign > 0 ? Op::star : Op::starbar;
        c.right = D.over_position(e.id);
        break;
      case Passage::parallel:
      case Passage::antiparallel: {
        const auto p1 = D.role_position(e.id, 1), p2 = D.role_position(e.id, 2);
        if (e.passage == Passage::parallel) {
          c.op = e.role == 1 ? Op::r1 : Op::r2;
          c.left = p1;
          c.right = p2;
        } else {
          c.op = Op::r3;
          c.left = e.role == 1 ? p1 : p2;
          c.right = e.role == 1 ? p2 : p1;
        }
        break;
      }
    }
    sys.constraints.push_back(c);
  }
  return sys;
}

using Coloring = std::vector<Element>;

struct Enumeration {
  std::vector<Coloring> colorings;
  bool truncated = false;
};

namespace detail {

// Backtracking plan in chain order. A semiarc whose defining equation only
// reads earlier semiarcs is forced; otherwise it is branched and the equation
// becomes a check, run once every semiarc it mentions is assigned.
class Plan {
 public:
  explicit Plan(const ConstraintSystem& sys) : sys_(sys), defining_(sys.variables, SIZE_MAX), checks_(sys.variables) {
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
      const auto& c = sys.constraints[i];
      if (std::max(c.left, c.right) < c.out)
        defining_[c.out] = i;
      else
        checks_[std::max({c.out, c.left, c.right})].push_back(i);
    }
  }

  // Visits every completion of the assignment in lexicographic order with
  // colors[0] restricted to [first, last). The visitor returns false to stop.
  // Returns false if stopped early.
  template <typename Visit>
  bool run(Element first, Element last, Visit&& visit) const {
    if (sys_.variables == 0) return true;
    Coloring colors(sys_.variables, 0);
    return descend(0, first, last, colors, visit);
  }

 private:
  bool checks_pass(std::size_t v, const Coloring& colors) const {
    for (auto i : checks_[v]) {
      const auto& c = sys_.constraints[i];
      if (colors[c.out] != sys_.apply(c, colors[c.left], colors[c.right])) return false;
    }
    return true;
  }

  template <typename Visit>
  bool descend(std::size_t v, Element first, Element last, Coloring& colors, Visit& visit) const {
    if (v == sys_.variables) return visit(static_cast<const Coloring&>(colors));
    if (defining_[v] != SIZE_MAX) {
      const auto& c = sys_.constraints[defining_[v]];
      colors[v] = sys_.apply(c, colors[c.left], colors[c.right]);
      if (!checks_pass(v, colors)) return true;
      return descend(v + 1, 0, 0, colors, visit);
    }
    const Element lo = v == 0 ? first : 0;
    const Element hi = v == 0 ? last : static_cast<Element>(sys_.n);
    for (Element x = lo; x < hi; ++x) {
      colors[v] = x;
      if (!checks_pass(v, colors)) continue;
      if (!descend(v + 1, 0, 0, colors, visit)) return false;
    }
    return true;
  }

  const ConstraintSystem& sys_;
  std::vector<std::size_t> defining_;
  std::vector<std::vector<std::size_t>> checks_;
};

// Order-free search used for counting. After each assignment every touched
// equation with a single unknown semiarc is solved by scanning the carrier; a
// unique solution is assigned at once, none prunes the branch. When nothing is
// forced it branches on the semiarc with the fewest candidates. Visits the
// same set of colorings as Plan, in a different order.
class Propagator {
 public:
  explicit Propagator(const ConstraintSystem& sys) : sys_(sys), touching_(sys.variables) {
    for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
      const auto& c = sys.constraints[i];
      for (auto v : {c.out, c.left, c.right})
        if (touching_[v].empty() || touching_[v].back() != i) touching_[v].push_back(i);
    }
  }

  template <typename Visit>
  void run(Element first, Element last, Visit&& visit) const {
    if (sys_.variables == 0) return;
    State st{Coloring(sys_.variables, 0), std::vector<char>(sys_.variables, 0), {}};
    for (Element x = first; x < last; ++x) {
      const auto mark = st.trail.size();
      if (assign(st, 0, x)) descend(st, visit);
      undo(st, mark);
    }
  }

 private:
  struct State {
    Coloring colors;
    std::vector<char> known;
    std::vector<std::size_t> trail;
  };

  bool holds(const State& st, const Constraint& c) const {
    return st.colors[c.out] == sys_.apply(c, st.colors[c.left], st.colors[c.right]);
  }

  // The single unknown semiarc of c, SIZE_MAX if none, or SIZE_MAX - 1 if several.
  static std::size_t lone_unknown(const State& st, const Constraint& c) {
    std::size_t u = SIZE_MAX;
    for (auto v : {c.out, c.left, c.right}) {
      if (st.known[v] || v == u) continue;
      if (u != SIZE_MAX) return SIZE_MAX - 1;
      u = v;
    }
    return u;
  }

  // Values of the unknown v that satisfy c.
  void candidates(State& st, const Constraint& c, std::size_t v, std::vector<Element>& out) const {
    out.clear();
    st.known[v] = 1;
    for (Element x = 0; x < sys_.n; ++x) {
      st.colors[v] = x;
      if (holds(st, c)) out.push_back(x);
    }
    st.known[v] = 0;
  }

  void undo(State& st, std::size_t mark) const {
    while (st.trail.size() > mark) {
      st.known[st.trail.back()] = 0;
      st.trail.pop_back();
    }
  }

  // Assigns v = x and propagates; false on contradiction (caller undoes).
  bool assign(State& st, std::size_t v, Element x) const {
    std::vector<std::size_t> queue{v};
    st.colors[v] = x;
    st.known[v] = 1;
    st.trail.push_back(v);
    std::vector<Element> cand;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      for (auto ci : touching_[queue[qi]]) {
        const auto& c = sys_.constraints[ci];
        const auto u = lone_unknown(st, c);
        if (u == SIZE_MAX) {
          if (!holds(st, c)) return false;
        } else if (u != SIZE_MAX - 1) {
          candidates(st, c, u, cand);
          if (cand.empty()) return false;
          if (cand.size() == 1) {
            st.colors[u] = cand[0];
            st.known[u] = 1;
            st.trail.push_back(u);
            queue.push_back(u);
          }
        }
      }
    }
    return true;
  }

  template <typename Visit>
  void descend(State& st, Visit& visit) const {
    std::size_t best_v = SIZE_MAX;
    std::vector<Element> best, cand;
    for (const auto& c : sys_.constraints) {
      const auto u = lone_unknown(st, c);
      if (u >= SIZE_MAX - 1) continue;
      candidates(st, c, u, cand);
      if (best_v == SIZE_MAX || cand.size() < best.size()) {
        best_v = u;
        best.swap(cand);
      }
    }
    if (best_v == SIZE_MAX) {
      for (std::size_t v = 0; v < sys_.variables; ++v)
        if (!st.known[v]) {
          best_v = v;
          break;
        }
      if (best_v == SIZE_MAX) {
        visit(static_cast<const Coloring&>(st.colors));
        return;
      }
      best.resize(sys_.n);
      std::iota(best.begin(), best.end(), Element{0});
    }
    for (auto x : best) {
      const auto mark = st.trail.size();
      if (assign(st, best_v, x)) descend(st, visit);
      undo(st, mark);
    }
  }

  const ConstraintSystem& sys_;
  std::vector<std::vector<std::size_t>> touching_;
};

// Worker count from BONDLE_THREADS (default: hardware concurrency).
inline unsigned thread_budget(std::size_t work) {
  unsigned t = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BONDLE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) t = static_cast<unsigned>(v);
  }
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

// Splits the first semiarc's values across workers. `make` builds one
// accumulator per worker, `visit(acc, coloring)` folds into it; accumulators
// are returned in value order so merges are deterministic.
template <typename Acc, typename Make, typename Visit>
std::vector<Acc> parallel_fold(const ConstraintSystem& sys, Make&& make, Visit&& visit) {
  const Propagator plan(sys);
  const auto n = static_cast<Element>(sys.n);
  const unsigned workers = thread_budget(sys.n);
  std::vector<Acc> accs;
  for (Element x = 0; x < n; ++x) accs.push_back(make());
  auto work = [&](Element x) { plan.run(x, x + 1, [&](const Coloring& c) { visit(accs[x], c); }); };
  if (workers <= 1) {
    for (Element x = 0; x < n; ++x) work(x);
    return accs;
  }
  std::atomic<Element> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (Element x; (x = next.fetch_add(1)) < n;) work(x);
    });
  pool.clear();
  return accs;
}

}  // namespace detail

// Calls f on every coloring, lexicographically, on the calling thread.
template <typename F>
void for_each_coloring(const BondedDiagram& D, const FiniteBondle& B, F&& f) {
  const auto sys = compile(D, B);
  detail::Plan(sys).run(0, static_cast<Element>(sys.n), [&](const Coloring& c) {
    f(c);
    return true;
  });
}

inline Count count_colorings(const BondedDiagram& D, const FiniteBondle& B) {
  const auto sys = compile(D, B);
  const auto parts = detail::parallel_fold<std::uint64_t>(
      sys, [] { return std::uint64_t{0}; }, [](std::uint64_t& acc, const Coloring&) { ++acc; });
  Count total = 0;
  for (auto p : parts) total += p;
  return total;
}

inline Enumeration enumerate_colorings(const BondedDiagram& D, const FiniteBondle& B, std::size_t limit) {
  const auto sys = compile(D, B);
  Enumeration out;
  detail::Plan(sys).run(0, static_cast<Element>(sys.n), [&](const Coloring& c) {
    if (out.colorings.size() == limit) {
      out.truncated = true;
      return false;
    }
    out.colorings.push_back(c);
    return true;
  });
  return out;
}

}  // namespace bondle
