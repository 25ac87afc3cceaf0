#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bondle/common.hpp"

namespace bondle {

// Bonded Gauss code of one open chain.
//
// Events are listed in traversal order from the free start to the free end.
// Semiarc i is the chain segment entering event i; semiarc events.size() is
// the final segment, so an open chain with k events has k + 1 semiarcs.
//
// Token grammar (whitespace separated, '#' starts a comment):
//   O<id><+|->   over passage of crossing <id> with its sign
//   U<id><+|->   under passage
//   P<id>:<1|2>  passage through parallel bond <id> in role 1 or 2
//   A<id>:<1|2>  passage through anti-parallel bond <id>
// Crossing ids and bond ids are separate namespaces.

enum class Passage { over, under, parallel, antiparallel };

enum class BondKind { parallel, antiparallel };

struct Event {
  Passage passage = Passage::over;
  int id = 0;
  int sign = 1;  // crossings only
  int role = 1;  // bonds only

  bool is_crossing() const noexcept { return passage == Passage::over || passage == Passage::under; }
  bool is_bond() const noexcept { return !is_crossing(); }
  BondKind kind() const noexcept { return passage == Passage::parallel ? BondKind::parallel : BondKind::antiparallel; }

  static Event over(int id, int sign) { return {Passage::over, id, sign, 1}; }
  static Event under(int id, int sign) { return {Passage::under, id, sign, 1}; }
  static Event parallel(int id, int role) { return {Passage::parallel, id, 1, role}; }
  static Event antiparallel(int id, int role) { return {Passage::antiparallel, id, 1, role}; }

  friend bool operator==(const Event&, const Event&) = default;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> errors;

  void fail(std::string e) {
    valid = false;
    errors.push_back(std::move(e));
  }
};

// Checks that every crossing has exactly one over and one under passage with
// matching signs, and every bond has exactly one passage in each role with a
// consistent kind. Collects every problem rather than stopping at the first.
inline ValidationReport validate(std::span<const Event> events) {
  ValidationReport report;
  struct CrossingSeen {
    int overs = 0, unders = 0;
    std::set<int> signs;
  };
  struct BondSeen {
    int role1 = 0, role2 = 0;
    std::set<BondKind> kinds;
  };
  std::map<int, CrossingSeen> crossings;
  std::map<int, BondSeen> bonds;
  for (const auto& e : events) {
    if (e.id <= 0) report.fail("non-positive id " + std::to_string(e.id));
    if (e.is_crossing()) {
      if (e.sign != 1 && e.sign != -1) report.fail("crossing " + std::to_string(e.id) + " has sign " + std::to_string(e.sign));
      auto& c = crossings[e.id];
      (e.passage == Passage::over ? c.overs : c.unders)++;
      c.signs.insert(e.sign);
    } else {
      if (e.role != 1 && e.role != 2) report.fail("bond " + std::to_string(e.id) + " has role " + std::to_string(e.role));
      auto& b = bonds[e.id];
      (e.role == 1 ? b.role1 : b.role2)++;
      b.kinds.insert(e.kind());
    }
  }
  for (const auto& [id, c] : crossings) {
    const auto name = "crossing " + std::to_string(id);
    if (c.overs + c.unders == 1) report.fail("dangling " + name);
    if (c.overs > 1) report.fail(name + " has " + std::to_string(c.overs) + " over passages");
    if (c.unders > 1) report.fail(name + " has " + std::to_string(c.unders) + " under passages");
    if (c.overs + c.unders == 2 && (c.overs != 1 || c.unders != 1)) report.fail(name + " lacks an over/under pair");
    if (c.signs.size() > 1) report.fail(name + " has inconsistent signs");
  }
  for (const auto& [id, b] : bonds) {
    const auto name = "bond " + std::to_string(id);
    if (b.role1 + b.role2 == 1) report.fail("dangling " + name);
    if (b.role1 > 1) report.fail(name + " has duplicate role 1");
    if (b.role2 > 1) report.fail(name + " has duplicate role 2");
    if (b.kinds.size() > 1) report.fail(name + " mixes parallel and anti-parallel passages");
  }
  return report;
}

class BondedDiagram {
 public:
  BondedDiagram() = default;

  // Throws Error listing every validation failure.
  static BondedDiagram from_events(std::vector<Event> events) {
    const auto report = validate(events);
    if (!report.valid) {
      std::string msg = "invalid diagram:";
      for (const auto& e : report.errors) msg += " " + e + ";";
      throw Error(msg);
    }
    BondedDiagram d;
    d.events_ = std::move(events);
    for (std::size_t i = 0; i < d.events_.size(); ++i) {
      const auto& e = d.events_[i];
      if (e.is_crossing()) {
        d.crossings_[e.id] = e.sign;
        (e.passage == Passage::over ? d.over_at_ : d.under_at_)[e.id] = i;
      } else {
        d.bonds_[e.id] = e.kind();
        (e.role == 1 ? d.role1_at_ : d.role2_at_)[e.id] = i;
      }
    }
    return d;
  }

  const std::vector<Event>& events() const noexcept { return events_; }
  const std::map<int, int>& crossings() const noexcept { return crossings_; }
  const std::map<int, BondKind>& bonds() const noexcept { return bonds_; }

  std::size_t semiarc_count() const noexcept { return events_.size() + 1; }
  bool has_antiparallel() const {
    return std::any_of(bonds_.begin(), bonds_.end(), [](const auto& kv) { return kv.second == BondKind::antiparallel; });
  }

  // Event positions of a crossing's passages and a bond's roles.
  std::size_t over_position(int crossing) const { return over_at_.at(crossing); }
  std::size_t under_position(int crossing) const { return under_at_.at(crossing); }
  std::size_t role_position(int bond, int role) const { return (role == 1 ? role1_at_ : role2_at_).at(bond); }

  int max_crossing_id() const { return crossings_.empty() ? 0 : crossings_.rbegin()->first; }

  friend bool operator==(const BondedDiagram& l, const BondedDiagram& r) { return l.events_ == r.events_; }

 private:
  std::vector<Event> events_;
  std::map<int, int> crossings_;
  std::map<int, BondKind> bonds_;
  std::map<int, std::size_t> over_at_, under_at_, role1_at_, role2_at_;
};

inline ValidationReport validate(const BondedDiagram& d) { return validate(d.events()); }

// ---------------------------------------------------------------------------
// Text format

inline BondedDiagram parse_bgc(std::string_view text) {
  std::vector<Event> events;
  std::size_t i = 0;
  auto parse_id = [&](std::size_t start) {
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) throw ParseError("expected an id", i);
    int id = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, id);
    if (ec != std::errc() || id <= 0) throw ParseError("bad id", start);
    i = j;
    return id;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    ++i;
    if (c == 'O' || c == 'U') {
      const int id = parse_id(start);
      if (i >= text.size() || (text[i] != '+' && text[i] != '-')) throw ParseError("expected '+' or '-' after crossing id", i);
      const int sign = text[i] == '+' ? 1 : -1;
      ++i;
      events.push_back(c == 'O' ? Event::over(id, sign) : Event::under(id, sign));
    } else if (c == 'P' || c == 'A') {
      const int id = parse_id(start);
      if (i >= text.size() || text[i] != ':') throw ParseError("expected ':' after bond id", i);
      ++i;
      if (i >= text.size() || (text[i] != '1' && text[i] != '2')) throw ParseError("expected role 1 or 2", i);
      const int role = text[i] - '0';
      ++i;
      events.push_back(c == 'P' ? Event::parallel(id, role) : Event::antiparallel(id, role));
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '#')
      throw ParseError("tokens must be separated by whitespace", i);
  }
  return BondedDiagram::from_events(std::move(events));
}

inline std::string to_token(const Event& e) {
  switch (e.passage) {
    case Passage::over:
      return "O" + std::to_string(e.id) + (e.sign > 0 ? "+" : "-");
    case Passage::under:
      return "U" + std::to_string(e.id) + (e.sign > 0 ? "+" : "-");
    case Passage::parallel:
      return "P" + std::to_string(e.id) + ":" + std::to_string(e.role);
    case Passage::antiparallel:
      return "A" + std::to_string(e.id) + ":" + std::to_string(e.role);
  }
  return {};
}

inline std::string serialize(const BondedDiagram& d) {
  std::string out;
  for (const auto& e : d.events()) {
    if (!out.empty()) out += ' ';
    out += to_token(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Move generators. Fresh crossing ids continue after the largest id in use.

// Inserts a kink "U<k><s> O<k><s>" into semiarc `position`.
inline BondedDiagram insert_r1(const BondedDiagram& d, std::size_t position, int sign) {
  if (position > d.events().size())
    throw Error("insert_r1: semiarc " + std::to_string(position) + " out of range [0," + std::to_string(d.events().size()) + "]");
  if (sign != 1 && sign != -1) throw Error("insert_r1: sign must be +1 or -1");
  const int id = d.max_crossing_id() + 1;
  auto events = d.events();
  const auto at = events.begin() + static_cast<std::ptrdiff_t>(position);
  events.insert(at, {Event::under(id, sign), Event::over(id, sign)});
  return BondedDiagram::from_events(std::move(events));
}

// Inserts an RII poke "U<a>+ U<b>- O<b>- O<a>+" into semiarc `pos_a`. Only
// adjacent pokes (pos_b == pos_a) are generated: two distant sites on an
// abstract Gauss code need not be planar-realizable.
inline BondedDiagram insert_r2(const BondedDiagram& d, std::size_t pos_a, std::size_t pos_b) {
  const auto k = d.events().size();
  if (pos_a > k || pos_b > k)
    throw Error("insert_r2: semiarc out of range [0," + std::to_string(k) + "]");
  if (pos_a != pos_b) throw Error("insert_r2: only adjacent pokes (pos_b == pos_a) are supported");
  const int a = d.max_crossing_id() + 1, b = a + 1;
  auto events = d.events();
  const auto at = events.begin() + static_cast<std::ptrdiff_t>(pos_a);
  events.insert(at, {Event::under(a, 1), Event::under(b, -1), Event::over(b, -1), Event::over(a, 1)});
  return BondedDiagram::from_events(std::move(events));
}

// Drops both passages of the given crossings (inverse of the insertions).
inline BondedDiagram remove_crossings(const BondedDiagram& d, const std::set<int>& ids) {
  std::vector<Event> events;
  for (const auto& e : d.events())
    if (!(e.is_crossing() && ids.count(e.id))) events.push_back(e);
  return BondedDiagram::from_events(std::move(events));
}

}  // namespace bondle
