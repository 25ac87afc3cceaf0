#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bondle {

// Exact counts; n^semiarcs overflows 64 bits quickly.
using Count = boost::multiprecision::cpp_int;

using Element = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Dense n x n operation table, row-major: at(x, y) is the value of the
// operation on (x, y).
class Table {
 public:
  Table() = default;
  Table(std::size_t n, Element fill = 0) : n_(n), cells_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  Element at(Element x, Element y) const { return cells_[x * n_ + y]; }
  Element& at(Element x, Element y) { return cells_[x * n_ + y]; }
  const std::vector<Element>& cells() const noexcept { return cells_; }

  std::vector<std::vector<std::int64_t>> rows() const {
    std::vector<std::vector<std::int64_t>> out(n_, std::vector<std::int64_t>(n_));
    for (std::size_t x = 0; x < n_; ++x)
      for (std::size_t y = 0; y < n_; ++y) out[x][y] = at(x, y);
    return out;
  }

  template <typename F>
  static Table generate(std::size_t n, F&& f) {
    Table t(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) t.at(x, y) = f(static_cast<Element>(x), static_cast<Element>(y));
    return t;
  }

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Element> cells_;
};

// Table from nested rows; `what` names the table in error messages. Entries
// must lie in [0, bound).
inline Table table_from_rows(const std::vector<std::vector<std::int64_t>>& rows, std::size_t n,
                             std::int64_t bound, const std::string& what) {
  if (rows.size() != n) throw Error(what + ": expected " + std::to_string(n) + " rows, got " + std::to_string(rows.size()));
  Table t(n);
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != n)
      throw Error(what + ": row " + std::to_string(x) + " has " + std::to_string(rows[x].size()) + " entries, expected " +
                  std::to_string(n));
    for (std::size_t y = 0; y < n; ++y) {
      const auto v = rows[x][y];
      if (v < 0 || v >= bound)
        throw Error(what + ": entry (" + std::to_string(x) + "," + std::to_string(y) + ") = " + std::to_string(v) +
                    " outside [0," + std::to_string(bound) + ")");
      t.at(x, y) = static_cast<Element>(v);
    }
  }
  return t;
}

inline std::int64_t mod(std::int64_t v, std::int64_t n) {
  const auto r = v % n;
  return r < 0 ? r + n : r;
}

}  // namespace bondle
