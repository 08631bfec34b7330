#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "lcmv/field.hpp"

namespace lcmv {

/// Sparse integer matrix stored as (row, col, value) triplets. Used for the
/// ±1 differentials of the spectral sequence and of the Čech complexes.
struct SparseIntMatrix {
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    int value;
  };

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Entry> entries;

  int at(std::size_t r, std::size_t c) const;
  bool is_zero() const;
  /// Integer product this * rhs.
  SparseIntMatrix compose(const SparseIntMatrix& rhs) const;
};

namespace sparse {

struct RationalOps {
  using Value = mpq_class;
  Value from_int(long v) const { return Value(v); }
  Value from_mpq(const mpq_class& v) const { return v; }
  mpq_class to_mpq(const Value& v) const { return v; }
  bool is_zero(const Value& v) const { return v == 0; }
  Value sub_mul(const Value& a, const Value& c, const Value& b) const { return a - c * b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value neg(const Value& a) const { return -a; }
  Value inv(const Value& a) const { return 1 / a; }
};

struct PrimeOps {
  using Value = std::uint64_t;
  std::uint64_t p;

  Value from_int(long v) const {
    long r = v % static_cast<long>(p);
    return static_cast<Value>(r < 0 ? r + static_cast<long>(p) : r);
  }
  Value from_mpq(const mpq_class& v) const;
  mpq_class to_mpq(const Value& v) const { return mpq_class(static_cast<unsigned long>(v)); }
  bool is_zero(const Value& v) const { return v == 0; }
  Value mul(const Value& a, const Value& b) const { return (a * b) % p; }
  Value add(const Value& a, const Value& b) const { return (a + b) % p; }
  Value neg(const Value& a) const { return a == 0 ? 0 : p - a; }
  Value sub_mul(const Value& a, const Value& c, const Value& b) const { return add(a, neg(mul(c, b))); }
  Value inv(const Value& a) const;
};

/// Calls fn(ops) with the sparse kernel matching the field.
template <class Fn>
decltype(auto) with_ops(const Field& field, Fn&& fn) {
  if (field.is_rational()) return fn(RationalOps{});
  return fn(PrimeOps{field.characteristic()});
}

template <class Ops>
using Vec = std::vector<std::pair<std::uint32_t, typename Ops::Value>>;

/// result = a - c * b, all sorted by index.
template <class Ops>
Vec<Ops> axpy(const Ops& ops, const Vec<Ops>& a, const typename Ops::Value& c, const Vec<Ops>& b) {
  Vec<Ops> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, ops.sub_mul(ops.from_int(0), c, b[j].second));
      ++j;
    } else {
      auto v = ops.sub_mul(a[i].second, c, b[j].second);
      if (!ops.is_zero(v)) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Incremental echelon basis under leading-term elimination.
///
/// Every stored row carries a "tag" vector, a linear combination of caller
/// supplied labels, so that a vector reduced to zero can be expressed in
/// terms of the labels of the rows that were used.
template <class Ops>
class Echelon {
 public:
  using Value = typename Ops::Value;
  using V = Vec<Ops>;

  explicit Echelon(Ops ops) : ops_(std::move(ops)) {}

  std::size_t rank() const { return rows_.size(); }

  /// Reduces v; returns the remainder (empty iff v is in the span). The
  /// accumulated tag combination of the pivots used is subtracted from *tag.
  V reduce(V v, V* tag = nullptr) const {
    while (!v.empty()) {
      auto it = pivot_of_.find(v.front().first);
      if (it == pivot_of_.end()) break;
      const Row& row = rows_[it->second];
      Value c = v.front().second;
      v = axpy(ops_, v, c, row.vec);
      if (tag) *tag = axpy(ops_, *tag, c, row.tag);
    }
    return v;
  }

  /// Inserts v with the given tag. Returns false when v was dependent; in
  /// that case *dependency receives tag - (tags of the pivots used), a
  /// relation whose vector part vanishes.
  bool insert(V v, V tag = {}, V* dependency = nullptr) {
    v = reduce(std::move(v), &tag);
    if (v.empty()) {
      if (dependency) *dependency = std::move(tag);
      return false;
    }
    Value inv = ops_.inv(v.front().second);
    for (auto& e : v) e.second = ops_.mul(e.second, inv);
    for (auto& e : tag) e.second = ops_.mul(e.second, inv);
    pivot_of_.emplace(v.front().first, rows_.size());
    rows_.push_back(Row{std::move(v), std::move(tag)});
    return true;
  }

  const Ops& ops() const { return ops_; }

 private:
  struct Row {
    V vec;
    V tag;
  };
  Ops ops_;
  std::vector<Row> rows_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_of_;
};

/// Rows of m as sparse vectors over the kernel's scalars.
template <class Ops>
std::vector<Vec<Ops>> rows_of(const Ops& ops, const SparseIntMatrix& m) {
  std::vector<Vec<Ops>> rows(m.rows);
  for (const auto& e : m.entries) {
    auto v = ops.from_int(e.value);
    if (!ops.is_zero(v)) rows[e.row].emplace_back(e.col, std::move(v));
  }
  for (auto& r : rows) {
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return rows;
}

/// Columns of m as sparse vectors (i.e. rows of the transpose).
template <class Ops>
std::vector<Vec<Ops>> columns_of(const Ops& ops, const SparseIntMatrix& m) {
  std::vector<Vec<Ops>> cols(m.cols);
  for (const auto& e : m.entries) {
    auto v = ops.from_int(e.value);
    if (!ops.is_zero(v)) cols[e.col].emplace_back(e.row, std::move(v));
  }
  for (auto& c : cols) {
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return cols;
}

using IntRow = std::vector<std::pair<std::uint32_t, std::int64_t>>;

/// Rank over the rationals of integer rows (each sorted by column) by
/// fraction-free elimination in 64-bit integers. nullopt if a value would
/// overflow; the caller then falls back to exact rationals.
std::optional<std::size_t> integer_rank(std::vector<IntRow> rows);

}  // namespace sparse

/// Exact rank of an integer matrix over the given field.
std::size_t rank(const SparseIntMatrix& m, const Field& field);

}  // namespace lcmv
