#include "lcmv/sparse.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "lcmv/error.hpp"

namespace lcmv {

int SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  int sum = 0;
  for (const auto& e : entries) {
    if (e.row == r && e.col == c) sum += e.value;
  }
  return sum;
}

bool SparseIntMatrix::is_zero() const {
  std::map<std::pair<std::uint32_t, std::uint32_t>, long> acc;
  for (const auto& e : entries) acc[{e.row, e.col}] += e.value;
  return std::all_of(acc.begin(), acc.end(), [](const auto& kv) { return kv.second == 0; });
}

SparseIntMatrix SparseIntMatrix::compose(const SparseIntMatrix& rhs) const {
  if (cols != rhs.rows) throw Error(ErrorCode::kInvalidArgument, "sparse shapes do not compose");
  std::vector<std::vector<std::pair<std::uint32_t, int>>> rhs_rows(rhs.rows);
  for (const auto& e : rhs.entries) rhs_rows[e.row].emplace_back(e.col, e.value);
  std::map<std::pair<std::uint32_t, std::uint32_t>, long> acc;
  for (const auto& e : entries) {
    for (const auto& [col, value] : rhs_rows[e.col]) acc[{e.row, col}] += static_cast<long>(e.value) * value;
  }
  SparseIntMatrix out{rows, rhs.cols, {}};
  for (const auto& [pos, value] : acc) {
    if (value != 0) out.entries.push_back({pos.first, pos.second, static_cast<int>(value)});
  }
  return out;
}

namespace sparse {

PrimeOps::Value PrimeOps::from_mpq(const mpq_class& v) const {
  Field f = Field::prime(p);
  return static_cast<Value>(f.reduce(v).get_num().get_ui());
}

PrimeOps::Value PrimeOps::inv(const Value& a) const {
  // Fermat: a^(p-2).
  Value result = 1, base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

namespace {

bool combine(std::int64_t a, const IntRow& v, std::int64_t b, const IntRow& r, IntRow& out) {
  // out = a*v - b*r, skipping the cancelled leading entry.
  out.clear();
  std::size_t i = 0, j = 0;
  while (i < v.size() || j < r.size()) {
    std::uint32_t col;
    std::int64_t x = 0, y = 0;
    if (j == r.size() || (i < v.size() && v[i].first < r[j].first)) {
      col = v[i].first;
      x = v[i++].second;
    } else if (i == v.size() || r[j].first < v[i].first) {
      col = r[j].first;
      y = r[j++].second;
    } else {
      col = v[i].first;
      x = v[i++].second;
      y = r[j++].second;
    }
    std::int64_t ax = 0, by = 0, z = 0;
    if (__builtin_mul_overflow(a, x, &ax) || __builtin_mul_overflow(b, y, &by) || __builtin_sub_overflow(ax, by, &z)) {
      return false;
    }
    if (z != 0) out.emplace_back(col, z);
  }
  std::int64_t g = 0;
  for (const auto& e : out) g = std::gcd(g, e.second < 0 ? -e.second : e.second);
  if (g > 1) {
    for (auto& e : out) e.second /= g;
  }
  return true;
}

}  // namespace

std::optional<std::size_t> integer_rank(std::vector<IntRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  std::vector<IntRow> basis;
  std::unordered_map<std::uint32_t, std::size_t> pivot_of;
  IntRow scratch;
  for (auto& v : rows) {
    for (auto& e : v) {
      if (e.second == std::numeric_limits<std::int64_t>::min()) return std::nullopt;
    }
    std::erase_if(v, [](const auto& e) { return e.second == 0; });
    while (!v.empty()) {
      auto it = pivot_of.find(v.front().first);
      if (it == pivot_of.end()) break;
      const IntRow& r = basis[it->second];
      const std::int64_t g = std::gcd(r.front().second, v.front().second);
      if (!combine(r.front().second / g, v, v.front().second / g, r, scratch)) return std::nullopt;
      std::swap(v, scratch);
    }
    if (v.empty()) continue;
    pivot_of.emplace(v.front().first, basis.size());
    basis.push_back(std::move(v));
  }
  return basis.size();
}

}  // namespace sparse

std::size_t rank(const SparseIntMatrix& m, const Field& field) {
  if (field.is_rational()) {
    std::vector<sparse::IntRow> rows(m.rows);
    for (const auto& e : m.entries) rows[e.row].emplace_back(e.col, e.value);
    for (auto& r : rows) {
      std::sort(r.begin(), r.end());
      // Merge repeated positions.
      sparse::IntRow merged;
      for (const auto& e : r) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(e);
        }
      }
      r = std::move(merged);
    }
    if (auto r = sparse::integer_rank(std::move(rows))) return *r;
  }
  return sparse::with_ops(field, [&](const auto& ops) {
    auto rows = sparse::rows_of(ops, m);
    // Sparser rows first keeps fill-in down.
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    sparse::Echelon ech(ops);
    for (auto& r : rows) {
      if (!r.empty()) ech.insert(std::move(r));
    }
    return ech.rank();
  });
}

}  // namespace lcmv
