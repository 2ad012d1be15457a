#pragma once

// Bipartite perfect matching under a weight threshold and bottleneck matching
// over a weight matrix. The matching engine is a phase-batched augmenting
// path search (Hopcroft-Karp); the bottleneck value comes from a binary
// search over the sorted distinct finite weights, so results are exact.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "frechet/geometry.hpp"

namespace frechet {

class WeightMatrix {
public:
  WeightMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), w_(rows * cols, ExtendedDistance::undefined()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ExtendedDistance& at(std::size_t i, std::size_t j) { return w_[i * cols_ + j]; }
  const ExtendedDistance& at(std::size_t i, std::size_t j) const { return w_[i * cols_ + j]; }

private:
  std::size_t rows_, cols_;
  std::vector<ExtendedDistance> w_;
};

// injective row -> column assignment, total on rows
using Matching = std::vector<std::size_t>;

namespace detail {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

class HopcroftKarp {
public:
  HopcroftKarp(std::size_t n, const std::vector<std::vector<std::size_t>>& adj)
      : n_(n), adj_(adj), match_row_(n, kUnmatched), match_col_(n, kUnmatched), level_(n) {}

  std::size_t run() {
    std::size_t matched = 0;
    while (bfs()) {
      for (std::size_t r = 0; r < n_; ++r)
        if (match_row_[r] == kUnmatched && dfs(r)) ++matched;
    }
    return matched;
  }

  const std::vector<std::size_t>& row_matches() const { return match_row_; }

private:
  bool bfs() {
    std::queue<std::size_t> q;
    for (std::size_t r = 0; r < n_; ++r) {
      if (match_row_[r] == kUnmatched) {
        level_[r] = 0;
        q.push(r);
      } else {
        level_[r] = kUnmatched;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const std::size_t r = q.front();
      q.pop();
      for (std::size_t c : adj_[r]) {
        const std::size_t r2 = match_col_[c];
        if (r2 == kUnmatched) {
          found = true;
        } else if (level_[r2] == kUnmatched) {
          level_[r2] = level_[r] + 1;
          q.push(r2);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t r) {
    for (std::size_t c : adj_[r]) {
      const std::size_t r2 = match_col_[c];
      if (r2 == kUnmatched || (level_[r2] == level_[r] + 1 && dfs(r2))) {
        match_row_[r] = c;
        match_col_[c] = r;
        return true;
      }
    }
    level_[r] = kUnmatched;
    return false;
  }

  std::size_t n_;
  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> match_row_, match_col_, level_;
};

}  // namespace detail

// A perfect matching using only entries <= threshold, if one exists.
// UNDEFINED entries count as absent edges. Deterministic for fixed input.
inline std::optional<Matching> perfect_matching_under(const WeightMatrix& w, double threshold) {
  if (w.rows() != w.cols()) return std::nullopt;
  const std::size_t n = w.rows();
  if (n == 0) return Matching{};
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const ExtendedDistance& e = w.at(i, j);
      if (e.defined() && e.value() <= threshold) adj[i].push_back(j);
    }
  detail::HopcroftKarp hk(n, adj);
  if (hk.run() != n) return std::nullopt;
  return hk.row_matches();
}

struct BottleneckResult {
  double value = 0.0;
  Matching matching;
};

// Minimal threshold over the sorted distinct finite entries that admits a
// perfect matching, plus a witness. The witness necessarily contains an entry
// equal to the value: a matching below it would make a smaller threshold
// feasible.
inline std::optional<BottleneckResult> bottleneck_matching(const WeightMatrix& w) {
  if (w.rows() != w.cols()) return std::nullopt;
  if (w.rows() == 0) return BottleneckResult{0.0, {}};
  std::vector<double> values;
  values.reserve(w.rows() * w.cols());
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j)
      if (w.at(i, j).defined()) values.push_back(w.at(i, j).value());
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  if (!perfect_matching_under(w, values.back())) return std::nullopt;
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (perfect_matching_under(w, values[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return BottleneckResult{values[lo], *perfect_matching_under(w, values[lo])};
}

}  // namespace frechet
