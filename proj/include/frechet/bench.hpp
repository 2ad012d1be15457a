#pragma once

// Scaling benchmark: runs the tree solver on bounded-degree perturbed-copy
// trees of increasing size and fits a log-log slope to the wall times.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "frechet/oracle.hpp"
#include "frechet/tree_frechet.hpp"

namespace frechet {

struct BenchRow {
  std::size_t n = 0;
  double millis = 0.0;
  double result = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double slope = 0.0;  // least-squares fit of log(time) against log(n)
};

inline BenchReport run_tree_bench(const std::vector<std::size_t>& sizes, std::uint64_t seed,
                                  int degree_bound = 3, double eps = 0.01) {
  BenchReport report;
  for (std::size_t n : sizes) {
    oracle::InstanceSpec spec;
    spec.kind = oracle::InstanceSpec::Kind::perturbed_copy;
    spec.vertex_count = static_cast<int>(n);
    spec.degree_bound = degree_bound;
    spec.epsilon = eps;
    spec.seed = seed + n;
    const auto [a, b] = oracle::gen_instance_pair(spec);
    const auto t0 = std::chrono::steady_clock::now();
    const TreeFrechetResult r = tree_frechet_unrooted(a, b);
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.rows.push_back({n, ms, r.distance.value_or_infinity()});
  }

  if (report.rows.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(report.rows.size());
    for (const BenchRow& row : report.rows) {
      const double x = std::log(static_cast<double>(row.n));
      const double y = std::log(std::max(row.millis, 1e-3));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    report.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return report;
}

}  // namespace frechet
