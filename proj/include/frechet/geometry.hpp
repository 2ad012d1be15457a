#pragma once

// Points, polylines and the continuous Frechet distance between polygonal
// curves with fixed endpoint correspondence. Decisions run on the free-space
// diagram; exact values come from enumerating the classic critical values
// (endpoint distances, vertex-segment distances, passage openings) and
// binary-searching them with the decision procedure.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frechet/errors.hpp"

namespace frechet {

// A decision at candidate value v is evaluated at v + kDecisionSlack so that
// root-finding roundoff cannot produce false negatives.
inline constexpr double kDecisionSlack = 1e-9;

class Point {
public:
  Point() = default;
  Point(std::initializer_list<double> coords) : coords_(coords) {}
  explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {}

  std::size_t dimension() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  bool all_finite() const {
    for (double c : coords_) {
      if (!std::isfinite(c)) return false;
    }
    return true;
  }

  friend bool operator==(const Point& a, const Point& b) { return a.coords_ == b.coords_; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(),
                                        b.coords_.begin(), b.coords_.end());
  }

private:
  std::vector<double> coords_;
};

inline double squared_distance(const Point& p, const Point& q) {
  if (p.dimension() != q.dimension())
    fail(errc::dimension_mismatch, "squared_distance: points of dimension " +
                                       std::to_string(p.dimension()) + " and " +
                                       std::to_string(q.dimension()));
  double s = 0.0;
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

inline double point_distance(const Point& p, const Point& q) {
  return std::sqrt(squared_distance(p, q));
}

class Polyline {
public:
  explicit Polyline(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.size() < 2)
      fail(errc::invalid_polyline, "polyline needs at least 2 points");
    const std::size_t dim = points_.front().dimension();
    if (dim == 0) fail(errc::invalid_polyline, "polyline points need dimension >= 1");
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (points_[i].dimension() != dim)
        fail(errc::dimension_mismatch, "polyline mixes point dimensions");
      if (!points_[i].all_finite())
        fail(errc::nonfinite_coordinate, "polyline point " + std::to_string(i) +
                                             " has a non-finite coordinate");
      if (i > 0 && points_[i] == points_[i - 1])
        fail(errc::invalid_polyline,
             "consecutive duplicate point at index " + std::to_string(i));
    }
  }

  Polyline(std::initializer_list<Point> points) : Polyline(std::vector<Point>(points)) {}

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return points_.front().dimension(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const Point& front() const { return points_.front(); }
  const Point& back() const { return points_.back(); }
  const std::vector<Point>& points() const { return points_; }

  Polyline reversed() const {
    return Polyline(std::vector<Point>(points_.rbegin(), points_.rend()));
  }

  double max_segment_length() const {
    double m = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i)
      m = std::max(m, point_distance(points_[i - 1], points_[i]));
    return m;
  }

  friend bool operator==(const Polyline& a, const Polyline& b) { return a.points_ == b.points_; }
  friend bool operator!=(const Polyline& a, const Polyline& b) { return !(a == b); }
  friend bool operator<(const Polyline& a, const Polyline& b) {
    return std::lexicographical_compare(a.points_.begin(), a.points_.end(),
                                        b.points_.begin(), b.points_.end());
  }

private:
  std::vector<Point> points_;
};

// Nonnegative distance or UNDEFINED (graphs not isomorphic under the required
// constraints). UNDEFINED compares greater than every finite value.
class ExtendedDistance {
public:
  ExtendedDistance() : value_(std::numeric_limits<double>::infinity()) {}

  static ExtendedDistance undefined() { return ExtendedDistance(); }

  static ExtendedDistance finite(double v) {
    if (!std::isfinite(v) || v < 0.0)
      fail(errc::internal_error, "ExtendedDistance::finite needs a finite nonnegative value");
    ExtendedDistance d;
    d.value_ = v;
    return d;
  }

  bool defined() const { return std::isfinite(value_); }

  double value() const {
    if (!defined()) fail(errc::undefined_witness, "ExtendedDistance is undefined");
    return value_;
  }

  // infinity when undefined; handy for min/max folds
  double value_or_infinity() const { return value_; }

  friend bool operator==(const ExtendedDistance& a, const ExtendedDistance& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtendedDistance& a, const ExtendedDistance& b) {
    return !(a == b);
  }
  friend bool operator<(const ExtendedDistance& a, const ExtendedDistance& b) {
    return a.value_ < b.value_;
  }

private:
  double value_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Closed subinterval of [0,1] where segment a->b stays within delta of p.
// Endpoint membership is decided by the exact squared-distance predicate so
// that cell-boundary connections in the free-space diagram are consistent.
inline std::optional<Interval> free_space_interval(const Point& a, const Point& b,
                                                   const Point& p, double delta) {
  if (delta < 0.0) fail(errc::negative_delta, "free_space_interval: negative delta");
  if (a == b) fail(errc::degenerate_segment, "free_space_interval: segment endpoints coincide");
  const double d2 = delta * delta;
  const bool a_free = squared_distance(a, p) <= d2;
  const bool b_free = squared_distance(b, p) <= d2;
  if (a_free && b_free) return Interval{0.0, 1.0};

  // |a + t(b-a) - p|^2 = qa t^2 - 2 qb t + qc
  double qa = 0.0, qb = 0.0, qc = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double u = b[i] - a[i];
    const double w = p[i] - a[i];
    qa += u * u;
    qb += u * w;
    qc += w * w;
  }
  const double disc = qb * qb - qa * (qc - d2);
  if (disc < 0.0) {
    if (a_free) return Interval{0.0, 0.0};
    if (b_free) return Interval{1.0, 1.0};
    return std::nullopt;
  }
  const double root = std::sqrt(disc);
  double lo = a_free ? 0.0 : std::max((qb - root) / qa, 0.0);
  double hi = b_free ? 1.0 : std::min((qb + root) / qa, 1.0);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

// Free-space diagram reachability: true iff the continuous Frechet distance
// between P and Q (start matched to start, end to end) is at most delta.
inline bool frechet_decision(const Polyline& P, const Polyline& Q, double delta) {
  if (delta < 0.0) fail(errc::negative_delta, "frechet_decision: negative delta");
  if (P.dimension() != Q.dimension())
    fail(errc::dimension_mismatch, "frechet_decision: curves of different dimension");

  const std::size_t n = P.size(), m = Q.size();
  const double d2 = delta * delta;
  if (squared_distance(P[0], Q[0]) > d2) return false;
  if (squared_distance(P[n - 1], Q[m - 1]) > d2) return false;

  using MaybeInterval = std::optional<Interval>;
  // bottom(i,j): reachable part of the boundary t = j along P-segment i.
  // left(i,j):   reachable part of the boundary s = i along Q-segment j.
  std::vector<MaybeInterval> bottom((n - 1) * m);
  std::vector<MaybeInterval> left(n * (m - 1));
  auto bot = [&](std::size_t i, std::size_t j) -> MaybeInterval& { return bottom[i * m + j]; };
  auto lef = [&](std::size_t i, std::size_t j) -> MaybeInterval& { return left[i * (m - 1) + j]; };

  // Boundary rows: a point on t = 0 (s = 0) is reachable only through a
  // contiguous free run starting at the origin. Endpoint snapping makes the
  // corner predicate prev.hi == 1 match the lo == 0 snap of the next edge.
  bot(0, 0) = free_space_interval(P[0], P[1], Q[0], delta);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const MaybeInterval& prev = bot(i - 1, 0);
    if (prev && prev->hi >= 1.0) bot(i, 0) = free_space_interval(P[i], P[i + 1], Q[0], delta);
  }
  lef(0, 0) = free_space_interval(Q[0], Q[1], P[0], delta);
  for (std::size_t j = 1; j + 1 < m; ++j) {
    const MaybeInterval& prev = lef(0, j - 1);
    if (prev && prev->hi >= 1.0) lef(0, j) = free_space_interval(Q[j], Q[j + 1], P[0], delta);
  }

  // Sweep cells in increasing (i, j); free space inside a cell is convex, so
  // from the left edge everything free on the top/right with equal-or-larger
  // parameters is reachable, and entering from below only bounds the top edge
  // from the left.
  for (std::size_t j = 0; j + 1 < m; ++j) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const MaybeInterval b_in = bot(i, j);
      const MaybeInterval l_in = lef(i, j);
      if (!b_in && !l_in) continue;
      MaybeInterval top = free_space_interval(P[i], P[i + 1], Q[j + 1], delta);
      if (top) {
        if (!l_in) top->lo = std::max(top->lo, b_in->lo);
        if (top->lo <= top->hi) bot(i, j + 1) = top;
      }
      MaybeInterval right = free_space_interval(Q[j], Q[j + 1], P[i + 1], delta);
      if (right) {
        if (!b_in) right->lo = std::max(right->lo, l_in->lo);
        if (right->lo <= right->hi) lef(i + 1, j) = right;
      }
    }
  }

  // The end corner is free, so any nonempty reachable interval on the last
  // top/right boundary extends to it (its hi snaps to 1).
  return bot(n - 2, m - 1).has_value() || lef(n - 1, m - 2).has_value();
}

inline double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  double qa = 0.0, qb = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double u = b[i] - a[i];
    const double w = p[i] - a[i];
    qa += u * u;
    qb += u * w;
  }
  const double t = qa > 0.0 ? std::clamp(qb / qa, 0.0, 1.0) : 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double d = a[i] + t * (b[i] - a[i]) - p[i];
    s += d * d;
  }
  return std::sqrt(s);
}

namespace detail {

// Type (c) critical values: for vertices u, w of A and a segment of B, the
// common distance to the point of the segment equidistant from u and w.
inline void passage_openings(const Polyline& A, const Polyline& B, std::vector<double>& out) {
  for (std::size_t ui = 0; ui < A.size(); ++ui) {
    for (std::size_t wi = ui + 1; wi < A.size(); ++wi) {
      const Point& u = A[ui];
      const Point& w = A[wi];
      if (u == w) continue;
      for (std::size_t j = 0; j + 1 < B.size(); ++j) {
        const Point& a = B[j];
        const Point& b = B[j + 1];
        // solve (a + t(b-a) - (u+w)/2) . (w-u) = 0
        double denom = 0.0, numer = 0.0;
        for (std::size_t k = 0; k < u.dimension(); ++k) {
          const double n_k = w[k] - u[k];
          denom += (b[k] - a[k]) * n_k;
          numer += (0.5 * (u[k] + w[k]) - a[k]) * n_k;
        }
        if (denom == 0.0) continue;  // segment parallel to the bisector
        const double t = numer / denom;
        if (t < 0.0 || t > 1.0) continue;
        double s = 0.0;
        for (std::size_t k = 0; k < u.dimension(); ++k) {
          const double d = a[k] + t * (b[k] - a[k]) - u[k];
          s += d * d;
        }
        out.push_back(std::sqrt(s));
      }
    }
  }
}

}  // namespace detail

// Sorted, deduplicated list guaranteed to contain the exact Frechet distance.
inline std::vector<double> frechet_critical_values(const Polyline& P, const Polyline& Q) {
  if (P.dimension() != Q.dimension())
    fail(errc::dimension_mismatch, "frechet_critical_values: dimension mismatch");
  std::vector<double> vals;
  vals.reserve(2 + P.size() * Q.size() * 2);
  // (a) endpoint distances
  vals.push_back(point_distance(P.front(), Q.front()));
  vals.push_back(point_distance(P.back(), Q.back()));
  // (b) vertex-segment distances, both directions
  for (std::size_t i = 0; i < P.size(); ++i)
    for (std::size_t j = 0; j + 1 < Q.size(); ++j)
      vals.push_back(point_segment_distance(P[i], Q[j], Q[j + 1]));
  for (std::size_t j = 0; j < Q.size(); ++j)
    for (std::size_t i = 0; i + 1 < P.size(); ++i)
      vals.push_back(point_segment_distance(Q[j], P[i], P[i + 1]));
  // (c) passage openings, both directions
  detail::passage_openings(P, Q, vals);
  detail::passage_openings(Q, P, vals);

  std::sort(vals.begin(), vals.end());
  // merge float twins; kDecisionSlack dominates this noise floor by far
  std::vector<double> dedup;
  dedup.reserve(vals.size());
  for (double v : vals) {
    if (dedup.empty() || v - dedup.back() > 1e-12) dedup.push_back(v);
  }
  return dedup;
}

// Smallest critical value accepted by the decision procedure. Exact up to the
// numeric tolerance policy; symmetric by canonicalizing the argument order.
inline double curve_frechet(const Polyline& P, const Polyline& Q) {
  if (P.dimension() != Q.dimension())
    fail(errc::dimension_mismatch, "curve_frechet: dimension mismatch");
  if (P.size() == 2 && Q.size() == 2) {
    // two segments: the linear matching is optimal and the endpoint bound tight
    return std::max(point_distance(P[0], Q[0]), point_distance(P[1], Q[1]));
  }
  const Polyline* a = &P;
  const Polyline* b = &Q;
  if (*b < *a) std::swap(a, b);

  const std::vector<double> values = frechet_critical_values(*a, *b);
  if (!frechet_decision(*a, *b, values.back() + kDecisionSlack))
    fail(errc::internal_error, "curve_frechet: critical values miss the distance");
  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (frechet_decision(*a, *b, values[mid] + kDecisionSlack))
      hi = mid;
    else
      lo = mid + 1;
  }
  return values[lo];
}

// Classic coupled-walk discrete Frechet distance over the vertex sequences.
inline double discrete_frechet(const Polyline& P, const Polyline& Q) {
  if (P.dimension() != Q.dimension())
    fail(errc::dimension_mismatch, "discrete_frechet: dimension mismatch");
  const std::size_t n = P.size(), m = Q.size();
  std::vector<double> prev(m), cur(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double d = squared_distance(P[0], Q[j]);
    prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
  }
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = squared_distance(P[i], Q[j]);
      double best = prev[j];
      if (j > 0) best = std::min(best, std::min(prev[j - 1], cur[j - 1]));
      cur[j] = std::max(best, d);
    }
    std::swap(prev, cur);
  }
  return std::sqrt(prev[m - 1]);
}

}  // namespace frechet
