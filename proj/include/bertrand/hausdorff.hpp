#pragma once

// Hausdorff-distance diagnostics between the normalized square sets and the
// segment approximations of their limit set.  Both families are sampled to
// finite point clouds; the symmetric Hausdorff distance of the clouds is
// reported together with the discretization error bound
// (spacing_a + spacing_b) * sqrt(2) / 2.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "bertrand/parallel.hpp"
#include "bertrand/star.hpp"
#include "bertrand/triangle.hpp"

namespace bertrand {

struct PointCloud {
  std::vector<Vec2> points;
  double spacing = 0.0;  // sampling pitch
  std::string provenance;
};

namespace detail {

inline void sort_dedup(std::vector<Vec2>& pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  // Shared corners of adjacent cells may differ by rounding only.
  const double eps = 1e-9;
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& p : pts) {
    if (!out.empty() && std::abs(p.x - out.back().x) <= eps &&
        std::abs(p.y - out.back().y) <= eps)
      continue;
    out.push_back(p);
  }
  pts.swap(out);
}

}  // namespace detail

/// Grid samples of every cell square, boundary included, deduplicated.
/// spacing must not exceed the cell side 1/U(n); with spacing equal to it,
/// exactly the cell corner lattice is sampled.
inline PointCloud sample_square_set(const SquareSet& set, double spacing) {
  const double side = set.unit();
  if (!(spacing > 0)) throw std::invalid_argument("sampling spacing must be positive");
  if (spacing > side * (1 + 1e-12))
    throw std::invalid_argument("sampling spacing exceeds the cell size");
  const int steps = std::max(1, static_cast<int>(std::ceil(side / spacing - 1e-12)));
  PointCloud cloud;
  cloud.spacing = spacing;
  cloud.provenance = "uset n=" + std::to_string(set.n) + " r=" + std::to_string(set.residue.r) +
                     " mod " + std::to_string(set.residue.q);
  cloud.points.reserve(set.cells.size() * static_cast<std::size_t>((steps + 1) * (steps + 1)));
  for (const SquareSet::Cell& c : set.cells) {
    const double x0 = static_cast<double>(c.col) * side;
    const double y0 = static_cast<double>(c.row) * side;
    for (int tx = 0; tx <= steps; ++tx) {
      const double dx = std::min(tx * spacing, side);
      for (int ty = 0; ty <= steps; ++ty) {
        const double dy = std::min(ty * spacing, side);
        cloud.points.push_back({x0 + dx, y0 + dy});
      }
    }
  }
  detail::sort_dedup(cloud.points);
  return cloud;
}

/// Arclength samples of every segment, endpoints always included,
/// deduplicated across segments.
inline PointCloud sample_segment_set(const SegmentSet& set, double spacing) {
  if (!(spacing > 0)) throw std::invalid_argument("sampling spacing must be positive");
  PointCloud cloud;
  cloud.spacing = spacing;
  cloud.provenance = "segments count=" + std::to_string(set.size());
  for (const Segment& s : set) {
    const double dx = s.b.x - s.a.x;
    const double dy = s.b.y - s.a.y;
    const double len = std::sqrt(dx * dx + dy * dy);
    const int steps = std::max(1, static_cast<int>(std::ceil(len / spacing - 1e-12)));
    for (int t = 0; t <= steps; ++t) {
      const double f = static_cast<double>(t) / steps;
      cloud.points.push_back({s.a.x + f * dx, s.a.y + f * dy});
    }
  }
  detail::sort_dedup(cloud.points);
  return cloud;
}

// ---------------------------------------------------------------------------
// Distance

namespace detail {

/// Uniform-bucket index over the target cloud for near-linear nearest
/// neighbor queries.
class BucketGrid {
 public:
  BucketGrid(const std::vector<Vec2>& pts, double cell) : pts_(pts), cell_(cell) {
    min_x_ = min_y_ = std::numeric_limits<double>::infinity();
    for (const Vec2& p : pts) {
      min_x_ = std::min(min_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      buckets_[key(coord(pts[i].x, min_x_), coord(pts[i].y, min_y_))].push_back(
          static_cast<int>(i));
  }

  double nearest_distance(const Vec2& p) const {
    const long long bx = coord(p.x, min_x_);
    const long long by = coord(p.y, min_y_);
    double best2 = std::numeric_limits<double>::infinity();
    for (long long ring = 0;; ++ring) {
      if (ring > 0 && best2 < std::numeric_limits<double>::infinity()) {
        const double reach = (static_cast<double>(ring) - 1.0) * cell_;
        if (reach > 0 && reach * reach >= best2) break;
      }
      bool any_bucket = false;
      auto visit = [&](long long cx, long long cy) {
        const auto it = buckets_.find(key(cx, cy));
        if (it == buckets_.end()) return;
        any_bucket = true;
        for (int idx : it->second) {
          const double dx = pts_[static_cast<std::size_t>(idx)].x - p.x;
          const double dy = pts_[static_cast<std::size_t>(idx)].y - p.y;
          best2 = std::min(best2, dx * dx + dy * dy);
        }
      };
      if (ring == 0) {
        visit(bx, by);
      } else {
        for (long long d = -ring; d <= ring; ++d) {
          visit(bx + d, by - ring);
          visit(bx + d, by + ring);
        }
        for (long long d = -ring + 1; d <= ring - 1; ++d) {
          visit(bx - ring, by + d);
          visit(bx + ring, by + d);
        }
      }
      (void)any_bucket;
      // The target cloud is finite: once a candidate exists the reach test
      // above terminates the scan; before that, rings keep growing until
      // some bucket is hit (guaranteed, the cloud is non-empty).
    }
    return std::sqrt(best2);
  }

 private:
  long long coord(double v, double origin) const {
    return static_cast<long long>(std::floor((v - origin) / cell_));
  }
  static long long key(long long x, long long y) { return x * 2'000'003LL + y; }

  const std::vector<Vec2>& pts_;
  double cell_;
  double min_x_, min_y_;
  std::unordered_map<long long, std::vector<int>> buckets_;
};

inline double directed_hausdorff(const std::vector<Vec2>& from, const BucketGrid& grid,
                                 int threads) {
  std::vector<double> chunk_max(static_cast<std::size_t>(std::max(threads, 1)), 0.0);
  const std::size_t workers = chunk_max.size();
  parallel_for(workers, threads, [&](std::size_t w) {
    double best = 0.0;
    for (std::size_t i = w; i < from.size(); i += workers)
      best = std::max(best, grid.nearest_distance(from[i]));
    chunk_max[w] = best;
  });
  double out = 0.0;
  for (double v : chunk_max) out = std::max(out, v);
  return out;
}

}  // namespace detail

struct HausdorffResult {
  double distance = 0.0;
  double error_bound = 0.0;
};

/// Symmetric Hausdorff distance of two sampled clouds, with the
/// discretization error bound of the underlying sets.  Nearest-neighbor
/// queries use spatial buckets of size max(spacing_a, spacing_b).
inline HausdorffResult hausdorff_distance(const PointCloud& a, const PointCloud& b,
                                          int threads = 1) {
  if (a.points.empty() || b.points.empty())
    throw std::invalid_argument("empty point cloud");
  if (!(a.spacing > 0) || !(b.spacing > 0))
    throw std::invalid_argument("point cloud has nonpositive spacing");
  const double cell = std::max(a.spacing, b.spacing);
  const detail::BucketGrid grid_b(b.points, cell);
  const detail::BucketGrid grid_a(a.points, cell);
  HausdorffResult r;
  r.distance = std::max(detail::directed_hausdorff(a.points, grid_b, threads),
                        detail::directed_hausdorff(b.points, grid_a, threads));
  r.error_bound = (a.spacing + b.spacing) * std::sqrt(2.0) / 2.0;
  return r;
}

// ---------------------------------------------------------------------------
// Convergence report

struct ConvergenceRow {
  int n = 0;
  double distance = 0.0;
  double error_bound = 0.0;
  std::size_t points_u = 0;
  std::size_t points_a = 0;
};

/// Distances d_H(U_{n,r}, A_iters) for n in [n_lo, n_hi].  Squares are
/// sampled at their own cell size 1/U(n); the segment family once at
/// seg_spacing.
inline std::vector<ConvergenceRow> convergence_report(const NumerationSystem& sys,
                                                      const ResidueSpec& res, int n_lo, int n_hi,
                                                      int a_maxlen, int a_iters,
                                                      double seg_spacing = 1e-3,
                                                      int threads = 1) {
  if (n_lo < 0 || n_hi < n_lo) throw std::invalid_argument("bad depth range");
  const SegmentSet an = an_approx(a0_approx(sys, a_maxlen, res, threads), a_iters, sys);
  const PointCloud cloud_a = sample_segment_set(an, seg_spacing);
  std::vector<ConvergenceRow> rows;
  rows.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (int n = n_lo; n <= n_hi; ++n) {
    const SquareSet set = u_set(sys, n, res, threads);
    const PointCloud cloud_u = sample_square_set(set, set.unit());
    const HausdorffResult h = hausdorff_distance(cloud_u, cloud_a, threads);
    rows.push_back({n, h.distance, h.error_bound, cloud_u.points.size(), cloud_a.points.size()});
  }
  return rows;
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows, int a_maxlen,
                                   int a_iters) {
  std::string out = "n,distance,error_bound,points_u,points_a,a_maxlen,a_iters\n";
  for (const ConvergenceRow& r : rows) {
    out += std::to_string(r.n) + ',' + detail::format_double(r.distance, "%.6f") + ',' +
           detail::format_double(r.error_bound, "%.6f") + ',' + std::to_string(r.points_u) +
           ',' + std::to_string(r.points_a) + ',' + std::to_string(a_maxlen) + ',' +
           std::to_string(a_iters) + '\n';
  }
  return out;
}

inline void write_convergence_csv(const std::vector<ConvergenceRow>& rows, int a_maxlen,
                                  int a_iters, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << convergence_csv(rows, a_maxlen, a_iters);
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace bertrand
