#ifndef ISING_GEOMETRY_HPP
#define ISING_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <vector>

namespace ising {

// All lattice objects live on a common integer grid in quarter-mesh units:
//   primal vertices   (4i, 4j)
//   dual vertices     (4i+2, 4j+2)
//   bi-medial vertices (odd, odd)
// Physical coordinates are q * mesh / 4. Keeping everything integral makes
// winding tests and adjacency exact.
struct QPoint {
  int32_t x = 0;
  int32_t y = 0;

  friend bool operator==(const QPoint& a, const QPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const QPoint& a, const QPoint& b) { return !(a == b); }
  friend bool operator<(const QPoint& a, const QPoint& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;  // row-major
  }
  QPoint operator+(const QPoint& o) const { return {x + o.x, y + o.y}; }
  QPoint operator-(const QPoint& o) const { return {x - o.x, y - o.y}; }
};

inline QPoint rotate_ccw(QPoint d) { return {-d.y, d.x}; }
inline QPoint rotate_cw(QPoint d) { return {d.y, -d.x}; }

struct QPointHash {
  size_t operator()(const QPoint& p) const {
    uint64_t v = (uint64_t(uint32_t(p.x)) << 32) | uint32_t(p.y);
    v *= 0x9e3779b97f4a7c15ULL;
    return size_t(v ^ (v >> 32));
  }
};

inline double qdist(const QPoint& a, const QPoint& b, double mesh) {
  double dx = (a.x - b.x) * mesh / 4.0;
  double dy = (a.y - b.y) * mesh / 4.0;
  return std::sqrt(dx * dx + dy * dy);
}

inline int64_t qdist2_int(const QPoint& a, const QPoint& b) {
  int64_t dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Twice the signed area (shoelace) of a closed polygon, in quarter units.
// Positive = counterclockwise.
inline int64_t signed_area2(const std::vector<QPoint>& pts) {
  int64_t s = 0;
  size_t n = pts.size();
  for (size_t i = 0; i < n; ++i) {
    const QPoint& p = pts[i];
    const QPoint& q = pts[(i + 1) % n];
    s += int64_t(p.x) * q.y - int64_t(q.x) * p.y;
  }
  return s;
}

// Euclidean diameter of a point set in physical units, via convex hull +
// rotating calipers (loops at mesh 1/256 get long).
double point_set_diameter(const std::vector<QPoint>& pts, double mesh);

// Parity of horizontal-ray crossings from p toward -infinity against the
// closed rectilinear polyline `loop`. Exact on the quarter lattice as long
// as p does not lie on the loop, which the caller must guarantee; points of
// the loop never share a y-coordinate with vertices of a different
// sublattice, so crossings are always transversal.
bool winding_odd(const std::vector<QPoint>& loop, const QPoint& p);

// True if p lies on one of the loop's segments (all axis-parallel).
bool on_loop(const std::vector<QPoint>& loop, const QPoint& p);

}  // namespace ising

#endif
