#include "ising/geometry.hpp"

#include <algorithm>

namespace ising {

namespace {

// Andrew monotone chain; returns hull in CCW order.
std::vector<QPoint> convex_hull(std::vector<QPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const QPoint& a, const QPoint& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n < 3) return pts;
  auto cross = [](const QPoint& o, const QPoint& a, const QPoint& b) {
    return int64_t(a.x - o.x) * (b.y - o.y) - int64_t(a.y - o.y) * (b.x - o.x);
  };
  std::vector<QPoint> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) k--;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i - 1]) <= 0) k--;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

double point_set_diameter(const std::vector<QPoint>& pts, double mesh) {
  if (pts.empty()) return 0.0;
  std::vector<QPoint> h = convex_hull(pts);
  size_t m = h.size();
  if (m == 1) return 0.0;
  if (m == 2) return qdist(h[0], h[1], mesh);
  // rotating calipers
  int64_t best = 0;
  size_t j = 1;
  auto area2 = [&](size_t a, size_t b, size_t c) {
    return std::llabs(int64_t(h[b].x - h[a].x) * (h[c].y - h[a].y) -
                      int64_t(h[b].y - h[a].y) * (h[c].x - h[a].x));
  };
  for (size_t i = 0; i < m; ++i) {
    size_t ni = (i + 1) % m;
    while (area2(i, ni, (j + 1) % m) > area2(i, ni, j)) j = (j + 1) % m;
    best = std::max(best, qdist2_int(h[i], h[j]));
    best = std::max(best, qdist2_int(h[ni], h[j]));
  }
  return std::sqrt(double(best)) * mesh / 4.0;
}

bool winding_odd(const std::vector<QPoint>& loop, const QPoint& p) {
  size_t n = loop.size();
  int crossings = 0;
  for (size_t i = 0; i < n; ++i) {
    const QPoint& a = loop[i];
    const QPoint& b = loop[(i + 1) % n];
    if (a.x != b.x) continue;  // only vertical segments cross a horizontal ray
    if (a.x >= p.x) continue;  // ray goes toward -infinity
    int ylo = std::min(a.y, b.y), yhi = std::max(a.y, b.y);
    if (p.y > ylo && p.y < yhi) {
      crossings++;
    } else if (p.y == ylo || p.y == yhi) {
      // Segment endpoint exactly on the ray line: count half-crossings by
      // whether the segment continues past the line. With quarter-lattice
      // inputs from loop tracing this does not occur (loop vertices and
      // query points live on distinct parities), but handle it for safety.
      if (p.y == ylo)
        crossings += (b.y > a.y) ? 1 : 0;
      else
        crossings += (a.y > b.y) ? 1 : 0;
    }
  }
  return (crossings & 1) != 0;
}

bool on_loop(const std::vector<QPoint>& loop, const QPoint& p) {
  size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const QPoint& a = loop[i];
    const QPoint& b = loop[(i + 1) % n];
    if (a.x == b.x) {
      if (p.x == a.x && p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y))
        return true;
    } else {
      if (p.y == a.y && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x))
        return true;
    }
  }
  return false;
}

}  // namespace ising
