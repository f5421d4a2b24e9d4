#include "ising/metric.hpp"

#include <algorithm>
#include <cmath>

namespace ising {

namespace {

double pt_dist(const std::pair<double, double>& p,
               const std::pair<double, double>& q) {
  double dx = p.first - q.first, dy = p.second - q.second;
  return std::sqrt(dx * dx + dy * dy);
}

// Linear discrete Frechet between closed-up sequences (first point appended).
double frechet_anchored(const std::vector<std::pair<double, double>>& a,
                        const std::vector<std::pair<double, double>>& b,
                        size_t shift) {
  size_t m = a.size() + 1, n = b.size() + 1;
  auto pa = [&](size_t i) { return a[i % a.size()]; };
  auto pb = [&](size_t j) { return b[(j + shift) % b.size()]; };
  std::vector<double> prev(n), cur(n);
  for (size_t j = 0; j < n; ++j) {
    double d = pt_dist(pa(0), pb(j));
    prev[j] = j == 0 ? d : std::max(prev[j - 1], d);
  }
  for (size_t i = 1; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) {
      double d = pt_dist(pa(i), pb(j));
      double reach;
      if (j == 0)
        reach = prev[0];
      else
        reach = std::min({prev[j], cur[j - 1], prev[j - 1]});
      cur[j] = std::max(d, reach);
    }
    std::swap(prev, cur);
  }
  return prev[n - 1];
}

}  // namespace

PolylineLoop to_polyline(const Loop& loop, double mesh) {
  PolylineLoop p;
  p.points.reserve(loop.points.size());
  for (const QPoint& q : loop.points)
    p.points.push_back({q.x * mesh / 4.0, q.y * mesh / 4.0});
  return p;
}

double loop_distance(const PolylineLoop& a, const PolylineLoop& b) {
  if (a.points.empty() || b.points.empty())
    return a.points.empty() && b.points.empty() ? 0.0 : 1e300;
  if (a.points.size() == 1 && b.points.size() == 1)
    return pt_dist(a.points[0], b.points[0]);
  double best = 1e300;
  for (size_t shift = 0; shift < b.points.size(); ++shift)
    best = std::min(best, frechet_anchored(a.points, b.points, shift));
  return best;
}

double loop_diameter(const PolylineLoop& a) {
  // convex hull + rotating calipers
  auto pts = a.points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  size_t n = pts.size();
  if (n < 2) return 0.0;
  if (n == 2) return pt_dist(pts[0], pts[1]);
  auto cross = [](const std::pair<double, double>& o,
                  const std::pair<double, double>& p,
                  const std::pair<double, double>& q) {
    return (p.first - o.first) * (q.second - o.second) -
           (p.second - o.second) * (q.first - o.first);
  };
  std::vector<std::pair<double, double>> h(2 * n);
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
  size_t m = h.size();
  if (m == 1) return 0.0;
  if (m == 2) return pt_dist(h[0], h[1]);
  double best = 0;
  size_t j = 1;
  auto area2 = [&](size_t p, size_t q, size_t r) {
    return std::abs(cross(h[p], h[q], h[r]));
  };
  for (size_t i = 0; i < m; ++i) {
    size_t ni = (i + 1) % m;
    while (area2(i, ni, (j + 1) % m) > area2(i, ni, j)) j = (j + 1) % m;
    best = std::max({best, pt_dist(h[i], h[j]), pt_dist(h[ni], h[j])});
  }
  return best;
}

namespace {

// Bipartite matching that must cover the `required` vertices on both sides.
// Kuhn's augmenting paths; previously covered vertices stay covered, so
// greedily augmenting from each required vertex decides feasibility exactly
// (vertex sets coverable by matchings form a matroid).
struct BottleneckMatcher {
  int nl, nr;
  const std::vector<std::vector<double>>& dist;
  double r;
  std::vector<int> match_l, match_r;

  BottleneckMatcher(int nl_, int nr_,
                    const std::vector<std::vector<double>>& d, double r_)
      : nl(nl_), nr(nr_), dist(d), r(r_), match_l(nl_, -1), match_r(nr_, -1) {}

  bool edge(int i, int j) const { return dist[i][j] <= r; }

  bool augment_left(int i, std::vector<char>& seen) {
    for (int j = 0; j < nr; ++j) {
      if (!edge(i, j) || seen[j]) continue;
      seen[j] = 1;
      if (match_r[j] < 0 || augment_left(match_r[j], seen)) {
        match_r[j] = i;
        match_l[i] = j;
        return true;
      }
    }
    return false;
  }

  bool augment_right(int j, std::vector<char>& seen) {
    for (int i = 0; i < nl; ++i) {
      if (!edge(i, j) || seen[i]) continue;
      seen[i] = 1;
      if (match_l[i] < 0 || augment_right(match_l[i], seen)) {
        match_l[i] = j;
        match_r[j] = i;
        return true;
      }
    }
    return false;
  }

  bool cover(const std::vector<int>& req_l, const std::vector<int>& req_r) {
    for (int i : req_l) {
      std::vector<char> seen(nr, 0);
      if (match_l[i] < 0 && !augment_left(i, seen)) return false;
    }
    for (int j : req_r) {
      std::vector<char> seen(nl, 0);
      if (match_r[j] < 0 && !augment_right(j, seen)) return false;
    }
    return true;
  }
};

}  // namespace

MatchingResult collection_distance(const std::vector<PolylineLoop>& a,
                                   const std::vector<PolylineLoop>& b) {
  int na = int(a.size()), nb = int(b.size());
  std::vector<double> diam_a(na), diam_b(nb);
  for (int i = 0; i < na; ++i) diam_a[i] = loop_diameter(a[i]);
  for (int j = 0; j < nb; ++j) diam_b[j] = loop_diameter(b[j]);
  std::vector<std::vector<double>> dist(na, std::vector<double>(nb));
  std::vector<double> candidates{0.0};
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      dist[i][j] = loop_distance(a[i], b[j]);
      candidates.push_back(dist[i][j]);
    }
  candidates.insert(candidates.end(), diam_a.begin(), diam_a.end());
  candidates.insert(candidates.end(), diam_b.begin(), diam_b.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  auto required = [&](double r, const std::vector<double>& diam) {
    std::vector<int> req;
    for (int i = 0; i < int(diam.size()); ++i)
      if (diam[i] > r) req.push_back(i);
    return req;
  };
  auto feasible = [&](double r, BottleneckMatcher* out) {
    BottleneckMatcher m(na, nb, dist, r);
    bool ok = m.cover(required(r, diam_a), required(r, diam_b));
    if (ok && out) {
      out->match_l = m.match_l;
      out->match_r = m.match_r;
    }
    return ok;
  };

  // monotone in r, so binary search over the candidate values
  int lo = 0, hi = int(candidates.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (feasible(candidates[mid], nullptr))
      hi = mid;
    else
      lo = mid + 1;
  }
  BottleneckMatcher witness(na, nb, dist, candidates[lo]);
  feasible(candidates[lo], &witness);

  MatchingResult res;
  for (int i = 0; i < na; ++i) {
    if (witness.match_l[i] >= 0)
      res.matching.push_back({i, witness.match_l[i]});
    else
      res.unmatched_a.push_back(i);
  }
  for (int j = 0; j < nb; ++j)
    if (witness.match_r[j] < 0) res.unmatched_b.push_back(j);
  double value = 0;
  for (auto [i, j] : res.matching) value = std::max(value, dist[i][j]);
  for (int i : res.unmatched_a) value = std::max(value, diam_a[i]);
  for (int j : res.unmatched_b) value = std::max(value, diam_b[j]);
  res.value = value;
  return res;
}

}  // namespace ising
