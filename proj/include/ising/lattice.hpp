#ifndef ISING_LATTICE_HPP
#define ISING_LATTICE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ising/geometry.hpp"

namespace ising {

struct LatticeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Face = unit cell [i,i+1]x[j,j+1] scaled by mesh.
struct Face {
  int32_t i = 0;
  int32_t j = 0;
  friend bool operator==(const Face& a, const Face& b) {
    return a.i == b.i && a.j == b.j;
  }
  friend bool operator<(const Face& a, const Face& b) {
    return a.j != b.j ? a.j < b.j : a.i < b.i;  // row-major
  }
};

// Plain adjacency view used by the spin/bond models. A DiscreteDomain
// exposes one, and tests can build tiny graphs (e.g. a single edge)
// directly.
struct Graph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;          // (a,b) with a < b
  std::vector<char> is_boundary_vertex;            // size n_vertices
  // Edges of the boundary circuit; these are the edges held open by wired
  // boundary conditions. Interior edges between two boundary vertices
  // (chords at domain necks) stay free, which keeps planar duality exact.
  std::vector<char> is_circuit_edge;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (nbr, edge)

  void build_adjacency() {
    adj.assign(n_vertices, {});
    for (int e = 0; e < int(edges.size()); ++e) {
      auto [a, b] = edges[e];
      adj[a].push_back({b, e});
      adj[b].push_back({a, e});
    }
    if (is_circuit_edge.size() != edges.size()) {
      is_circuit_edge.assign(edges.size(), 0);
      for (int e = 0; e < int(edges.size()); ++e)
        is_circuit_edge[e] = is_boundary_vertex.empty()
                                 ? 0
                                 : (is_boundary_vertex[edges[e].first] &&
                                    is_boundary_vertex[edges[e].second]);
    }
  }
  int degree(int v) const { return int(adj[v].size()); }
};

Graph make_path_graph(int n_vertices);  // n-1 edges, endpoints marked boundary

// Derived graph views ------------------------------------------------------

struct DualGraph {
  // Dual vertices are domain faces (same indexing); dual edge k crosses
  // primal interior edge primal_edge[k].
  std::vector<std::pair<int, int>> edges;  // (face_a, face_b), a < b
  std::vector<int> primal_edge;            // per dual edge
  std::vector<int> dual_edge_of_primal;    // per primal edge, -1 if none
};

enum class BimedialCross : uint8_t { primal, dual, none };

struct BimedialEdge {
  int a = 0, b = 0;                 // bimedial vertex indices, a < b
  BimedialCross cross = BimedialCross::none;
  int crossed = -1;
  // cross == primal: crossed = interior primal edge index
  // cross == dual:   crossed = dual edge index
  // cross == none:   the edge runs along the domain boundary over a missing
  //                  dual slot; crossed = the boundary primal edge that slot
  //                  would have been dual to
};

struct BimedialGraph {
  std::vector<QPoint> vertices;     // odd quarter coordinates, row-major
  std::vector<BimedialEdge> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (nbr, edge)
  std::unordered_map<QPoint, int, QPointHash> index;

  int vertex_at(const QPoint& p) const {
    auto it = index.find(p);
    return it == index.end() ? -1 : it->second;
  }
};

// Discrete domain ----------------------------------------------------------

class DiscreteDomain {
 public:
  // Throws LatticeError unless the face set is nonempty, face-connected and
  // simply connected.
  DiscreteDomain(std::vector<Face> faces, double mesh,
                 std::string mesh_text = "");

  double mesh() const { return mesh_; }
  const std::string& mesh_text() const { return mesh_text_; }

  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<QPoint>& vertices() const { return vertices_; }  // 4i,4j
  const Graph& graph() const { return graph_; }

  int n_faces() const { return int(faces_.size()); }
  int n_vertices() const { return graph_.n_vertices; }
  int n_edges() const { return int(graph_.edges.size()); }

  int face_index(int32_t i, int32_t j) const;  // -1 if absent
  int vertex_index(const QPoint& p) const;     // -1 if absent

  // Edge metadata.
  bool edge_is_interior(int e) const { return edge_interior_[e]; }
  bool edge_is_boundary(int e) const { return edge_boundary_[e]; }
  // Flanking faces of edge e (left/right of its canonical direction);
  // -1 when outside the domain.
  std::pair<int, int> edge_faces(int e) const { return edge_faces_[e]; }
  QPoint edge_midpoint(int e) const;            // quarter coords (medial vertex)

  // Boundary circuit, counterclockwise. vertices[k] -> vertices[k+1] via
  // edges[k]; closed cyclically.
  const std::vector<int>& boundary_vertices() const { return bnd_vertices_; }
  const std::vector<int>& boundary_edges() const { return bnd_edges_; }
  bool vertex_on_boundary(int v) const { return graph_.is_boundary_vertex[v]; }

  const DualGraph& dual() const { return dual_; }
  // The dual graph as a plain Graph (vertices = faces, free boundary).
  const Graph& dual_graph_view() const { return dual_graph_view_; }
  const BimedialGraph& bimedial() const { return bimedial_; }

  // Bi-medial boundary ring, counterclockwise cyclic vertex order.
  const std::vector<int>& bimedial_ring() const { return bimedial_ring_; }

  QPoint dual_vertex_point(int face) const {
    return {4 * faces_[face].i + 2, 4 * faces_[face].j + 2};
  }

 private:
  void build_edges_and_vertices();
  void build_boundary_circuit();
  void build_dual();
  void build_bimedial();
  void validate() const;

  std::vector<Face> faces_;
  double mesh_;
  std::string mesh_text_;
  std::unordered_map<int64_t, int> face_index_;
  std::vector<QPoint> vertices_;
  std::unordered_map<QPoint, int, QPointHash> vertex_index_;
  Graph graph_;
  std::vector<char> edge_interior_;
  std::vector<char> edge_boundary_;
  std::vector<std::pair<int, int>> edge_faces_;
  std::vector<int> bnd_vertices_;
  std::vector<int> bnd_edges_;
  DualGraph dual_;
  Graph dual_graph_view_;
  BimedialGraph bimedial_;
  std::vector<int> bimedial_ring_;
};

DiscreteDomain build_rectangle(int width_cells, int height_cells, double mesh,
                               std::string mesh_text = "");

// Shape descriptors for discretize_shape ------------------------------------

struct Shape {
  enum class Kind { rectangle, disk, ellipse, polygon } kind;
  // rectangle: x0,y0,x1,y1   disk: cx,cy,r   ellipse: cx,cy,rx,ry
  std::array<double, 4> p{0, 0, 0, 0};
  std::vector<std::pair<double, double>> polygon;

  static Shape rectangle(double x0, double y0, double x1, double y1);
  static Shape disk(double cx, double cy, double r);
  static Shape ellipse(double cx, double cy, double rx, double ry);
  static Shape simple_polygon(std::vector<std::pair<double, double>> pts);

  bool contains(double x, double y) const;  // closed shape
  void bounds(double& x0, double& y0, double& x1, double& y1) const;
};

// Keeps all grid faces whose four corners lie in the closed shape,
// restricted to the largest connected component. Throws LatticeError if the
// result is empty or not simply connected.
DiscreteDomain discretize_shape(const Shape& shape, double mesh,
                                std::string mesh_text = "");

// Parse CLI-style shape spec: "rect:WxH", "rect:x0,y0,x1,y1",
// "disk:cx,cy,r", "ellipse:cx,cy,rx,ry".
Shape parse_shape(const std::string& spec);

}  // namespace ising

#endif
