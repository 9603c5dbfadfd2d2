#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "steklov/errors.hpp"
#include "steklov/fem2d.hpp"

namespace steklov::fem {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double signed_area(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  return 0.5 * ((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
}

}  // namespace

std::vector<int> TriMesh::dof_map() const {
  const int n = static_cast<int>(vertices.size());
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  for (const auto& [a, b] : periodic_pairs) {
    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    root[hi] = root[lo];
  }
  std::vector<int> dof(n, -1);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (root[v] == v) dof[v] = next++;
  }
  for (int v = 0; v < n; ++v) dof[v] = dof[root[v]];
  return dof;
}

int TriMesh::dof_count() const {
  return static_cast<int>(vertices.size() - periodic_pairs.size());
}

int TriMesh::component_count() const {
  int c = 0;
  for (const auto& e : boundary_edges) c = std::max(c, e.component + 1);
  return c;
}

int disk_ring_count(int refinement) {
  if (refinement < 1 || refinement > 8) throw ConfigError("disk refinement must be in [1, 8]");
  return 4 << (refinement - 1);
}

TriMesh build_disk_mesh(int refinement) {
  const int R = disk_ring_count(refinement);
  TriMesh mesh;
  mesh.vertices.emplace_back(0.0, 0.0);
  std::vector<int> ring_start{0};
  for (int i = 1; i <= R; ++i) {
    ring_start.push_back(static_cast<int>(mesh.vertices.size()));
    const int count = 6 * i;
    const double r = static_cast<double>(i) / R;
    for (int j = 0; j < count; ++j) {
      const double th = kTwoPi * j / count;
      mesh.vertices.emplace_back(r * std::cos(th), r * std::sin(th));
    }
  }

  // Zip ring i-1 (m vertices) with ring i (n vertices) by angle.
  for (int i = 1; i <= R; ++i) {
    const int m = i == 1 ? 1 : 6 * (i - 1);
    const int n = 6 * i;
    const int in0 = ring_start[i - 1];
    const int out0 = ring_start[i];
    if (i == 1) {
      for (int b = 0; b < n; ++b) mesh.triangles.push_back({0, out0 + b, out0 + (b + 1) % n});
      continue;
    }
    int a = 0;
    int b = 0;
    while (a < m || b < n) {
      // Compare next angles as fractions (a+1)/m vs (b+1)/n.
      const bool advance_outer = a == m || (b < n && static_cast<long>(b + 1) * m <= static_cast<long>(a + 1) * n);
      if (advance_outer) {
        mesh.triangles.push_back({in0 + a % m, out0 + b, out0 + (b + 1) % n});
        ++b;
      } else {
        mesh.triangles.push_back({in0 + a, out0 + b % n, in0 + (a + 1) % m});
        ++a;
      }
    }
  }

  const int n = 6 * R;
  const int out0 = ring_start[R];
  for (int b = 0; b < n; ++b) mesh.boundary_edges.push_back({out0 + b, out0 + (b + 1) % n, 0, BoundaryRole::Steklov});
  return mesh;
}

TriMesh build_cylinder_mesh(double radius, double length, int nx, int nt) {
  if (!(radius > 0.0) || !(length > 0.0)) throw ConfigError("cylinder radius and length must be > 0");
  if (nx < 4 || nt < 4) throw ConfigError("cylinder mesh needs nx, nt >= 4");
  TriMesh mesh;
  const double width = kTwoPi * radius;
  const auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= nt; ++j)
    for (int i = 0; i <= nx; ++i) mesh.vertices.emplace_back(width * i / nx, length * j / nt);
  for (int j = 0; j < nt; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int v00 = id(i, j);
      const int v10 = id(i + 1, j);
      const int v01 = id(i, j + 1);
      const int v11 = id(i + 1, j + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }
  for (int j = 0; j <= nt; ++j) mesh.periodic_pairs.emplace_back(id(0, j), id(nx, j));
  for (int i = 0; i < nx; ++i) {
    mesh.boundary_edges.push_back({id(i, 0), id(i + 1, 0), 0, BoundaryRole::Steklov});
    mesh.boundary_edges.push_back({id(i + 1, nt), id(i, nt), 1, BoundaryRole::Steklov});
  }
  return mesh;
}

void set_boundary_role(TriMesh& mesh, int component, BoundaryRole role) {
  bool found = false;
  for (auto& e : mesh.boundary_edges) {
    if (e.component == component) {
      e.role = role;
      found = true;
    }
  }
  if (!found) throw ConfigError("mesh has no boundary component " + std::to_string(component));
}

void validate_mesh(const TriMesh& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  if (nv < 3 || mesh.triangles.empty()) throw ConfigError("mesh is empty");

  std::set<int> seen;
  for (const auto& [a, b] : mesh.periodic_pairs) {
    if (a == b || a < 0 || b < 0 || a >= nv || b >= nv) throw ConfigError("invalid periodic pair");
    if (!seen.insert(a).second || !seen.insert(b).second)
      throw ConfigError("periodic identification is not an involution");
  }

  const auto dof = mesh.dof_map();
  std::map<std::pair<int, int>, int> edge_count;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int v : tri)
      if (v < 0 || v >= nv) throw ConfigError("triangle references a missing vertex");
    if (!(signed_area(mesh.vertices[tri[0]], mesh.vertices[tri[1]], mesh.vertices[tri[2]]) > 0.0)) {
      std::ostringstream os;
      os << "triangle " << t << " is not positively oriented";
      throw ConfigError(os.str());
    }
    for (int k = 0; k < 3; ++k) {
      const int a = dof[tri[k]];
      const int b = dof[tri[(k + 1) % 3]];
      ++edge_count[{std::min(a, b), std::max(a, b)}];
    }
  }

  std::set<std::pair<int, int>> labeled;
  for (const auto& e : mesh.boundary_edges) {
    const std::pair<int, int> key{std::min(dof[e.a], dof[e.b]), std::max(dof[e.a], dof[e.b])};
    const auto it = edge_count.find(key);
    if (it == edge_count.end() || it->second != 1) {
      std::ostringstream os;
      os << "boundary edge (" << e.a << ", " << e.b << ") does not belong to exactly one triangle";
      throw ConfigError(os.str());
    }
    if (!labeled.insert(key).second) throw ConfigError("boundary edge listed twice");
  }
  for (const auto& [key, count] : edge_count) {
    if (count > 2) throw ConfigError("non-manifold edge in mesh");
    if (count == 1 && !labeled.count(key)) throw ConfigError("unlabeled boundary edge in mesh");
  }
}

std::string vertices_csv(const TriMesh& mesh) {
  std::ostringstream os;
  os << "index,x,y\n";
  char buf[96];
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12e,%.12e\n", i, mesh.vertices[i].x(), mesh.vertices[i].y());
    os << buf;
  }
  return os.str();
}

std::string triangles_csv(const TriMesh& mesh) {
  std::ostringstream os;
  os << "index,v0,v1,v2\n";
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    const auto& t = mesh.triangles[i];
    os << i << ',' << t[0] << ',' << t[1] << ',' << t[2] << '\n';
  }
  return os.str();
}

}  // namespace steklov::fem
