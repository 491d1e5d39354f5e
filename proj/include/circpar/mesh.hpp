#pragma once

#include <array>
#include <vector>

#include "circpar/patch.hpp"

namespace circpar {

using Triangle = std::array<int, 3>;

/// Concentric-ring triangulation of the unit disk.
struct DomainMesh {
  int sides = 0;
  std::vector<DomainPoint> vertices;
  std::vector<Triangle> triangles; // counterclockwise
  /// Side index (1..n) of rim vertices, 0 for interior ones. A corner
  /// vertex carries the index of the side it ends.
  std::vector<int> boundary;
  /// Vertex index of corner i at position i-1.
  std::vector<int> corners;
};

/// Ring l (1..rings) at radius l/rings with n*per_side*l vertices, plus the
/// center. Corners are exact rim vertices.
DomainMesh tessellate_disk(const DomainConfig &cfg, int rings, int per_side = 1);

struct SurfaceMesh {
  std::vector<Vec3> positions;
  std::vector<Vec3> normals;
  std::vector<Triangle> triangles;
  std::vector<double> scalar;  // isophote values, empty if not computed
  std::vector<bool> degenerate; // normal copied from a neighbour
};

/// Finite-difference step for surface normals.
constexpr double normal_step = 1e-5;

/// Unit normal from finite-difference partials in (u, v); returns false
/// when the cross product is degenerate.
bool surface_normal(const ControlNet &net, const DomainPoint &p,
                    const BisectionSettings &settings, Vec3 &normal);

/// Evaluates the patch at every domain vertex. Per-vertex work is spread
/// over `threads` workers; the result does not depend on the thread count.
SurfaceMesh sample_surface(const ControlNet &net, const DomainMesh &dm,
                           const BisectionSettings &settings = {}, unsigned threads = 1);

/// dot(normal, light) per vertex; light is normalized first.
std::vector<double> isophote_scalar(const SurfaceMesh &sm, const Vec3 &light);

} // namespace circpar
