#include "circpar/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <queue>
#include <thread>

#include "circpar/errors.hpp"

namespace circpar {

namespace {

// Triangulates the band between two concentric rings whose vertex lists
// start at the same angle, walking both rings counterclockwise.
void zip_rings(int inner_start, int inner_count, int outer_start, int outer_count,
               std::vector<Triangle> &out) {
  auto inner = [&](int a) { return inner_start + a % inner_count; };
  auto outer = [&](int b) { return outer_start + b % outer_count; };
  int a = 0, b = 0;
  while (a < inner_count || b < outer_count) {
    bool step_outer = b < outer_count &&
                      (a == inner_count ||
                       static_cast<long>(b + 1) * inner_count <= static_cast<long>(a + 1) * outer_count);
    if (step_outer) {
      out.push_back({inner(a), outer(b), outer(b + 1)});
      ++b;
    } else {
      out.push_back({inner(a), outer(b), inner(a + 1)});
      ++a;
    }
  }
}

} // namespace

DomainMesh tessellate_disk(const DomainConfig &cfg, int rings, int per_side) {
  if (rings < 1)
    throw DomainError("tessellation needs at least one ring");
  if (per_side < 1)
    throw DomainError("tessellation needs at least one segment per side");
  int n = cfg.sides();
  DomainMesh dm;
  dm.sides = n;
  dm.vertices.push_back({0, 0});
  dm.boundary.push_back(0);

  double start = -pi / n;
  int prev_start = 0, prev_count = 0;
  for (int ring = 1; ring <= rings; ++ring) {
    int count = n * per_side * ring;
    int first = static_cast<int>(dm.vertices.size());
    bool rim = ring == rings;
    double radius = rim ? 1.0 : static_cast<double>(ring) / rings;
    int per_side_here = per_side * ring;
    for (int k = 0; k < count; ++k) {
      double angle = start + 2 * pi * k / count;
      dm.vertices.push_back({radius * std::cos(angle), radius * std::sin(angle)});
      int flag = 0;
      if (rim) {
        if (k % per_side_here == 0) {
          int corner = k / per_side_here;
          flag = corner == 0 ? n : corner;
        } else {
          flag = k / per_side_here + 1;
        }
      }
      dm.boundary.push_back(flag);
    }
    if (ring == 1) {
      for (int k = 0; k < count; ++k)
        dm.triangles.push_back({0, first + k, first + (k + 1) % count});
    } else {
      zip_rings(prev_start, prev_count, first, count, dm.triangles);
    }
    prev_start = first;
    prev_count = count;
  }

  int rim_first = prev_start;
  dm.corners.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    dm.corners[static_cast<std::size_t>(i - 1)] = rim_first + (i % n) * per_side * rings;
  return dm;
}

bool surface_normal(const ControlNet &net, const DomainPoint &p,
                    const BisectionSettings &settings, Vec3 &normal) {
  constexpr double slack = normal_step * normal_step;
  auto inside = [](const DomainPoint &q) { return q.norm() <= 1.0 + slack; };
  auto at = [&](const DomainPoint &q) { return evaluate(net, q, settings).position; };
  Vec3 center = at(p);
  Vec3 partial[2];
  for (int axis = 0; axis < 2; ++axis) {
    Vec2 e = axis == 0 ? Vec2{normal_step, 0} : Vec2{0, normal_step};
    Vec2 fwd = p + e, bwd = p - e;
    bool has_fwd = inside(fwd), has_bwd = inside(bwd);
    if (has_fwd && has_bwd)
      partial[axis] = (at(fwd) - at(bwd)) * (0.5 / normal_step);
    else if (has_fwd)
      partial[axis] = (at(fwd) - center) * (1 / normal_step);
    else
      partial[axis] = (center - at(bwd)) * (1 / normal_step);
  }
  Vec3 cross = partial[0].cross(partial[1]);
  double len = cross.norm();
  if (!(len >= 1e-12))
    return false;
  normal = cross * (1 / len);
  return true;
}

SurfaceMesh sample_surface(const ControlNet &net, const DomainMesh &dm,
                           const BisectionSettings &settings, unsigned threads) {
  if (net.sides() != dm.sides)
    throw DomainError("control net and domain mesh disagree on the side count");
  if (!is_valid(validate(net)))
    throw DomainError("invalid control net");

  std::size_t count = dm.vertices.size();
  SurfaceMesh sm;
  sm.positions.resize(count);
  sm.normals.resize(count);
  sm.triangles = dm.triangles;
  std::vector<char> valid(count, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      sm.positions[v] = evaluate(net, dm.vertices[v], settings).position;
      valid[v] = surface_normal(net, dm.vertices[v], settings, sm.normals[v]);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    work(0, count);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    std::size_t chunk = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(std::min(count, t * chunk), std::min(count, (t + 1) * chunk));
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto &th : pool)
      th.join();
    for (auto &e : errors)
      if (e)
        std::rethrow_exception(e);
  }

  // Degenerate normals take the value of the nearest valid vertex in the
  // mesh graph: a breadth-first sweep seeded with every valid vertex.
  std::vector<std::vector<int>> adjacent(count);
  for (const auto &t : dm.triangles)
    for (int a = 0; a < 3; ++a) {
      adjacent[static_cast<std::size_t>(t[a])].push_back(t[(a + 1) % 3]);
      adjacent[static_cast<std::size_t>(t[a])].push_back(t[(a + 2) % 3]);
    }
  sm.degenerate.assign(count, false);
  std::vector<char> reached(valid);
  std::queue<std::size_t> queue;
  for (std::size_t v = 0; v < count; ++v) {
    if (valid[v])
      queue.push(v);
    else
      sm.degenerate[v] = true;
  }
  while (!queue.empty()) {
    std::size_t w = queue.front();
    queue.pop();
    for (int x : adjacent[w]) {
      auto ux = static_cast<std::size_t>(x);
      if (!reached[ux]) {
        reached[ux] = 1;
        sm.normals[ux] = sm.normals[w];
        queue.push(ux);
      }
    }
  }
  for (std::size_t v = 0; v < count; ++v)
    if (!reached[v])
      sm.normals[v] = {0, 0, 1};
  return sm;
}

std::vector<double> isophote_scalar(const SurfaceMesh &sm, const Vec3 &light) {
  double len = light.norm();
  if (!(len > 0))
    throw DomainError("light direction must be nonzero");
  Vec3 l = light * (1 / len);
  std::vector<double> scalar;
  scalar.reserve(sm.normals.size());
  for (const auto &nrm : sm.normals)
    scalar.push_back(std::clamp(nrm.dot(l), -1.0, 1.0));
  return scalar;
}

} // namespace circpar
