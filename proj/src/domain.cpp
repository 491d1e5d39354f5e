#include "circpar/domain.hpp"

#include <cmath>
#include <string>

#include "circpar/errors.hpp"

namespace circpar {

namespace {

void check_side(const DomainConfig &cfg, int i) {
  if (i < 1 || i > cfg.sides())
    throw DomainError("side index " + std::to_string(i) + " out of range 1.." +
                      std::to_string(cfg.sides()));
}

void check_height(double h) {
  if (!(h >= 0.0 && h <= 1.0))
    throw DomainError("height " + std::to_string(h) + " outside [0,1]");
}

DomainPoint on_circle(double angle) { return {std::cos(angle), std::sin(angle)}; }

} // namespace

DomainConfig::DomainConfig(int sides) : n_(sides) {
  if (sides < 3)
    throw DomainError("a patch needs at least 3 sides, got " + std::to_string(sides));
}

double DomainConfig::line_abscissa() const { return std::cos(pi / (n_ - 2)); }

double DomainConfig::side_center_angle(int i) const {
  return normalize_angle(2 * pi * (i - 1) / n_);
}

double DomainConfig::corner_angle(int i) const {
  return normalize_angle((2 * i - 1) * pi / n_);
}

LevelAngles level_angles(const DomainConfig &cfg, double h) {
  int n = cfg.sides();
  double phi = (2 * h + 1) * pi / n;
  double theta = h * pi;
  // theta - phi = pi((n-2)h - 1)/n; the fused form keeps full relative
  // precision next to the straight line, where the difference vanishes.
  double psi = pi * std::fma(h, n - 2, -1.0) / n;
  return {phi, theta, psi};
}

LevelTrig level_trig(const DomainConfig &cfg, double h) {
  int n = cfg.sides();
  auto a = level_angles(cfg, h);
  LevelTrig t;
  t.sin_theta = h > 0.5 ? std::sin((1 - h) * pi) : std::sin(a.theta);
  if (a.phi > pi / 2) {
    double rest = pi * ((n - 1) - 2 * h) / n; // pi - phi
    t.sin_phi = std::sin(rest);
    t.cos_phi = -std::cos(rest);
  } else {
    t.sin_phi = std::sin(a.phi);
    t.cos_phi = std::cos(a.phi);
  }
  t.sin_psi = std::sin(a.psi);
  return t;
}

std::pair<DomainPoint, DomainPoint> side_corners(const DomainConfig &cfg, int i) {
  check_side(cfg, i);
  return {on_circle(cfg.corner_angle(i - 1)), on_circle(cfg.corner_angle(i))};
}

DomainPoint to_canonical(const DomainConfig &cfg, int i, const DomainPoint &p) {
  check_side(cfg, i);
  if (i == 1)
    return p;
  return rotate(p, -cfg.side_center_angle(i));
}

DomainPoint from_canonical(const DomainConfig &cfg, int i, const DomainPoint &p) {
  check_side(cfg, i);
  if (i == 1)
    return p;
  return rotate(p, cfg.side_center_angle(i));
}

std::pair<DomainPoint, DomainPoint> arc_endpoints(const DomainConfig &cfg, double h) {
  check_height(h);
  auto t = level_trig(cfg, h);
  return {{t.cos_phi, t.sin_phi}, {t.cos_phi, -t.sin_phi}};
}

LevelSet level_set(const DomainConfig &cfg, double h) {
  check_height(h);
  auto [p1, p2] = arc_endpoints(cfg, h);
  int n = cfg.sides();
  if (n == 3 && std::abs(h - 1.0) <= line_band)
    return LevelSet(BoundaryLevel{1.0, {-1.0, 0.0}, {-1.0, 0.0}});
  if (h == 0.0 || h == 1.0)
    return LevelSet(BoundaryLevel{h, p1, p2});
  if (std::abs(h - cfg.line_height()) <= line_band) {
    double u = cfg.line_abscissa();
    double v = std::sin(pi / (n - 2));
    return LevelSet(LineLevel{u, {u, v}, {u, -v}});
  }
  auto t = level_trig(cfg, h);
  Vec2 center{t.sin_theta / t.sin_psi, 0.0};
  double radius = std::abs(t.sin_phi / t.sin_psi);
  return LevelSet(ArcLevel{center, radius, p1, p2, level_angles(cfg, h)});
}

DomainPoint LevelSet::p1() const {
  return std::visit([](const auto &l) { return l.p1; }, v_);
}

DomainPoint LevelSet::p2() const {
  return std::visit([](const auto &l) { return l.p2; }, v_);
}

DomainPoint LevelSet::point_at(double s) const {
  if (const auto *arc = std::get_if<ArcLevel>(&v_)) {
    // The part of the circle inside the disk faces away from the center:
    // rightwards when the center is left of the crossing, and vice versa.
    double side = arc->angles.psi < 0 ? 1.0 : -1.0;
    double half = std::atan2(arc->p1.y, side * (arc->p1.x - arc->center.x));
    double beta = (2 * s - 1) * half;
    return {arc->center.x + side * arc->radius * std::cos(beta),
            arc->radius * std::sin(beta)};
  }
  if (const auto *line = std::get_if<LineLevel>(&v_))
    return {line->abscissa, line->p2.y + s * (line->p1.y - line->p2.y)};
  const auto &b = std::get<BoundaryLevel>(v_);
  double start = std::atan2(b.p2.y, b.p2.x);
  double end = std::atan2(b.p1.y, b.p1.x);
  if (b.h == 0.0)
    return on_circle(start + s * (end - start));
  // The far arc runs clockwise from p2 through angle pi to p1.
  double sweep = 2 * pi - (end - start);
  if (b.p1 == b.p2)
    sweep = 0.0;
  return on_circle(start - s * sweep);
}

double tangency_angle(const DomainConfig &cfg, double h) {
  if (!(h > 0.0 && h < 1.0))
    throw DomainError("tangency angle needs 0 < h < 1");
  auto level = level_set(cfg, h);
  const auto *arc = std::get_if<ArcLevel>(&level.get());
  if (!arc)
    throw DomainError("tangency angle undefined on the straight or boundary level set");
  DomainPoint p = arc->p2;
  // Counterclockwise tangent of the unit circle at p.
  Vec2 circle_tangent{-p.y, p.x};
  Vec2 radial = p - arc->center;
  Vec2 arc_tangent{-radial.y, radial.x};
  if (arc_tangent.dot(p) > 0)
    arc_tangent = -arc_tangent;
  return std::atan2(std::abs(circle_tangent.cross(arc_tangent)),
                    circle_tangent.dot(arc_tangent));
}

} // namespace circpar
