#pragma once

// Unit-circle domain of an n-sided patch.
//
// Sides are numbered 1..n counterclockwise; side i is the arc
// [(2i-3)pi/n, (2i-1)pi/n], so side 1 is centered on the positive u-axis.
// Corner i is the common endpoint of sides i and i+1.

#include <utility>
#include <variant>

#include "circpar/geometry.hpp"

namespace circpar {

using DomainPoint = Vec2;

/// Tolerance on u^2 + v^2 <= 1 for points of the closed disk.
constexpr double disk_tolerance = 1e-12;

/// Heights closer than this to 1/(n-2) are treated as the straight level line.
constexpr double line_band = 1e-12;

class DomainConfig {
public:
  explicit DomainConfig(int sides);

  int sides() const { return n_; }

  /// Height of the straight level line, 1/(n-2).
  double line_height() const { return 1.0 / (n_ - 2); }
  /// Abscissa of the straight level line, cos(pi/(n-2)).
  double line_abscissa() const;

  /// Angle of the midpoint of side i.
  double side_center_angle(int i) const;
  /// Angle of corner i (between sides i and i+1).
  double corner_angle(int i) const;

  /// Wraps any integer onto 1..n.
  int wrap(int i) const { return ((i - 1) % n_ + n_) % n_ + 1; }

private:
  int n_;
};

/// Angles of a constant-parameter arc in canonical position.
struct LevelAngles {
  double phi;   // polar angle of the endpoints
  double theta; // angle between the arc and the domain circle
  double psi;   // theta - phi
};

LevelAngles level_angles(const DomainConfig &cfg, double h);

/// Sines and cosines of the level angles, evaluated through the
/// supplementary angle where that is more accurate (theta or phi near pi).
struct LevelTrig {
  double sin_phi, cos_phi, sin_theta, sin_psi;
};

LevelTrig level_trig(const DomainConfig &cfg, double h);

/// Corner points bounding side i, in counterclockwise order.
std::pair<DomainPoint, DomainPoint> side_corners(const DomainConfig &cfg, int i);

/// Rotates p so that side i lands on the canonical base arc [-pi/n, pi/n].
DomainPoint to_canonical(const DomainConfig &cfg, int i, const DomainPoint &p);

/// Inverse of to_canonical.
DomainPoint from_canonical(const DomainConfig &cfg, int i, const DomainPoint &p);

/// Endpoints (p1, p2) of the level set of h: p1 = (cos phi, sin phi), p2 = (cos phi, -sin phi).
std::pair<DomainPoint, DomainPoint> arc_endpoints(const DomainConfig &cfg, double h);

struct ArcLevel {
  Vec2 center;
  double radius;
  DomainPoint p1, p2;
  LevelAngles angles;
};

struct LineLevel {
  double abscissa;
  DomainPoint p1, p2;
};

/// Level set lying on the domain circle itself (h = 0 or h = 1).
/// For n = 3 the h = 1 level degenerates to the corner (-1, 0) and p1 == p2.
struct BoundaryLevel {
  double h;
  DomainPoint p1, p2;
};

class LevelSet {
public:
  using Variant = std::variant<ArcLevel, LineLevel, BoundaryLevel>;

  explicit LevelSet(Variant v) : v_(std::move(v)) {}

  const Variant &get() const { return v_; }
  bool is_arc() const { return std::holds_alternative<ArcLevel>(v_); }
  bool is_line() const { return std::holds_alternative<LineLevel>(v_); }
  bool is_boundary() const { return std::holds_alternative<BoundaryLevel>(v_); }

  DomainPoint p1() const;
  DomainPoint p2() const;

  /// Point along the level set inside the disk: s = 0 gives p2, s = 1 gives p1,
  /// s = 1/2 lies on the u-axis.
  DomainPoint point_at(double s) const;

private:
  Variant v_;
};

LevelSet level_set(const DomainConfig &cfg, double h);

/// Angle at p2 between the counterclockwise tangent of the domain circle and
/// the tangent of the level arc heading into the disk, measured from the
/// fitted center rather than from a closed-form tangent. Lies in [0, pi].
double tangency_angle(const DomainConfig &cfg, double h);

} // namespace circpar
