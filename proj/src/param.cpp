#include "circpar/param.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "circpar/errors.hpp"

namespace circpar {

namespace {

// |p|^2 within rounding of 1 counts as lying on the domain circle.
constexpr double rim_snap = 1e-15;

// 1 - |p|^2, exactly zero for points on the circle.
double rim_depth(const DomainPoint &p) {
  double depth = 1 - p.dot(p);
  return std::abs(depth) <= rim_snap ? 0.0 : depth;
}

// Power of p with respect to the level circle, multiplied by sin(psi):
//   sin(psi) (|p - O|^2 - r^2) = 2 sin(theta) (cos(phi) - u) - (1 - |p|^2) sin(psi).
// Unlike the deviation itself it stays finite across the straight line, and
// on the circle it factors into terms with full relative precision.
double scaled_power(const DomainPoint &p, double depth, const LevelTrig &t) {
  return 2 * t.sin_theta * (t.cos_phi - p.x) - depth * t.sin_psi;
}

DomainPoint into_disk(const DomainPoint &p) {
  double r = p.norm();
  if (!(r <= 1.0 + outside_tolerance)) {
    std::ostringstream os;
    os << "point (" << p.x << ", " << p.y << ") lies outside the unit disk";
    throw DomainError(os.str());
  }
  return r > 1.0 ? p * (1.0 / r) : p;
}

template <typename F>
double bisect(F f, double lo, double hi, double f_lo, double f_hi,
              const BisectionSettings &settings) {
  bool rising = f_lo < 0 || f_hi > 0;
  for (int it = 0; it < settings.max_iterations && hi - lo > settings.tolerance; ++it) {
    double mid = (lo + hi) / 2;
    double f_mid = f(mid);
    if (f_mid == 0)
      return mid;
    if ((f_mid > 0) == rising)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

bool brackets(double a, double b) { return !(a * b > 0); }

[[noreturn]] void lost_bracket(const DomainPoint &p, double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << "deviation does not change sign on [" << lo << ", " << hi << "] for point ("
     << p.x << ", " << p.y << ")";
  throw BracketError(os.str());
}

} // namespace

void BisectionSettings::validate(const DomainConfig &cfg) const {
  double line = cfg.line_height();
  double limit = cfg.sides() > 3 ? std::min(line, 1 - line) : 1.0;
  if (!(epsilon_gap > 0 && epsilon_gap < limit))
    throw DomainError("epsilon must lie in (0, " + std::to_string(limit) + ")");
  if (!(tolerance > 0))
    throw DomainError("bisection tolerance must be positive");
  if (max_iterations < std::ceil(std::log2(1 / tolerance)))
    throw DomainError("too few bisection iterations for the requested tolerance");
}

double deviation(const DomainConfig &cfg, const DomainPoint &p, double h) {
  if (!(h >= 0.0 && h <= 1.0))
    throw DomainError("height " + std::to_string(h) + " outside [0,1]");
  if (std::abs(h - cfg.line_height()) <= line_band)
    throw DomainError("deviation is undefined on the straight level line");
  auto t = level_trig(cfg, h);
  double center = t.sin_theta / t.sin_psi;
  double radius = std::abs(t.sin_phi / t.sin_psi);
  double dist = std::hypot(p.x - center, p.y);
  // dist - radius, rewritten as a quotient to avoid cancelling two huge
  // numbers when the level circle is nearly straight.
  return scaled_power(p, rim_depth(p), t) / (t.sin_psi * (dist + radius));
}

double height(const DomainConfig &cfg, const DomainPoint &point,
              const BisectionSettings &settings) {
  DomainPoint p = into_disk(point);
  double line_h = cfg.line_height();
  double line_u = cfg.line_abscissa();
  if (std::abs(p.x - line_u) <= line_abscissa_tolerance)
    return line_h;

  double eps = settings.epsilon_gap;
  auto dev = [&](double h) { return deviation(cfg, p, h); };
  // At h = 0 and h = 1 the level set is the domain circle, where the
  // deviation is |p| - 1 <= 0; rounding must not flip that sign.
  auto rim_dev = [&](double h) { return std::min(dev(h), 0.0); };
  double lo, hi, f_lo, f_hi;
  if (p.x > line_u) {
    lo = 0.0;
    hi = line_h - eps;
    f_lo = rim_dev(lo);
    f_hi = dev(hi);
    if (!brackets(f_lo, f_hi)) {
      hi = line_h - eps / 2;
      f_hi = dev(hi);
    }
  } else {
    lo = line_h + eps;
    hi = 1.0;
    f_lo = dev(lo);
    f_hi = rim_dev(hi);
    if (!brackets(f_lo, f_hi)) {
      lo = line_h + eps / 2;
      f_lo = dev(lo);
    }
  }
  if (brackets(f_lo, f_hi))
    return bisect(dev, lo, hi, f_lo, f_hi, settings);

  // The point sits between the level lines at line_h -/+ eps/2, where the
  // deviation has its pole. Fall back to the scaled power, which is regular there.
  double band_lo = line_h - eps;
  double band_hi = std::min(line_h + eps, 1.0);
  double depth = rim_depth(p);
  auto power = [&](double h) { return scaled_power(p, depth, level_trig(cfg, h)); };
  double g_lo = power(band_lo), g_hi = power(band_hi);
  if (!brackets(g_lo, g_hi))
    lost_bracket(p, lo, hi);
  return bisect(power, band_lo, band_hi, g_lo, g_hi, settings);
}

double height_for_side(const DomainConfig &cfg, int i, const DomainPoint &p,
                       const BisectionSettings &settings) {
  return height(cfg, to_canonical(cfg, i, p), settings);
}

HeightField height_field(const DomainConfig &cfg, const DomainPoint &p,
                         const BisectionSettings &settings) {
  std::vector<double> values(static_cast<std::size_t>(cfg.sides()));
  for (int i = 1; i <= cfg.sides(); ++i) {
    try {
      values[static_cast<std::size_t>(i - 1)] = height_for_side(cfg, i, p, settings);
    } catch (const BracketError &e) {
      throw BracketError("side " + std::to_string(i) + ": " + e.what(), i);
    }
  }
  return HeightField(std::move(values));
}

std::pair<double, double> corner_pair(const DomainConfig &cfg, int i, const DomainPoint &p,
                                      const BisectionSettings &settings) {
  if (i < 1 || i > cfg.sides())
    throw DomainError("corner index " + std::to_string(i) + " out of range");
  return {height_for_side(cfg, cfg.wrap(i + 1), p, settings),
          height_for_side(cfg, i, p, settings)};
}

Vec2 gradient(const DomainConfig &cfg, int i, const DomainPoint &p,
              const BisectionSettings &settings, double fd_step) {
  if (!(fd_step > 0))
    throw DomainError("finite-difference step must be positive");
  // Stencil points may leave the disk only by a second-order amount (a step
  // taken along the rim tangent); anything further would be projected back
  // and distort the difference quotient.
  double slack = fd_step * fd_step;
  auto inside = [slack](const DomainPoint &q) { return q.norm() <= 1.0 + slack; };
  auto h = [&](const DomainPoint &q) { return height_for_side(cfg, i, q, settings); };
  double center = h(p);
  double partial[2];
  for (int axis = 0; axis < 2; ++axis) {
    Vec2 e = axis == 0 ? Vec2{fd_step, 0} : Vec2{0, fd_step};
    Vec2 fwd = p + e, bwd = p - e;
    bool has_fwd = inside(fwd), has_bwd = inside(bwd);
    if (has_fwd && has_bwd)
      partial[axis] = (h(fwd) - h(bwd)) / (2 * fd_step);
    else if (has_fwd && inside(p + e * 2))
      partial[axis] = (4 * h(fwd) - 3 * center - h(p + e * 2)) / (2 * fd_step);
    else if (has_bwd && inside(p - e * 2))
      partial[axis] = (3 * center - 4 * h(bwd) + h(p - e * 2)) / (2 * fd_step);
    else if (has_fwd)
      partial[axis] = (h(fwd) - center) / fd_step;
    else if (has_bwd)
      partial[axis] = (center - h(bwd)) / fd_step;
    else
      throw DomainError("finite-difference stencil leaves the disk");
  }
  return {partial[0], partial[1]};
}

} // namespace circpar
