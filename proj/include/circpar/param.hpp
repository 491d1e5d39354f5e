#pragma once

// Height mapping over the circular domain.
//
// h_i(p) is found by bisection on the deviation of p from the level arcs of
// side i. Points right of the straight level line u = cos(pi/(n-2)) are
// searched below 1/(n-2), points left of it above.

#include <utility>
#include <vector>

#include "circpar/domain.hpp"

namespace circpar {

struct BisectionSettings {
  double epsilon_gap = 1e-7;   // half-width of the excluded band around 1/(n-2)
  double tolerance = 1e-12;    // final bracket width
  int max_iterations = 200;

  /// Throws DomainError if the settings are unusable for cfg.
  void validate(const DomainConfig &cfg) const;
};

/// |u - cos(pi/(n-2))| below this returns the straight-line height directly.
constexpr double line_abscissa_tolerance = 1e-9;

/// Points with 1 < |p| <= 1 + outside_tolerance are projected onto the circle.
constexpr double outside_tolerance = 1e-9;

/// Per-side heights h_1..h_n of a domain point.
class HeightField {
public:
  explicit HeightField(std::vector<double> values) : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  /// 1-based, wrapping around: at(0) == at(n), at(n+1) == at(1).
  double at(int i) const {
    int n = size();
    return values_[static_cast<std::size_t>(((i - 1) % n + n) % n)];
  }
  const std::vector<double> &values() const { return values_; }

private:
  std::vector<double> values_;
};

/// Distance of p from the level circle of h minus its radius, in canonical
/// position. Negative inside the circle. Rejects heights on the straight line.
double deviation(const DomainConfig &cfg, const DomainPoint &p, double h);

/// h_1 of a canonical-position point.
double height(const DomainConfig &cfg, const DomainPoint &p,
              const BisectionSettings &settings = {});

/// h_i of p.
double height_for_side(const DomainConfig &cfg, int i, const DomainPoint &p,
                       const BisectionSettings &settings = {});

HeightField height_field(const DomainConfig &cfg, const DomainPoint &p,
                         const BisectionSettings &settings = {});

/// (h_{i+1}(p), h_i(p)), the parameters of corner i.
std::pair<double, double> corner_pair(const DomainConfig &cfg, int i, const DomainPoint &p,
                                      const BisectionSettings &settings = {});

/// Finite-difference gradient of h_i; one-sided where a central stencil
/// would leave the disk.
Vec2 gradient(const DomainConfig &cfg, int i, const DomainPoint &p,
              const BisectionSettings &settings, double fd_step);

} // namespace circpar
