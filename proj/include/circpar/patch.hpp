#pragma once

// Overlap-Generalized-Bezier patch on the circular domain.
//
//   S(p) = sum_i sum_j sum_k P_ijk B^d_j(h_{i+1}) B^d_k(h_i) + P_0 B_0,
//
// with j, k in 0..d/2 and B_0 the weight deficiency. The degree d is odd.

#include <iosfwd>
#include <string>
#include <vector>

#include "circpar/param.hpp"

namespace circpar {

/// Binomial coefficient times t^j (1-t)^(d-j).
double bernstein(int d, int j, double t);

class ControlNet {
public:
  ControlNet() = default;
  /// Allocates n (d/2+1)^2 zero points; no validation.
  ControlNet(int sides, int degree);

  int sides() const { return n_; }
  int degree() const { return d_; }
  /// Largest j and k index in a corner block.
  int half() const { return d_ / 2; }
  /// Number of corner points implied by n and d.
  std::size_t expected_count() const;

  Vec3 &center() { return center_; }
  const Vec3 &center() const { return center_; }

  /// Corner points in lexicographic (i, j, k) order.
  std::vector<Vec3> &points() { return points_; }
  const std::vector<Vec3> &points() const { return points_; }

  /// P_ijk; i is 1-based and wraps around.
  Vec3 &at(int i, int j, int k);
  const Vec3 &at(int i, int j, int k) const;

private:
  std::size_t index(int i, int j, int k) const;

  int n_ = 0, d_ = 0;
  Vec3 center_;
  std::vector<Vec3> points_;
};

struct Violation {
  enum class Kind { SideCount, Degree, Parity, Count, NonFinite, SharedBoundary };
  Kind kind;
  bool warning; // warnings do not make a net invalid
  std::string message;
};

/// Structural checks. With strict set, also warns about corner blocks whose
/// boundary rows collapse onto their neighbour's.
std::vector<Violation> validate(const ControlNet &net, bool strict = false);

/// True when the report has no errors (warnings allowed).
bool is_valid(const std::vector<Violation> &report);

/// Reads the .ogb text format. Throws ParseError with the offending line.
ControlNet read_ogb(std::istream &is);
ControlNet read_ogb_file(const std::string &path);
void write_ogb(std::ostream &os, const ControlNet &net);

struct SurfaceSample {
  Vec3 position;
  double deficiency;
};

/// B_0 = 1 - sum of all corner weights.
double deficiency(const ControlNet &net, const HeightField &hf);

/// Surface point from precomputed heights.
SurfaceSample evaluate(const ControlNet &net, const HeightField &hf);

SurfaceSample evaluate(const ControlNet &net, const DomainPoint &p,
                       const BisectionSettings &settings = {});

} // namespace circpar
