#pragma once

// Figure emitters: height-map bitmaps, level-line plots and surface meshes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "circpar/mesh.hpp"

namespace circpar {

struct Rgb {
  std::uint8_t r = 255, g = 255, b = 255;
  bool operator==(const Rgb &) const = default;
};

constexpr Rgb white{255, 255, 255};

class Image {
public:
  Image(int width, int height, Rgb fill = white);

  int width() const { return width_; }
  int height() const { return height_; }
  Rgb at(int col, int row) const;
  void set(int col, int row, Rgb c);

  /// Binary PPM (P6).
  void write_ppm(std::ostream &os) const;
  static Image read_ppm(std::istream &is);

private:
  int width_, height_;
  std::vector<std::uint8_t> data_;
};

/// Writes to a temporary sibling and renames it over path.
void write_file_atomic(const std::string &path, const std::string &content);

/// Square pixel grid covering [-1,1]^2, row 0 at the top.
struct PixelGrid {
  int resolution;

  double pixel_size() const { return 2.0 / resolution; }
  DomainPoint center(int col, int row) const;
  /// Pixel containing p.
  std::pair<int, int> pixel_of(const DomainPoint &p) const;
};

/// Green at h = 0, yellow at 0.5, red at 1, linear in between.
Rgb height_color(double h);

/// h_side over the disk. Pixels crossed by the domain circle show the
/// value at the radially projected rim point; pixels outside are white.
Image render_height_map(const DomainConfig &cfg, int side, int resolution,
                        const BisectionSettings &settings = {});

/// Segments per level-line polyline.
constexpr int level_segments = 128;

/// Level set h of h_side, sampled from p2 to p1 in global position.
std::vector<DomainPoint> level_polyline(const DomainConfig &cfg, int side, double h,
                                        int segments = level_segments);

/// Heights l/(count-1), l = 0..count-1.
std::vector<double> level_values(int count);

/// Where h_{side-1} = t and h_{side+1} = 1 - t meet side `side`.
DomainPoint constraint_meeting_point(const DomainConfig &cfg, int side, double t);

/// Level lines of h_side: base side green, distant sides red.
std::string levels_svg(const DomainConfig &cfg, int side, int count);

/// Level lines of h_corner (green) and h_{corner+1} (blue).
std::string corner_svg(const DomainConfig &cfg, int corner, int count);

/// Level lines of h_{side-1} = t (red) and h_{side+1} = 1 - t (blue),
/// with their common points on side `side` marked.
std::string constraint_svg(const DomainConfig &cfg, int side, int count);

/// Wavefront OBJ with v, vn and f records only.
std::string mesh_obj(const SurfaceMesh &sm);

/// Domain-space rendering of a per-vertex scalar in [-1,1], cut into
/// alternating dark and light bands.
Image render_isophotes(const DomainMesh &dm, const std::vector<double> &scalar,
                       int resolution, int bands);

} // namespace circpar
