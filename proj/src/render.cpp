#include "circpar/render.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "circpar/errors.hpp"

namespace circpar {

Image::Image(int width, int height, Rgb fill) : width_(width), height_(height) {
  if (width < 1 || height < 1)
    throw DomainError("image dimensions must be positive");
  data_.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3);
  for (std::size_t a = 0; a < data_.size(); a += 3) {
    data_[a] = fill.r;
    data_[a + 1] = fill.g;
    data_[a + 2] = fill.b;
  }
}

Rgb Image::at(int col, int row) const {
  auto a = (static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(col)) * 3;
  return {data_.at(a), data_.at(a + 1), data_.at(a + 2)};
}

void Image::set(int col, int row, Rgb c) {
  auto a = (static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(col)) * 3;
  data_.at(a) = c.r;
  data_.at(a + 1) = c.g;
  data_.at(a + 2) = c.b;
}

void Image::write_ppm(std::ostream &os) const {
  os << "P6\n" << width_ << ' ' << height_ << "\n255\n";
  os.write(reinterpret_cast<const char *>(data_.data()),
           static_cast<std::streamsize>(data_.size()));
}

Image Image::read_ppm(std::istream &is) {
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  is >> magic >> w >> h >> maxval;
  if (!is || magic != "P6" || maxval != 255)
    throw IoError("not a binary 8-bit PPM");
  is.get();
  Image img(w, h);
  is.read(reinterpret_cast<char *>(img.data_.data()),
          static_cast<std::streamsize>(img.data_.size()));
  if (!is)
    throw IoError("truncated PPM data");
  return img;
}

void write_file_atomic(const std::string &path, const std::string &content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f)
      throw IoError("cannot write '" + path + "'");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    if (!f)
      throw IoError("failed writing '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path + "'");
  }
}

DomainPoint PixelGrid::center(int col, int row) const {
  double s = pixel_size();
  return {-1 + (col + 0.5) * s, 1 - (row + 0.5) * s};
}

std::pair<int, int> PixelGrid::pixel_of(const DomainPoint &p) const {
  double s = pixel_size();
  int col = static_cast<int>(std::floor((p.x + 1) / s));
  int row = static_cast<int>(std::floor((1 - p.y) / s));
  return {std::clamp(col, 0, resolution - 1), std::clamp(row, 0, resolution - 1)};
}

Rgb height_color(double h) {
  h = std::clamp(h, 0.0, 1.0);
  auto level = [](double x) { return static_cast<std::uint8_t>(std::lround(255 * x)); };
  if (h <= 0.5)
    return {level(2 * h), 255, 0};
  return {255, level(2 - 2 * h), 0};
}

namespace {

// Runs body(row) for every row, spread over the available cores.
template <typename F>
void for_each_row(int rows, F body) {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows));
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int row = static_cast<int>(t); row < rows; row += static_cast<int>(threads))
          body(row);
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

std::string num(double x) {
  if (x == 0)
    x = 0; // drop negative zero
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

void check_side(const DomainConfig &cfg, int side) {
  if (side < 1 || side > cfg.sides())
    throw DomainError("side index " + std::to_string(side) + " out of range 1.." +
                      std::to_string(cfg.sides()));
}

void check_count(int count) {
  if (count < 2)
    throw DomainError("at least 2 level lines are needed");
}

class SvgWriter {
public:
  SvgWriter() {
    os_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" "
           "height=\"600\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n"
        << "<rect x=\"-1.1\" y=\"-1.1\" width=\"2.2\" height=\"2.2\" fill=\"white\"/>\n"
        << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-linecap=\"round\">\n";
  }

  void polyline(const std::vector<DomainPoint> &pts, const std::string &color, double width,
                const std::string &attrs) {
    os_ << "<polyline " << attrs << " stroke=\"" << color << "\" stroke-width=\""
        << num(width) << "\" points=\"";
    for (std::size_t a = 0; a < pts.size(); ++a)
      os_ << (a ? " " : "") << num(pts[a].x) << ',' << num(pts[a].y);
    os_ << "\"/>\n";
  }

  void marker(const DomainPoint &p, const std::string &color, const std::string &attrs) {
    os_ << "<circle " << attrs << " cx=\"" << num(p.x) << "\" cy=\"" << num(p.y)
        << "\" r=\"0.02\" fill=\"" << color << "\" stroke=\"none\"/>\n";
  }

  std::string finish() {
    os_ << "</g>\n</svg>\n";
    return os_.str();
  }

private:
  std::ostringstream os_;
};

std::vector<DomainPoint> side_arc(const DomainConfig &cfg, int side) {
  double a0 = cfg.side_center_angle(side) - pi / cfg.sides();
  double sweep = 2 * pi / cfg.sides();
  std::vector<DomainPoint> pts;
  constexpr int segments = 64;
  for (int k = 0; k <= segments; ++k) {
    double a = a0 + sweep * k / segments;
    pts.push_back({std::cos(a), std::sin(a)});
  }
  return pts;
}

template <typename ColorOf>
void draw_sides(SvgWriter &svg, const DomainConfig &cfg, ColorOf color_of) {
  for (int s = 1; s <= cfg.sides(); ++s)
    svg.polyline(side_arc(cfg, s), color_of(s), 0.02,
                 "class=\"side\" data-side=\"" + std::to_string(s) + "\"");
}

void draw_levels(SvgWriter &svg, const DomainConfig &cfg, int side,
                 const std::vector<double> &values, const std::string &color) {
  for (double h : values)
    svg.polyline(level_polyline(cfg, side, h), color, 0.008,
                 "class=\"level\" data-family=\"" + std::to_string(side) + "\" data-h=\"" +
                     num(h) + "\"");
}

bool adjacent_or_equal(const DomainConfig &cfg, int a, int b) {
  return a == b || cfg.wrap(a + 1) == b || cfg.wrap(a - 1) == b;
}

} // namespace

Image render_height_map(const DomainConfig &cfg, int side, int resolution,
                        const BisectionSettings &settings) {
  check_side(cfg, side);
  if (resolution < 16)
    throw DomainError("resolution must be at least 16 pixels");
  settings.validate(cfg);
  PixelGrid grid{resolution};
  double rim_band = grid.pixel_size() / std::sqrt(2.0);
  Image img(resolution, resolution);
  for_each_row(resolution, [&](int row) {
    for (int col = 0; col < resolution; ++col) {
      DomainPoint c = grid.center(col, row);
      double d = c.norm();
      if (d > 1 + rim_band)
        continue;
      if (std::abs(d - 1) <= rim_band)
        c = c * (1 / d);
      img.set(col, row, height_color(height_for_side(cfg, side, c, settings)));
    }
  });
  return img;
}

std::vector<DomainPoint> level_polyline(const DomainConfig &cfg, int side, double h,
                                        int segments) {
  check_side(cfg, side);
  auto level = level_set(cfg, h);
  std::vector<DomainPoint> pts;
  pts.reserve(static_cast<std::size_t>(segments + 1));
  for (int k = 0; k <= segments; ++k)
    pts.push_back(from_canonical(cfg, side, level.point_at(static_cast<double>(k) / segments)));
  return pts;
}

std::vector<double> level_values(int count) {
  check_count(count);
  std::vector<double> values;
  for (int l = 0; l < count; ++l)
    values.push_back(static_cast<double>(l) / (count - 1));
  return values;
}

DomainPoint constraint_meeting_point(const DomainConfig &cfg, int side, double t) {
  check_side(cfg, side);
  double a = (2 * side - 3 + 2 * t) * pi / cfg.sides();
  return {std::cos(a), std::sin(a)};
}

std::string levels_svg(const DomainConfig &cfg, int side, int count) {
  check_side(cfg, side);
  auto values = level_values(count);
  SvgWriter svg;
  draw_sides(svg, cfg, [&](int s) {
    if (s == side)
      return "green";
    return adjacent_or_equal(cfg, side, s) ? "black" : "red";
  });
  draw_levels(svg, cfg, side, values, "black");
  return svg.finish();
}

std::string corner_svg(const DomainConfig &cfg, int corner, int count) {
  check_side(cfg, corner);
  int next = cfg.wrap(corner + 1);
  auto values = level_values(count);
  SvgWriter svg;
  draw_sides(svg, cfg, [&](int s) {
    if (s == corner)
      return "green";
    if (s == next)
      return "blue";
    return adjacent_or_equal(cfg, corner, s) || adjacent_or_equal(cfg, next, s) ? "black"
                                                                                : "red";
  });
  draw_levels(svg, cfg, corner, values, "green");
  draw_levels(svg, cfg, next, values, "blue");
  return svg.finish();
}

std::string constraint_svg(const DomainConfig &cfg, int side, int count) {
  check_side(cfg, side);
  int prev = cfg.wrap(side - 1), next = cfg.wrap(side + 1);
  auto values = level_values(count);
  std::vector<double> mirrored;
  for (double t : values)
    mirrored.push_back(1 - t);
  SvgWriter svg;
  draw_sides(svg, cfg, [&](int s) {
    if (s == side)
      return "green";
    if (s == prev)
      return "red";
    return s == next ? "blue" : "black";
  });
  draw_levels(svg, cfg, prev, values, "red");
  draw_levels(svg, cfg, next, mirrored, "blue");
  for (double t : values)
    svg.marker(constraint_meeting_point(cfg, side, t), "black",
               "class=\"tangent\" data-t=\"" + num(t) + "\"");
  return svg.finish();
}

std::string mesh_obj(const SurfaceMesh &sm) {
  std::ostringstream os;
  for (const auto &p : sm.positions)
    os << "v " << num(p.x) << ' ' << num(p.y) << ' ' << num(p.z) << '\n';
  for (const auto &n : sm.normals)
    os << "vn " << num(n.x) << ' ' << num(n.y) << ' ' << num(n.z) << '\n';
  for (const auto &t : sm.triangles) {
    os << 'f';
    for (int v : t)
      os << ' ' << v + 1 << "//" << v + 1;
    os << '\n';
  }
  return os.str();
}

Image render_isophotes(const DomainMesh &dm, const std::vector<double> &scalar,
                       int resolution, int bands) {
  if (scalar.size() != dm.vertices.size())
    throw DomainError("one isophote value per vertex is required");
  if (resolution < 16)
    throw DomainError("resolution must be at least 16 pixels");
  if (bands < 2)
    throw DomainError("at least 2 isophote bands are needed");
  constexpr Rgb dark{40, 40, 40}, light{230, 230, 230};
  PixelGrid grid{resolution};
  Image img(resolution, resolution);
  for (const auto &t : dm.triangles) {
    DomainPoint a = dm.vertices[static_cast<std::size_t>(t[0])];
    DomainPoint b = dm.vertices[static_cast<std::size_t>(t[1])];
    DomainPoint c = dm.vertices[static_cast<std::size_t>(t[2])];
    double area = (b - a).cross(c - a);
    if (area == 0)
      continue;
    DomainPoint lo{std::min({a.x, b.x, c.x}), std::max({a.y, b.y, c.y})};
    DomainPoint hi{std::max({a.x, b.x, c.x}), std::min({a.y, b.y, c.y})};
    auto [c0, r0] = grid.pixel_of(lo);
    auto [c1, r1] = grid.pixel_of(hi);
    for (int row = r0; row <= r1; ++row)
      for (int col = c0; col <= c1; ++col) {
        DomainPoint p = grid.center(col, row);
        double wa = (b - p).cross(c - p) / area;
        double wb = (c - p).cross(a - p) / area;
        double wc = 1 - wa - wb;
        constexpr double slack = -1e-12;
        if (wa < slack || wb < slack || wc < slack)
          continue;
        double s = wa * scalar[static_cast<std::size_t>(t[0])] +
                   wb * scalar[static_cast<std::size_t>(t[1])] +
                   wc * scalar[static_cast<std::size_t>(t[2])];
        int band = std::clamp(static_cast<int>(std::floor((s + 1) / 2 * bands)), 0, bands - 1);
        img.set(col, row, band % 2 ? light : dark);
      }
  }
  return img;
}

} // namespace circpar
