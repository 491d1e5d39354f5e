#include "circpar/patch.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "circpar/errors.hpp"

namespace circpar {

namespace {

constexpr int max_degree = 30;

constexpr auto binomials = [] {
  std::array<std::array<double, max_degree + 1>, max_degree + 1> c{};
  for (int d = 0; d <= max_degree; ++d) {
    c[d][0] = c[d][d] = 1;
    for (int j = 1; j < d; ++j)
      c[d][j] = c[d - 1][j - 1] + c[d - 1][j];
  }
  return c;
}();

} // namespace

double bernstein(int d, int j, double t) {
  if (d < 0 || d > max_degree || j < 0 || j > d)
    throw DomainError("Bernstein index (" + std::to_string(d) + ", " + std::to_string(j) +
                      ") out of range");
  double s = 1 - t;
  double value = binomials[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
  for (int a = 0; a < j; ++a)
    value *= t;
  for (int a = j; a < d; ++a)
    value *= s;
  return value;
}

ControlNet::ControlNet(int sides, int degree) : n_(sides), d_(degree) {
  points_.resize(expected_count());
}

std::size_t ControlNet::expected_count() const {
  if (n_ < 1 || d_ < 0)
    return 0;
  auto m = static_cast<std::size_t>(half() + 1);
  return static_cast<std::size_t>(n_) * m * m;
}

std::size_t ControlNet::index(int i, int j, int k) const {
  int m = half() + 1;
  if (j < 0 || j >= m || k < 0 || k >= m)
    throw DomainError("control point index out of range");
  int w = ((i - 1) % n_ + n_) % n_;
  auto idx = static_cast<std::size_t>((w * m + j) * m + k);
  if (idx >= points_.size())
    throw DomainError("control net is missing points");
  return idx;
}

Vec3 &ControlNet::at(int i, int j, int k) { return points_[index(i, j, k)]; }
const Vec3 &ControlNet::at(int i, int j, int k) const { return points_[index(i, j, k)]; }

std::vector<Violation> validate(const ControlNet &net, bool strict) {
  using Kind = Violation::Kind;
  std::vector<Violation> report;
  auto error = [&](Kind kind, std::string msg) {
    report.push_back({kind, false, std::move(msg)});
  };
  if (net.sides() < 3)
    error(Kind::SideCount, "side count " + std::to_string(net.sides()) + " is below 3");
  if (net.degree() < 1)
    error(Kind::Degree, "degree " + std::to_string(net.degree()) + " is below 1");
  else if (net.degree() % 2 == 0)
    error(Kind::Parity, "degree " + std::to_string(net.degree()) + " is even; only odd degrees are supported");
  if (net.points().size() != net.expected_count())
    error(Kind::Count, "expected " + std::to_string(net.expected_count()) +
                           " corner points, found " + std::to_string(net.points().size()));
  auto finite = [](const Vec3 &p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
  };
  if (!finite(net.center()))
    error(Kind::NonFinite, "central point has non-finite coordinates");
  for (std::size_t a = 0; a < net.points().size(); ++a)
    if (!finite(net.points()[a]))
      error(Kind::NonFinite, "corner point " + std::to_string(a) + " has non-finite coordinates");

  if (strict && is_valid(report)) {
    int h = net.half();
    for (int s = 1; s <= net.sides(); ++s) {
      Vec3 diff = net.at(s, h, 0) - net.at(s - 1, 0, h);
      if (diff.norm() <= 1e-12)
        report.push_back({Kind::SharedBoundary, true,
                          "side " + std::to_string(s) +
                              ": the two corner blocks meet in a shared control point"});
    }
  }
  return report;
}

bool is_valid(const std::vector<Violation> &report) {
  for (const auto &v : report)
    if (!v.warning)
      return false;
  return true;
}

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t a = 0;
  while (a < line.size()) {
    while (a < line.size() && std::isspace(static_cast<unsigned char>(line[a])))
      ++a;
    std::size_t b = a;
    while (b < line.size() && !std::isspace(static_cast<unsigned char>(line[b])))
      ++b;
    if (b > a)
      tokens.push_back(line.substr(a, b - a));
    a = b;
  }
  return tokens;
}

template <typename T>
T parse_number(std::string_view token, int line) {
  T value{};
  auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size())
    throw ParseError(line, "invalid number '" + std::string(token) + "'");
  return value;
}

Vec3 parse_point(const std::vector<std::string_view> &tokens, int line) {
  if (tokens.size() != 3)
    throw ParseError(line, "expected 3 coordinates, found " + std::to_string(tokens.size()));
  return {parse_number<double>(tokens[0], line), parse_number<double>(tokens[1], line),
          parse_number<double>(tokens[2], line)};
}

} // namespace

ControlNet read_ogb(std::istream &is) {
  std::string raw;
  int line = 0;
  int record = 0;
  int n = 0, d = 0;
  Vec3 center;
  std::vector<Vec3> points;
  while (std::getline(is, raw)) {
    ++line;
    std::string_view text(raw);
    if (auto hash = text.find('#'); hash != std::string_view::npos)
      text = text.substr(0, hash);
    auto tokens = tokenize(text);
    if (tokens.empty())
      continue;
    if (record == 0) {
      if (tokens.size() != 2)
        throw ParseError(line, "header must be 'n d'");
      n = parse_number<int>(tokens[0], line);
      d = parse_number<int>(tokens[1], line);
    } else if (record == 1) {
      center = parse_point(tokens, line);
    } else {
      points.push_back(parse_point(tokens, line));
    }
    ++record;
  }
  if (record == 0)
    throw ParseError(line, "empty control net");
  if (record == 1)
    throw ParseError(line, "missing central point");
  ControlNet net(n, d);
  net.center() = center;
  net.points() = std::move(points);
  return net;
}

ControlNet read_ogb_file(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw IoError("cannot open '" + path + "'");
  return read_ogb(f);
}

void write_ogb(std::ostream &os, const ControlNet &net) {
  auto num = [](double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
  };
  auto point = [&](const Vec3 &p) { os << num(p.x) << ' ' << num(p.y) << ' ' << num(p.z) << '\n'; };
  os << net.sides() << ' ' << net.degree() << '\n';
  point(net.center());
  for (const auto &p : net.points())
    point(p);
}

namespace {

void require_valid(const ControlNet &net, const HeightField &hf) {
  if (!is_valid(validate(net)))
    throw DomainError("invalid control net");
  if (hf.size() != net.sides())
    throw DomainError("height field does not match the side count of the net");
}

} // namespace

double deficiency(const ControlNet &net, const HeightField &hf) {
  require_valid(net, hf);
  int d = net.degree(), m = net.half();
  double total = 0;
  for (int i = 1; i <= net.sides(); ++i)
    for (int j = 0; j <= m; ++j)
      for (int k = 0; k <= m; ++k)
        total += bernstein(d, j, hf.at(i + 1)) * bernstein(d, k, hf.at(i));
  return 1 - total;
}

SurfaceSample evaluate(const ControlNet &net, const HeightField &hf) {
  require_valid(net, hf);
  int d = net.degree(), m = net.half();
  std::vector<double> bj(static_cast<std::size_t>(m + 1)), bk(bj.size());
  Vec3 sum;
  double total = 0;
  for (int i = 1; i <= net.sides(); ++i) {
    for (int a = 0; a <= m; ++a) {
      bj[static_cast<std::size_t>(a)] = bernstein(d, a, hf.at(i + 1));
      bk[static_cast<std::size_t>(a)] = bernstein(d, a, hf.at(i));
    }
    for (int j = 0; j <= m; ++j)
      for (int k = 0; k <= m; ++k) {
        double w = bj[static_cast<std::size_t>(j)] * bk[static_cast<std::size_t>(k)];
        sum += (net.at(i, j, k) - net.center()) * w;
        total += w;
      }
  }
  // Summed relative to P_0, which carries the remaining weight 1 - total.
  return {net.center() + sum, 1 - total};
}

SurfaceSample evaluate(const ControlNet &net, const DomainPoint &p,
                       const BisectionSettings &settings) {
  return evaluate(net, height_field(DomainConfig(net.sides()), p, settings));
}

} // namespace circpar
