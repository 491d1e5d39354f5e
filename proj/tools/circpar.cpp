// circpar: figures and meshes for the circular-domain height parameterization.
//
// Exit codes: 0 success, 1 usage error, 2 input/parse error, 3 numerical failure.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "circpar/errors.hpp"
#include "circpar/render.hpp"

using namespace circpar;

namespace {

struct Options {
  int sides = 5;
  int side = 1;
  int count = 0; // 0: per-command default
  int resolution = 512;
  int rings = 24;
  std::string out;
  std::string net;
  std::vector<double> light{0, 0, 1};
  bool isophotes = false;
  bool check = false;
  bool strict = false;
  double epsilon = BisectionSettings{}.epsilon_gap;
  double tolerance = BisectionSettings{}.tolerance;
};

enum Exit { ok = 0, usage = 1, input = 2, numerical = 3 };

BisectionSettings settings_of(const Options &o, const DomainConfig &cfg) {
  BisectionSettings s;
  s.epsilon_gap = o.epsilon;
  s.tolerance = o.tolerance;
  s.validate(cfg);
  return s;
}

void require_out(const Options &o) {
  if (o.out.empty())
    throw DomainError("--out is required");
}

int count_or(const Options &o, int fallback) { return o.count > 0 ? o.count : fallback; }

void write_image(const std::string &path, const Image &img) {
  std::ostringstream os;
  img.write_ppm(os);
  write_file_atomic(path, os.str());
}

int cmd_hmap(const Options &o) {
  require_out(o);
  DomainConfig cfg(o.sides);
  write_image(o.out, render_height_map(cfg, o.side, o.resolution, settings_of(o, cfg)));
  return ok;
}

int cmd_svg(const Options &o, const std::string &kind) {
  require_out(o);
  if (o.sides > 12)
    throw DomainError("plots support at most 12 sides");
  DomainConfig cfg(o.sides);
  int count = count_or(o, 11);
  std::string svg = kind == "levels"   ? levels_svg(cfg, o.side, count)
                    : kind == "corner" ? corner_svg(cfg, o.side, count)
                                       : constraint_svg(cfg, o.side, count);
  write_file_atomic(o.out, svg);
  return ok;
}

int report_violations(const std::vector<Violation> &report) {
  for (const auto &v : report)
    std::cerr << (v.warning ? "warning: " : "error: ") << v.message << '\n';
  return is_valid(report) ? ok : input;
}

int cmd_eval(const Options &o) {
  ControlNet net = read_ogb_file(o.net);
  auto report = validate(net, o.strict || o.check);
  if (o.check)
    return report_violations(report);
  if (!is_valid(report))
    return report_violations(report);
  require_out(o);
  if (o.light.size() != 3)
    throw DomainError("--light needs three components");

  DomainConfig cfg(net.sides());
  auto settings = settings_of(o, cfg);
  auto dm = tessellate_disk(cfg, o.rings);
  auto sm = sample_surface(net, dm, settings, std::max(1u, std::thread::hardware_concurrency()));
  if (o.isophotes) {
    sm.scalar = isophote_scalar(sm, {o.light[0], o.light[1], o.light[2]});
    auto path = std::filesystem::path(o.out).replace_extension(".ppm").string();
    write_image(path, render_isophotes(dm, sm.scalar, o.resolution, count_or(o, 16)));
  }
  write_file_atomic(o.out, mesh_obj(sm));
  return ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Circular-domain height parameterization and OGB patch tools"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App *sub, bool plot) {
    sub->add_option("--out", o.out, "Output file");
    sub->add_option("--epsilon", o.epsilon, "Half-width of the band skipped around the straight level line");
    sub->add_option("--tolerance", o.tolerance, "Bisection tolerance");
    if (plot) {
      sub->add_option("--sides", o.sides, "Number of sides")->capture_default_str();
      sub->add_option("--side", o.side, "Base side (1-based)")->capture_default_str();
      sub->add_option("--count", o.count, "Number of level lines (default 11)");
    }
  };

  auto *hmap = app.add_subcommand("hmap", "Bitmap of one height mapping (PPM)");
  common(hmap, true);
  hmap->add_option("--resolution", o.resolution, "Image size in pixels")->capture_default_str();

  auto *levels = app.add_subcommand("levels", "Constant-parameter lines of one side (SVG)");
  common(levels, true);
  auto *corner = app.add_subcommand("corner", "Level lines of two adjacent sides (SVG)");
  common(corner, true);
  auto *constraint = app.add_subcommand("constraint", "Level lines of both neighbours of a side (SVG)");
  common(constraint, true);

  auto *eval = app.add_subcommand("eval", "Tessellate an OGB control net (OBJ)");
  common(eval, false);
  eval->add_option("net", o.net, "Control net (.ogb)")->required();
  eval->add_option("--rings", o.rings, "Tessellation rings")->capture_default_str();
  eval->add_option("--resolution", o.resolution, "Isophote image size")->capture_default_str();
  eval->add_option("--count", o.count, "Isophote bands (default 16)");
  eval->add_option("--light", o.light, "Light direction X,Y,Z")->delimiter(',')->expected(3);
  eval->add_flag("--isophotes", o.isophotes, "Also write a domain-space isophote PPM");
  eval->add_flag("--check", o.check, "Only validate the net");
  eval->add_flag("--strict", o.strict, "Report shared-boundary warnings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    if (*hmap)
      return cmd_hmap(o);
    if (*levels)
      return cmd_svg(o, "levels");
    if (*corner)
      return cmd_svg(o, "corner");
    if (*constraint)
      return cmd_svg(o, "constraint");
    return cmd_eval(o);
  } catch (const DomainError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  } catch (const ParseError &e) {
    std::cerr << "error: " << o.net << ": " << e.what() << '\n';
    return input;
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return input;
  } catch (const BracketError &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return numerical;
  }
}
