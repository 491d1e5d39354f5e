#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <random>
#include <sstream>

#include "circpar/errors.hpp"
#include "circpar/patch.hpp"
#include "oracles.hpp"

using namespace circpar;

namespace {

ControlNet random_net(int n, int d, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> c(-1, 1);
  ControlNet net(n, d);
  net.center() = {c(rng), c(rng), c(rng)};
  for (auto &p : net.points())
    p = {c(rng), c(rng), c(rng)};
  return net;
}

DomainPoint on_circle(double a) { return {std::cos(a), std::sin(a)}; }

/// Surface point summed directly from the oracle Bernstein weights.
Vec3 brute_force_surface(const ControlNet &net, const HeightField &hf) {
  int n = net.sides(), d = net.degree();
  Vec3 s{0, 0, 0};
  double total = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= d / 2; ++j)
      for (int k = 0; k <= d / 2; ++k) {
        double w = oracle::bernstein(d, j, hf.at(i + 1)) * oracle::bernstein(d, k, hf.at(i));
        s += net.at(i, j, k) * w;
        total += w;
      }
  return s + net.center() * (1 - total);
}

} // namespace

TEST_CASE("bernstein basis") {
  CHECK(bernstein(3, 0, 0.5) == 0.125);
  CHECK(bernstein(3, 1, 0.5) == 0.375);
  CHECK(bernstein(3, 2, 0.5) == 0.375);
  CHECK(bernstein(3, 3, 0.5) == 0.125);
  for (int j = 0; j <= 3; ++j)
    CHECK(bernstein(3, j, 0) == (j == 0 ? 1.0 : 0.0));
  double sum = 0;
  for (int j = 0; j <= 5; ++j)
    sum += bernstein(5, j, 0.3);
  CHECK(std::abs(sum - 1) < 1e-15);
  for (int d = 1; d <= 20; ++d)
    for (int j = 0; j <= d; ++j)
      for (double t : {0.0, 0.1, 0.37, 0.5, 0.93, 1.0})
        CHECK(bernstein(d, j, t) == doctest::Approx(oracle::bernstein(d, j, t)).epsilon(1e-13));
  CHECK_THROWS_AS(bernstein(3, 4, 0.5), DomainError);
  CHECK_THROWS_AS(bernstein(3, -1, 0.5), DomainError);
}

TEST_CASE("weight deficiency") {
  for (int d : {1, 3, 5, 7}) {
    ControlNet net(5, d);
    CHECK(deficiency(net, HeightField({1, 1, 1, 1, 1})) == 1.0);
    // Interior of side 1: h_1 = 0, h_2 = t, h_5 = 1 - t, the rest 1.
    for (double t : {0.1, 0.45, 0.8}) {
      std::vector<double> h{0, t, 1, 1, 1 - t};
      double expect = 1 - oracle::corner_weight_sum(d, h);
      CHECK(std::abs(expect) < 1e-12);
      CHECK(std::abs(deficiency(net, HeightField(h))) < 1e-9);
    }
    // Corner 1: h_1 = h_2 = 0.
    std::vector<double> corner{0, 0, 1, 1, 1};
    CHECK(std::abs(1 - oracle::corner_weight_sum(d, corner)) < 1e-15);
    CHECK(std::abs(deficiency(net, HeightField(corner))) < 1e-15);
  }
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 3 + trial % 6, d = 1 + 2 * (trial % 4);
    std::vector<double> h(static_cast<std::size_t>(n));
    for (auto &x : h)
      x = u(rng);
    CHECK(std::abs(deficiency(ControlNet(n, d), HeightField(h)) - (1 - oracle::corner_weight_sum(d, h))) < 1e-13);
  }
  CHECK_THROWS_AS(deficiency(ControlNet(5, 3), HeightField({0, 0, 0})), DomainError);
}

TEST_CASE("evaluation matches the direct sum") {
  std::mt19937_64 rng(2);
  for (int n = 3; n <= 8; ++n)
    for (int d : {1, 3, 5}) {
      auto net = random_net(n, d, rng);
      for (int trial = 0; trial < 20; ++trial) {
        auto p = oracle::disk_point(rng);
        auto hf = height_field(DomainConfig(n), p);
        auto s = evaluate(net, p);
        auto expect = brute_force_surface(net, hf);
        CHECK((s.position - expect).norm() < 1e-12);
        CHECK(s.deficiency == deficiency(net, hf));
      }
    }
}

TEST_CASE("constant reproduction") {
  std::mt19937_64 rng(3);
  for (int n : {3, 5, 8}) {
    ControlNet net(n, 3);
    Vec3 c{1, 2, 3};
    net.center() = c;
    for (auto &p : net.points())
      p = c;
    for (int trial = 0; trial < 1000; ++trial)
      CHECK((evaluate(net, oracle::disk_point(rng)).position - c).norm() <= 1e-13);
  }
}

TEST_CASE("affine invariance") {
  std::mt19937_64 rng(4);
  auto affine = [](const Vec3 &p) {
    return Vec3{0.3 * p.x - 1.2 * p.y + 0.5 * p.z + 2, 0.7 * p.x + 0.1 * p.y - 0.4 * p.z - 1,
                -0.2 * p.x + 0.9 * p.y + 1.1 * p.z + 0.5};
  };
  for (int n = 3; n <= 8; ++n) {
    auto net = random_net(n, 3, rng);
    ControlNet moved = net;
    moved.center() = affine(net.center());
    for (auto &p : moved.points())
      p = affine(p);
    for (int trial = 0; trial < 50; ++trial) {
      auto hf = height_field(DomainConfig(n), oracle::disk_point(rng));
      CHECK((evaluate(moved, hf).position - affine(evaluate(net, hf).position)).norm() <= 1e-12);
    }
  }
}

TEST_CASE("corner interpolation") {
  std::mt19937_64 rng(5);
  for (int n = 4; n <= 8; ++n) {
    DomainConfig cfg(n);
    for (int d : {1, 3, 5}) {
      auto net = random_net(n, d, rng);
      for (int i = 1; i <= n; ++i) {
        auto s = evaluate(net, on_circle(cfg.corner_angle(i)));
        CHECK((s.position - net.at(i, 0, 0)).norm() <= 1e-9);
        CHECK(std::abs(s.deficiency) <= 1e-9);
      }
    }
  }
}

TEST_CASE("boundary curves are Bezier curves of the corner rows") {
  std::mt19937_64 rng(6);
  for (int n = 4; n <= 8; ++n) {
    DomainConfig cfg(n);
    for (int d : {1, 3, 5, 7}) {
      auto net = random_net(n, d, rng);
      int m = d / 2;
      for (int s = 1; s <= n; ++s) {
        std::vector<Vec3> polygon;
        for (int j = 0; j <= m; ++j)
          polygon.push_back(net.at(s, j, 0));
        for (int k = m; k >= 0; --k)
          polygon.push_back(net.at(s - 1, 0, k));
        for (int a = 1; a < 20; ++a) {
          double f = a / 20.0;
          auto p = on_circle((2 * s - 3 + 2 * f) * pi / n);
          auto sample = evaluate(net, p);
          double t = height_for_side(cfg, s + 1 > n ? 1 : s + 1, p);
          CHECK((sample.position - oracle::de_casteljau(polygon, t)).norm() <= 1e-9);
          CHECK(std::abs(sample.deficiency) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("boundary locality") {
  std::mt19937_64 rng(7);
  for (int n = 4; n <= 7; ++n) {
    for (int d : {3, 5}) {
      auto net = random_net(n, d, rng);
      int m = d / 2;
      for (int s = 1; s <= n; ++s) {
        std::vector<DomainPoint> samples;
        for (int a = 0; a <= 10; ++a)
          samples.push_back(on_circle((2 * s - 3 + 2 * a / 10.0) * pi / n));
        std::vector<Vec3> before;
        for (auto &p : samples)
          before.push_back(evaluate(net, p).position);
        for (int i = 1; i <= n; ++i)
          for (int j = 0; j <= m; ++j)
            for (int k = 0; k <= m; ++k) {
              bool adjacent = i == s || (i % n) + 1 == s;
              bool on_row = (i == s && k == 0) || ((i % n) + 1 == s && j == 0);
              if (adjacent && on_row)
                continue;
              ControlNet moved = net;
              moved.at(i, j, k) += Vec3{1, -2, 3};
              for (std::size_t a = 0; a < samples.size(); ++a)
                CHECK((evaluate(moved, samples[a]).position - before[a]).norm() <= 1e-9);
            }
      }
    }
  }
}

TEST_CASE("validation") {
  std::mt19937_64 rng(8);
  auto good = random_net(5, 3, rng);
  CHECK(validate(good).empty());
  CHECK(is_valid(validate(good)));

  ControlNet even(5, 2);
  auto report = validate(even);
  REQUIRE(report.size() == 1);
  CHECK(report[0].kind == Violation::Kind::Parity);
  CHECK_FALSE(is_valid(report));

  auto missing = good;
  missing.points().resize(missing.points().size() - 4);
  report = validate(missing);
  REQUIRE(report.size() == 1);
  CHECK(report[0].kind == Violation::Kind::Count);

  auto nan = good;
  nan.at(2, 1, 0).y = std::numeric_limits<double>::quiet_NaN();
  report = validate(nan);
  REQUIRE(report.size() == 1);
  CHECK(report[0].kind == Violation::Kind::NonFinite);
  CHECK_THROWS_AS(evaluate(nan, DomainPoint{0, 0}), DomainError);

  CHECK(validate(ControlNet(2, 3))[0].kind == Violation::Kind::SideCount);
  CHECK(validate(ControlNet(5, 0))[0].kind == Violation::Kind::Degree);

  auto collapsed = good;
  collapsed.at(3, 1, 0) = collapsed.at(2, 0, 1);
  CHECK(validate(collapsed).empty());
  report = validate(collapsed, true);
  REQUIRE(report.size() == 1);
  CHECK(report[0].kind == Violation::Kind::SharedBoundary);
  CHECK(report[0].warning);
  CHECK(is_valid(report));
}

TEST_CASE("control net indexing") {
  ControlNet net(5, 3);
  CHECK(net.expected_count() == 20);
  CHECK(net.half() == 1);
  net.at(2, 1, 0) = {1, 1, 1};
  CHECK(net.points()[6] == Vec3{1, 1, 1}); // (i=2, j=1, k=0): 4 + 2 * 1 + 0
  CHECK(net.at(7, 1, 0) == Vec3{1, 1, 1});
  CHECK(&net.at(0, 0, 0) == &net.at(5, 0, 0));
  CHECK_THROWS_AS(net.at(1, 2, 0), DomainError);
  CHECK_THROWS_AS(net.at(1, 0, -1), DomainError);
}

TEST_CASE(".ogb reading") {
  std::istringstream text(R"(# triangle, linear
3 1   # n d

0 0 1
1 0 0
 -0.5 0.8660254037844386 0   # corner 2
-0.5 -0.8660254037844386 0
)");
  auto net = read_ogb(text);
  CHECK(net.sides() == 3);
  CHECK(net.degree() == 1);
  CHECK(net.center() == Vec3{0, 0, 1});
  REQUIRE(net.points().size() == 3);
  CHECK(net.at(2, 0, 0).y == 0.8660254037844386);
  CHECK(validate(net).empty());

  auto fails_on = [](const std::string &s) {
    std::istringstream is(s);
    try {
      read_ogb(is);
    } catch (const ParseError &e) {
      return e.line();
    }
    return -1;
  };
  CHECK(fails_on("3\n") == 1);
  CHECK(fails_on("3 1 4\n") == 1);
  CHECK(fails_on("# c\n3 x\n") == 2);
  CHECK(fails_on("3 1\n0 0\n") == 2);
  CHECK(fails_on("3 1\n0 0 0\n1 0 0\n\n1 0,5 0\n") == 5);
  CHECK(fails_on("3 1\n0 0 0\n1 0 0 7\n") == 3);
  CHECK(fails_on("# nothing\n") == 1);
  CHECK(fails_on("3 1\n") == 1);
  CHECK(fails_on("3 1\n0 0 0\n1e999 0 0\n") == 3);

  std::istringstream short_net("5 3\n0 0 0\n1 0 0\n");
  auto partial = read_ogb(short_net);
  CHECK(validate(partial)[0].kind == Violation::Kind::Count);

  CHECK_THROWS_AS(read_ogb_file("/nonexistent/net.ogb"), IoError);
}

TEST_CASE(".ogb round trip") {
  std::mt19937_64 rng(9);
  for (int n = 3; n <= 8; ++n)
    for (int d : {1, 3, 5}) {
      auto net = random_net(n, d, rng);
      net.points()[0] = {1e-300, -3.5e17, 0.1};
      std::ostringstream os;
      write_ogb(os, net);
      std::istringstream is(os.str());
      auto back = read_ogb(is);
      CHECK(back.sides() == n);
      CHECK(back.degree() == d);
      CHECK(back.center() == net.center());
      CHECK(back.points() == net.points());
    }
}
