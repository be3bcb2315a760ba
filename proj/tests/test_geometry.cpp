#include <cmath>
#include <random>

#include "doctest.h"
#include "weyl/errors.hpp"
#include "weyl/geometry.hpp"

using namespace weyl;
using namespace weyl::geometry;

namespace {

const quadrature::ClosedForm kClosed{};

DomainSet unit_square() { return DomainSet::box({0.0, 0.0}, {1.0, 1.0}); }

DomainSet square_minus_disk() {
  return DomainSet::difference(unit_square(), DomainSet::ball({0.5, 0.5}, 0.25));
}

std::vector<DomainSet> builtin_shapes() {
  return {
      unit_square(),
      DomainSet::box({0.0, 0.0}, {1.0, 2.0}),
      DomainSet::ball({0.0, 0.0}, 1.0),
      square_minus_disk(),
      DomainSet::clipped_box(Box{{0.0, 0.0}, {1.0, 1.0}}, {HalfSpace{{1.0, 1.0}, 1.5}}),
      DomainSet::unite({unit_square(), DomainSet::ball({3.0, 0.5}, 0.5)}),
      DomainSet::translate(DomainSet::ball({0.0, 0.0}, 0.7), {2.0, -1.0}),
  };
}

}  // namespace

TEST_CASE("contains: examples and open-set boundary") {
  CHECK(contains(unit_square(), Point{0.5, 0.5}));
  CHECK_FALSE(contains(unit_square(), Point{1.5, 0.5}));
  CHECK_FALSE(contains(square_minus_disk(), Point{0.5, 0.5}));
  CHECK_FALSE(contains(unit_square(), Point{1.0, 0.5}));
  CHECK_FALSE(contains(DomainSet::ball({0.0, 0.0}, 1.0), Point{1.0, 0.0}));
  // the circle bounding the removed disk is not in the difference
  CHECK_FALSE(contains(square_minus_disk(), Point{0.75, 0.5}));
  CHECK(contains(square_minus_disk(), Point{0.76, 0.5}));
  CHECK_THROWS_AS(contains(unit_square(), Point{0.5}), ArgumentError);
}

TEST_CASE("volume: closed forms") {
  CHECK(volume(DomainSet::box({0.0, 0.0}, {1.0, 2.0}), kClosed).value == 2.0);
  CHECK(volume(DomainSet::ball({0.0, 0.0}, 1.0), kClosed).value == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(volume(square_minus_disk(), kClosed).value == doctest::Approx(1.0 - kPi / 16.0).epsilon(1e-15));
  CHECK(volume(DomainSet::ball({0.0, 0.0, 0.0}, 2.0), kClosed).value ==
        doctest::Approx(32.0 * kPi / 3.0).epsilon(1e-14));
  // triangle-cut square: 1 - (1/2)(1/2)^2
  CHECK(volume(builtin_shapes()[4], kClosed).value == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(volume(builtin_shapes()[5], kClosed).value == doctest::Approx(1.0 + kPi / 4.0).epsilon(1e-15));
}

TEST_CASE("volume: uncertifiable and degenerate domains") {
  const DomainSet overlap = DomainSet::unite({unit_square(), DomainSet::box({0.5, 0.5}, {2.0, 2.0})});
  CHECK_THROWS_AS(volume(overlap, kClosed), UnsupportedError);
  const auto mc = volume(overlap, quadrature::MonteCarloRule{400'000, 9});
  CHECK(std::abs(mc.value - 3.0) <= 4.0 * mc.standard_error);

  CHECK_THROWS_AS(volume(DomainSet::empty(2), kClosed), DegenerateDomainError);
  const DomainSet covered = DomainSet::difference(unit_square(), DomainSet::box({-1.0, -1.0}, {2.0, 2.0}));
  CHECK_THROWS_AS(volume(covered, quadrature::MonteCarloRule{1000, 1}), DegenerateDomainError);
  CHECK_THROWS_AS(DomainSet::box({0.0}, {0.0}), ArgumentError);
  CHECK_THROWS_AS(DomainSet::ball({0.0}, -1.0), ArgumentError);
}

TEST_CASE("volume: Monte Carlo within 4 standard errors of closed form") {
  std::uint64_t seed = 1;
  for (const DomainSet& shape : builtin_shapes()) {
    const double exact = volume(shape, kClosed).value;
    const auto mc = volume(shape, quadrature::MonteCarloRule{200'000, seed++});
    CHECK(std::abs(mc.value - exact) <= 4.0 * mc.standard_error);
  }
}

TEST_CASE("inner_set: examples") {
  const DomainSet inset = inner_set(unit_square(), 0.1);
  const Box b = std::get<Box>(inset.node());
  CHECK(b.lo[0] == doctest::Approx(0.1));
  CHECK(b.hi[1] == doctest::Approx(0.9));

  const DomainSet ball = inner_set(DomainSet::ball({0.0, 0.0}, 1.0), 0.5);
  CHECK(std::get<Ball>(ball.node()).radius == 0.5);

  CHECK(inner_set(unit_square(), 0.6).is_empty());
  CHECK_THROWS_AS(inner_set(unit_square(), 0.0), ArgumentError);
}

TEST_CASE("inner_set: points keep distance delta from the complement") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 4.5), angle(0.0, 2.0 * kPi);
  for (const DomainSet& shape : builtin_shapes()) {
    for (double delta : {0.05, 0.1, 0.2}) {
      const DomainSet inner = inner_set(shape, delta);
      for (int k = 0; k < 2000; ++k) {
        const Point x{u(rng), u(rng)};
        if (!contains(inner, x)) continue;
        for (int m = 0; m < 16; ++m) {
          const double t = angle(rng);
          const Point y{x[0] + 0.999 * delta * std::cos(t), x[1] + 0.999 * delta * std::sin(t)};
          CHECK(contains(shape, y));
        }
      }
    }
  }
}

TEST_CASE("inner_set: monotone in delta") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.5, 4.5);
  for (const DomainSet& shape : builtin_shapes()) {
    const DomainSet small = inner_set(shape, 0.05), large = inner_set(shape, 0.15);
    for (int k = 0; k < 5000; ++k) {
      const Point x{u(rng), u(rng)};
      if (contains(large, x)) CHECK(contains(small, x));
    }
  }
}

TEST_CASE("bounding_box: examples") {
  const Box square = bounding_box(unit_square());
  CHECK(square.lo == Point{0.0, 0.0});
  CHECK(square.hi == Point{1.0, 1.0});
  const Box joined = bounding_box(DomainSet::unite({unit_square(), DomainSet::ball({3.0, 0.0}, 1.0)}));
  CHECK(joined.lo == Point{0.0, -1.0});
  CHECK(joined.hi == Point{4.0, 1.0});
  const Box diff = bounding_box(square_minus_disk());
  CHECK(diff.lo == Point{0.0, 0.0});
  CHECK(diff.hi == Point{1.0, 1.0});
  const Box moved = bounding_box(builtin_shapes()[6]);
  CHECK(moved.lo[0] == doctest::Approx(1.3));
  CHECK(moved.hi[1] == doctest::Approx(-0.3));
}

TEST_CASE("rasterize: examples") {
  const GridMask full = rasterize(DomainSet::box({0.0}, {1.0}), Cube{{0.0}, 1.0}, 4);
  CHECK(full.occupied_count == 4);

  const GridMask half = rasterize(DomainSet::box({0.0}, {1.0}), Cube{{-1.0}, 2.0}, 8);
  CHECK(half.occupied_count == 4);
  for (int k = 0; k < 8; ++k) CHECK(half.occupied[k] == (k >= 4 ? 1 : 0));
  CHECK(half.cell_center(0)[0] == -0.875);

  // Independent count of cell centres strictly inside the unit circle.
  std::size_t oracle = 0;
  for (int i = 0; i < 256; ++i)
    for (int j = 0; j < 256; ++j) {
      const double x = -1.0 + (i + 0.5) / 128.0, y = -1.0 + (j + 0.5) / 128.0;
      if (x * x + y * y < 1.0) ++oracle;
    }
  const GridMask disk = rasterize(DomainSet::ball({0.0, 0.0}, 1.0), Cube{{-1.0, -1.0}, 2.0}, 256);
  CHECK(disk.occupied_count == oracle);
  const double area = disk.occupied_count * disk.cell_volume();
  CHECK(std::abs(area - kPi) <= 0.02 * kPi);
}

TEST_CASE("rasterize: errors") {
  CHECK_THROWS_AS(rasterize(unit_square(), Cube{{0.0, 0.0}, 1.0}, 6), ArgumentError);
  CHECK_THROWS_AS(rasterize(unit_square(), Cube{{0.2, 0.0}, 1.0}, 8), ArgumentError);
  // a thin slab missing every cell centre
  CHECK_THROWS_AS(rasterize(DomainSet::box({0.01, 0.0}, {0.02, 1.0}), Cube{{0.0, 0.0}, 1.0}, 4),
                  DegenerateDomainError);
  CHECK_THROWS_AS(rasterize(DomainSet::empty(2), Cube{{0.0, 0.0}, 1.0}, 4), DegenerateDomainError);
}

TEST_CASE("rasterize agrees with contains at every cell centre") {
  for (const DomainSet& shape : builtin_shapes()) {
    const GridMask mask = rasterize(shape, enclosing_cube(shape, 0.1), 64);
    std::size_t count = 0;
    for (std::size_t k = 0; k < mask.size(); ++k) {
      CHECK(static_cast<bool>(mask.occupied[k]) == contains(shape, mask.cell_center(k)));
      count += mask.occupied[k];
    }
    CHECK(count == mask.occupied_count);
  }
}

// Cell-centre counts of curved boundaries fluctuate like lattice-point
// counts, so the error is averaged over sub-cell shifts of the grid.
TEST_CASE("rasterized volume converges as n doubles") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> shift(0.0, 1.0);
  for (const DomainSet& shape : builtin_shapes()) {
    const double exact = volume(shape, kClosed).value;
    const Cube base = enclosing_cube(shape, 0.05);
    double previous = INFINITY;
    for (int n : {64, 128, 256}) {
      const double h = base.side / n;
      double mean_error = 0.0;
      for (int trial = 0; trial < 16; ++trial) {
        Cube cube{base.origin, base.side * 1.05};
        for (double& o : cube.origin) o -= (0.5 + shift(rng)) * h;
        const GridMask mask = rasterize(shape, cube, n);
        mean_error += std::abs(mask.occupied_count * mask.cell_volume() - exact) / 16.0;
      }
      CHECK(mean_error <= previous);
      previous = mean_error;
    }
  }
}

TEST_CASE("enclosing_cube centres the bounding box") {
  const Cube cube = enclosing_cube(DomainSet::box({0.0, 0.0}, {2.0, 1.0}), 0.25);
  CHECK(cube.side == 3.0);
  CHECK(cube.origin == Point{-0.5, -1.0});
}

TEST_CASE("grid mask JSON round trip") {
  const GridMask mask = rasterize(square_minus_disk(), enclosing_cube(square_minus_disk(), 0.1), 32);
  const GridMask back = grid_mask_from_json(to_json(mask));
  CHECK(back.occupied == mask.occupied);
  CHECK(back.occupied_count == mask.occupied_count);
  CHECK(back.box.side == mask.box.side);
  CHECK(back.box.origin == mask.box.origin);
  nlohmann::json bad = to_json(mask);
  bad["runs"].push_back(5);
  CHECK_THROWS_AS(grid_mask_from_json(bad), ValidationError);
}

TEST_CASE("domain JSON round trip and validation") {
  for (const DomainSet& shape : builtin_shapes()) {
    const nlohmann::json j = to_json(shape);
    CHECK(to_json(domain_from_json(j)) == j);
  }
  CHECK_THROWS_AS(domain_from_json(nlohmann::json{{"shape", "torus"}}), ValidationError);
  CHECK_THROWS_AS(domain_from_json(nlohmann::json{{"shape", "box"}, {"lo", {0}}, {"hi", {0, 1}}}), ValidationError);
  CHECK_THROWS_AS(domain_from_json(nlohmann::json{{"op", "difference"}, {"children", {{{"shape", "ball"}, {"center", {0}}, {"radius", 1}}}}}),
                  ValidationError);
  CHECK_THROWS_AS(domain_from_json(nlohmann::json::parse("[1,2]")), ValidationError);
}
