#pragma once

// Open sets of finite volume built from boxes, balls and half-space-clipped
// boxes by union, difference and translation, and their rasterization onto
// a uniform cubic grid.

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "json.hpp"
#include "weyl/quadrature.hpp"
#include "weyl/types.hpp"

namespace weyl::geometry {

// Open box prod (lo_i, hi_i).
struct Box {
  Point lo, hi;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

// {x : normal . x < offset}
struct HalfSpace {
  Point normal;
  double offset = 0.0;
};

// Open box intersected with open half-spaces.
struct ClippedBox {
  Box box;
  std::vector<HalfSpace> cuts;
};

class DomainSet;

struct Union {
  std::vector<DomainSet> children;
};

// a minus the closure of b.
struct Difference {
  std::shared_ptr<const DomainSet> a, b;
};

struct Translate {
  Point offset;
  std::shared_ptr<const DomainSet> child;
};

struct Empty {};

class DomainSet {
 public:
  using Node = std::variant<Empty, Box, Ball, ClippedBox, Union, Difference, Translate>;

  static DomainSet box(Point lo, Point hi);
  static DomainSet ball(Point center, double radius);
  static DomainSet clipped_box(Box box, std::vector<HalfSpace> cuts);
  static DomainSet unite(std::vector<DomainSet> children);
  static DomainSet difference(DomainSet a, DomainSet b);
  static DomainSet translate(DomainSet child, Point offset);
  static DomainSet empty(int dimension);

  int dimension() const noexcept { return dimension_; }
  const Node& node() const noexcept { return *node_; }

  // Structurally empty: an inset primitive vanished, or every union member
  // did. A set may be empty without this flag (e.g. b covering a).
  bool is_empty() const noexcept;

 private:
  DomainSet(int dimension, Node node)
      : dimension_(dimension), node_(std::make_shared<const Node>(std::move(node))) {}
  int dimension_;
  std::shared_ptr<const Node> node_;
};

// Boundary points are outside. Throws ArgumentError on dimension mismatch.
bool contains(const DomainSet& domain, std::span<const double> x);

// Superset of the closure, used for the excluded part of a difference.
bool closure_contains(const DomainSet& domain, std::span<const double> x);

using VolumeMethod = std::variant<quadrature::ClosedForm, quadrature::MonteCarloRule>;

// Closed form is available for disjoint unions (bounding boxes with disjoint
// interiors), differences whose subtrahend bounding box lies in a convex
// primitive minuend or misses the minuend, and clipped boxes with d <= 2.
// Throws UnsupportedError otherwise and DegenerateDomainError for zero volume.
quadrature::Estimate volume(const DomainSet& domain, const VolumeMethod& method);

// Conservative inner parallel set: every point of the result has distance
// > delta from the complement. Boxes and balls are exact.
DomainSet inner_set(const DomainSet& domain, double delta);

// Superset of {x : dist(x, domain) < delta}.
DomainSet dilate(const DomainSet& domain, double delta);

// Axis-aligned box containing the domain (clipped boxes report their box).
// Throws DegenerateDomainError for a structurally empty domain.
Box bounding_box(const DomainSet& domain);

// Cube of side L = maxside (1 + 2 pad) centred on the bounding box.
struct Cube {
  Point origin;
  double side = 0.0;
};

Cube enclosing_cube(const DomainSet& domain, double pad);

struct GridMask {
  int dimension = 0;
  int n = 0;  // cells per axis
  Cube box;
  std::vector<std::uint8_t> occupied;  // row-major, last axis fastest
  std::size_t occupied_count = 0;

  std::size_t size() const noexcept { return occupied.size(); }
  double cell_volume() const;
  Point cell_center(std::size_t index) const;
};

// Cell occupied iff its centre lies in the domain. n must be a power of two
// and the cube must contain the bounding box. Throws DegenerateDomainError
// when no cell is occupied.
GridMask rasterize(const DomainSet& domain, const Cube& box, int n);

// {d, n, L, origin, runs}: runs alternate empty/occupied lengths, starting
// with empty.
nlohmann::json to_json(const GridMask& mask);
GridMask grid_mask_from_json(const nlohmann::json& j);

// {shape: box|ball|clipped_box, ...} or {op: union|difference|translate,
// children: [...]}. Throws ValidationError on malformed input.
DomainSet domain_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DomainSet& domain);

}  // namespace weyl::geometry
