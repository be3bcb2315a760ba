#include "weyl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "weyl/errors.hpp"
#include "weyl/symbols.hpp"

namespace weyl::geometry {

namespace {

using nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_dimension(const Point& v, int d, const char* what) {
  if (static_cast<int>(v.size()) != d)
    throw ArgumentError(std::string(what) + ": expected " + std::to_string(d) + " coordinates");
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::vector<Point> corners(const Box& box) {
  const std::size_t d = box.lo.size();
  std::vector<Point> out;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    Point c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = ((mask >> i) & 1u) ? box.hi[i] : box.lo[i];
    out.push_back(std::move(c));
  }
  return out;
}

bool box_is_void(const Box& box) {
  for (std::size_t i = 0; i < box.lo.size(); ++i)
    if (!(box.hi[i] > box.lo[i])) return true;
  return false;
}

// Some cut excludes the whole closed box.
bool clipped_is_void(const ClippedBox& c) {
  if (box_is_void(c.box)) return true;
  const auto cs = corners(c.box);
  for (const HalfSpace& h : c.cuts) {
    bool all_out = true;
    for (const Point& p : cs) all_out = all_out && dot(h.normal, p) >= h.offset;
    if (all_out) return true;
  }
  return false;
}

bool in_box(const Box& b, std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] > b.lo[i] && x[i] < b.hi[i])) return false;
  return true;
}

bool in_closed_box(const Box& b, std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < b.lo[i] || x[i] > b.hi[i]) return false;
  return true;
}

double distance_squared(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return acc;
}

Point minus(std::span<const double> x, const Point& offset) {
  Point y(x.begin(), x.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= offset[i];
  return y;
}

bool interiors_disjoint(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.lo.size(); ++i)
    if (a.hi[i] <= b.lo[i] || b.hi[i] <= a.lo[i]) return true;
  return false;
}

// Membership in the closure of a convex primitive (through translations);
// empty when the node is not a convex primitive.
std::optional<bool> convex_closure_contains(const DomainSet& domain, std::span<const double> x) {
  return std::visit(
      overloaded{
          [&](const Box& b) -> std::optional<bool> { return in_closed_box(b, x); },
          [&](const Ball& b) -> std::optional<bool> {
            return distance_squared(x, b.center) <= b.radius * b.radius;
          },
          [&](const ClippedBox& c) -> std::optional<bool> {
            if (!in_closed_box(c.box, x)) return false;
            for (const HalfSpace& h : c.cuts)
              if (dot(h.normal, x) > h.offset) return false;
            return true;
          },
          [&](const Translate& t) -> std::optional<bool> {
            return convex_closure_contains(*t.child, minus(x, t.offset));
          },
          [&](const auto&) -> std::optional<bool> { return std::nullopt; },
      },
      domain.node());
}

// Area of the box clipped by half-planes, by Sutherland-Hodgman.
double clipped_area(const ClippedBox& c) {
  using V = std::pair<double, double>;
  std::vector<V> poly{{c.box.lo[0], c.box.lo[1]},
                      {c.box.hi[0], c.box.lo[1]},
                      {c.box.hi[0], c.box.hi[1]},
                      {c.box.lo[0], c.box.hi[1]}};
  for (const HalfSpace& h : c.cuts) {
    auto value = [&](const V& v) { return h.normal[0] * v.first + h.normal[1] * v.second - h.offset; };
    std::vector<V> next;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const V& cur = poly[i];
      const V& nxt = poly[(i + 1) % poly.size()];
      const double fc = value(cur), fn = value(nxt);
      if (fc < 0.0) next.push_back(cur);
      if ((fc < 0.0) != (fn < 0.0)) {
        const double t = fc / (fc - fn);
        next.emplace_back(cur.first + t * (nxt.first - cur.first), cur.second + t * (nxt.second - cur.second));
      }
    }
    poly = std::move(next);
    if (poly.size() < 3) return 0.0;
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const V& a = poly[i];
    const V& b = poly[(i + 1) % poly.size()];
    twice += a.first * b.second - b.first * a.second;
  }
  return 0.5 * std::abs(twice);
}

double clipped_length(const ClippedBox& c) {
  double lo = c.box.lo[0], hi = c.box.hi[0];
  for (const HalfSpace& h : c.cuts) {
    const double a = h.normal[0];
    if (a > 0.0)
      hi = std::min(hi, h.offset / a);
    else if (a < 0.0)
      lo = std::max(lo, h.offset / a);
    else if (h.offset <= 0.0)
      return 0.0;
  }
  return std::max(hi - lo, 0.0);
}

double closed_form_volume(const DomainSet& domain) {
  const int d = domain.dimension();
  return std::visit(
      overloaded{
          [](const Empty&) { return 0.0; },
          [](const Box& b) {
            double v = 1.0;
            for (std::size_t i = 0; i < b.lo.size(); ++i) v *= b.hi[i] - b.lo[i];
            return v;
          },
          [d](const Ball& b) { return symbols::unit_ball_volume(d) * std::pow(b.radius, d); },
          [d](const ClippedBox& c) {
            if (d == 1) return clipped_length(c);
            if (d == 2) return clipped_area(c);
            throw UnsupportedError("closed-form volume of a clipped box needs d <= 2");
          },
          [](const Union& u) {
            std::vector<const DomainSet*> live;
            for (const DomainSet& c : u.children)
              if (!c.is_empty()) live.push_back(&c);
            for (std::size_t i = 0; i < live.size(); ++i)
              for (std::size_t j = i + 1; j < live.size(); ++j)
                if (!interiors_disjoint(bounding_box(*live[i]), bounding_box(*live[j])))
                  throw UnsupportedError("closed-form volume of a union needs disjoint bounding boxes");
            double v = 0.0;
            for (const DomainSet* c : live) v += closed_form_volume(*c);
            return v;
          },
          [](const Difference& diff) {
            if (diff.a->is_empty()) return 0.0;
            const double va = closed_form_volume(*diff.a);
            if (diff.b->is_empty()) return va;
            const Box bb = bounding_box(*diff.b);
            if (interiors_disjoint(bounding_box(*diff.a), bb)) return va;
            for (const Point& c : corners(bb)) {
              const auto inside = convex_closure_contains(*diff.a, c);
              if (!inside)
                throw UnsupportedError("closed-form volume of a difference needs a convex primitive minuend");
              if (!*inside)
                throw UnsupportedError("closed-form volume of a difference needs the subtrahend inside the minuend");
            }
            return va - closed_form_volume(*diff.b);
          },
          [](const Translate& t) { return closed_form_volume(*t.child); },
      },
      domain.node());
}

}  // namespace

DomainSet DomainSet::box(Point lo, Point hi) {
  if (lo.empty() || lo.size() != hi.size()) throw ArgumentError("box corners must be nonempty and of equal dimension");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(hi[i] > lo[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
      throw ArgumentError("box needs finite lo < hi on every axis");
  const int d = static_cast<int>(lo.size());
  return DomainSet(d, Box{std::move(lo), std::move(hi)});
}

DomainSet DomainSet::ball(Point center, double radius) {
  if (center.empty()) throw ArgumentError("ball centre must be nonempty");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ArgumentError("ball radius must be positive and finite");
  const int d = static_cast<int>(center.size());
  return DomainSet(d, Ball{std::move(center), radius});
}

DomainSet DomainSet::clipped_box(Box box, std::vector<HalfSpace> cuts) {
  const DomainSet checked = DomainSet::box(box.lo, box.hi);
  for (const HalfSpace& h : cuts) require_dimension(h.normal, checked.dimension(), "half-space normal");
  ClippedBox c{std::move(box), std::move(cuts)};
  if (clipped_is_void(c)) return empty(checked.dimension());
  return DomainSet(checked.dimension(), std::move(c));
}

DomainSet DomainSet::unite(std::vector<DomainSet> children) {
  if (children.empty()) throw ArgumentError("union needs at least one child");
  const int d = children.front().dimension();
  for (const DomainSet& c : children)
    if (c.dimension() != d) throw ArgumentError("union children differ in dimension");
  return DomainSet(d, Union{std::move(children)});
}

DomainSet DomainSet::difference(DomainSet a, DomainSet b) {
  if (a.dimension() != b.dimension()) throw ArgumentError("difference operands differ in dimension");
  const int d = a.dimension();
  return DomainSet(d, Difference{std::make_shared<const DomainSet>(std::move(a)),
                                 std::make_shared<const DomainSet>(std::move(b))});
}

DomainSet DomainSet::translate(DomainSet child, Point offset) {
  require_dimension(offset, child.dimension(), "translation");
  const int d = child.dimension();
  return DomainSet(d, Translate{std::move(offset), std::make_shared<const DomainSet>(std::move(child))});
}

DomainSet DomainSet::empty(int dimension) {
  if (dimension < 1) throw ArgumentError("dimension must be positive");
  return DomainSet(dimension, Empty{});
}

bool DomainSet::is_empty() const noexcept {
  return std::visit(overloaded{
                        [](const Empty&) { return true; },
                        [](const Union& u) {
                          return std::all_of(u.children.begin(), u.children.end(),
                                             [](const DomainSet& c) { return c.is_empty(); });
                        },
                        [](const Difference& d) { return d.a->is_empty(); },
                        [](const Translate& t) { return t.child->is_empty(); },
                        [](const auto&) { return false; },
                    },
                    *node_);
}

bool contains(const DomainSet& domain, std::span<const double> x) {
  if (static_cast<int>(x.size()) != domain.dimension()) throw ArgumentError("contains: point dimension mismatch");
  return std::visit(
      overloaded{
          [](const Empty&) { return false; },
          [&](const Box& b) { return in_box(b, x); },
          [&](const Ball& b) { return distance_squared(x, b.center) < b.radius * b.radius; },
          [&](const ClippedBox& c) {
            if (!in_box(c.box, x)) return false;
            for (const HalfSpace& h : c.cuts)
              if (!(dot(h.normal, x) < h.offset)) return false;
            return true;
          },
          [&](const Union& u) {
            return std::any_of(u.children.begin(), u.children.end(),
                               [&](const DomainSet& c) { return contains(c, x); });
          },
          [&](const Difference& d) { return contains(*d.a, x) && !closure_contains(*d.b, x); },
          [&](const Translate& t) { return contains(*t.child, minus(x, t.offset)); },
      },
      domain.node());
}

bool closure_contains(const DomainSet& domain, std::span<const double> x) {
  if (static_cast<int>(x.size()) != domain.dimension()) throw ArgumentError("contains: point dimension mismatch");
  return std::visit(
      overloaded{
          [](const Empty&) { return false; },
          [&](const Union& u) {
            return std::any_of(u.children.begin(), u.children.end(),
                               [&](const DomainSet& c) { return closure_contains(c, x); });
          },
          // closure(a \ closure(b)) lies in closure(a) \ b
          [&](const Difference& d) { return closure_contains(*d.a, x) && !contains(*d.b, x); },
          [&](const Translate& t) { return closure_contains(*t.child, minus(x, t.offset)); },
          [&](const auto&) { return *convex_closure_contains(domain, x); },
      },
      domain.node());
}

quadrature::Estimate volume(const DomainSet& domain, const VolumeMethod& method) {
  if (domain.is_empty()) throw DegenerateDomainError("domain is empty");
  quadrature::Estimate est;
  if (std::holds_alternative<quadrature::ClosedForm>(method)) {
    est.value = closed_form_volume(domain);
  } else {
    const auto& rule = std::get<quadrature::MonteCarloRule>(method);
    if (rule.samples < 2) throw ArgumentError("Monte Carlo needs at least two samples");
    const Box bb = bounding_box(domain);
    const int d = domain.dimension();
    std::mt19937_64 rng(rule.seed);
    std::vector<std::uniform_real_distribution<double>> axes;
    double cube = 1.0;
    for (int i = 0; i < d; ++i) {
      axes.emplace_back(bb.lo[i], bb.hi[i]);
      cube *= bb.hi[i] - bb.lo[i];
    }
    Point x(d);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < rule.samples; ++k) {
      for (int i = 0; i < d; ++i) x[i] = axes[i](rng);
      if (contains(domain, x)) ++hits;
    }
    const double n = static_cast<double>(rule.samples);
    const double f = hits / n;
    est.value = cube * f;
    est.standard_error = cube * std::sqrt(f * (1.0 - f) / (n - 1.0));
  }
  if (!(est.value > 0.0)) throw DegenerateDomainError("domain has zero volume");
  return est;
}

DomainSet inner_set(const DomainSet& domain, double delta) {
  if (!(delta > 0.0)) throw ArgumentError("inner_set needs delta > 0");
  const int d = domain.dimension();
  return std::visit(
      overloaded{
          [&](const Empty&) { return DomainSet::empty(d); },
          [&](const Box& b) {
            Box inset = b;
            for (int i = 0; i < d; ++i) {
              inset.lo[i] += delta;
              inset.hi[i] -= delta;
            }
            if (box_is_void(inset)) return DomainSet::empty(d);
            return DomainSet::box(inset.lo, inset.hi);
          },
          [&](const Ball& b) {
            if (!(b.radius > delta)) return DomainSet::empty(d);
            return DomainSet::ball(b.center, b.radius - delta);
          },
          [&](const ClippedBox& c) {
            ClippedBox inset = c;
            for (int i = 0; i < d; ++i) {
              inset.box.lo[i] += delta;
              inset.box.hi[i] -= delta;
            }
            if (box_is_void(inset.box)) return DomainSet::empty(d);
            for (HalfSpace& h : inset.cuts) h.offset -= delta * norm(h.normal);
            return DomainSet::clipped_box(inset.box, inset.cuts);
          },
          [&](const Union& u) {
            std::vector<DomainSet> kids;
            for (const DomainSet& c : u.children) {
              DomainSet k = inner_set(c, delta);
              if (!k.is_empty()) kids.push_back(std::move(k));
            }
            if (kids.empty()) return DomainSet::empty(d);
            if (kids.size() == 1) return kids.front();
            return DomainSet::unite(std::move(kids));
          },
          [&](const Difference& diff) {
            DomainSet a = inner_set(*diff.a, delta);
            if (a.is_empty()) return a;
            return DomainSet::difference(std::move(a), dilate(*diff.b, delta));
          },
          [&](const Translate& t) {
            DomainSet k = inner_set(*t.child, delta);
            if (k.is_empty()) return k;
            return DomainSet::translate(std::move(k), t.offset);
          },
      },
      domain.node());
}

DomainSet dilate(const DomainSet& domain, double delta) {
  if (!(delta >= 0.0)) throw ArgumentError("dilate needs delta >= 0");
  const int d = domain.dimension();
  return std::visit(
      overloaded{
          [&](const Empty&) { return DomainSet::empty(d); },
          [&](const Box& b) {
            Box out = b;
            for (int i = 0; i < d; ++i) {
              out.lo[i] -= delta;
              out.hi[i] += delta;
            }
            return DomainSet::box(out.lo, out.hi);
          },
          [&](const Ball& b) { return DomainSet::ball(b.center, b.radius + delta); },
          [&](const ClippedBox& c) {
            ClippedBox out = c;
            for (int i = 0; i < d; ++i) {
              out.box.lo[i] -= delta;
              out.box.hi[i] += delta;
            }
            for (HalfSpace& h : out.cuts) h.offset += delta * norm(h.normal);
            return DomainSet::clipped_box(out.box, out.cuts);
          },
          [&](const Union& u) {
            std::vector<DomainSet> kids;
            for (const DomainSet& c : u.children) kids.push_back(dilate(c, delta));
            return DomainSet::unite(std::move(kids));
          },
          [&](const Difference& diff) { return dilate(*diff.a, delta); },
          [&](const Translate& t) { return DomainSet::translate(dilate(*t.child, delta), t.offset); },
      },
      domain.node());
}

Box bounding_box(const DomainSet& domain) {
  if (domain.is_empty()) throw DegenerateDomainError("bounding box of an empty domain");
  const int d = domain.dimension();
  return std::visit(overloaded{
                        [](const Empty&) -> Box { throw DegenerateDomainError("bounding box of an empty domain"); },
                        [](const Box& b) { return b; },
                        [&](const Ball& b) {
                          Box out{b.center, b.center};
                          for (int i = 0; i < d; ++i) {
                            out.lo[i] -= b.radius;
                            out.hi[i] += b.radius;
                          }
                          return out;
                        },
                        [](const ClippedBox& c) { return c.box; },
                        [&](const Union& u) {
                          std::optional<Box> out;
                          for (const DomainSet& c : u.children) {
                            if (c.is_empty()) continue;
                            const Box b = bounding_box(c);
                            if (!out) {
                              out = b;
                              continue;
                            }
                            for (int i = 0; i < d; ++i) {
                              out->lo[i] = std::min(out->lo[i], b.lo[i]);
                              out->hi[i] = std::max(out->hi[i], b.hi[i]);
                            }
                          }
                          return *out;
                        },
                        [](const Difference& diff) { return bounding_box(*diff.a); },
                        [&](const Translate& t) {
                          Box b = bounding_box(*t.child);
                          for (int i = 0; i < d; ++i) {
                            b.lo[i] += t.offset[i];
                            b.hi[i] += t.offset[i];
                          }
                          return b;
                        },
                    },
                    domain.node());
}

Cube enclosing_cube(const DomainSet& domain, double pad) {
  if (!(pad >= 0.0)) throw ArgumentError("pad must be nonnegative");
  const Box bb = bounding_box(domain);
  const int d = domain.dimension();
  double side = 0.0;
  for (int i = 0; i < d; ++i) side = std::max(side, bb.hi[i] - bb.lo[i]);
  Cube cube;
  cube.side = side * (1.0 + 2.0 * pad);
  cube.origin.resize(d);
  for (int i = 0; i < d; ++i) cube.origin[i] = 0.5 * (bb.lo[i] + bb.hi[i]) - 0.5 * cube.side;
  return cube;
}

double GridMask::cell_volume() const { return std::pow(box.side / n, dimension); }

Point GridMask::cell_center(std::size_t index) const {
  Point x(dimension);
  const double h = box.side / n;
  for (int i = dimension - 1; i >= 0; --i) {
    x[i] = box.origin[i] + (static_cast<double>(index % n) + 0.5) * h;
    index /= n;
  }
  return x;
}

GridMask rasterize(const DomainSet& domain, const Cube& box, int n) {
  if (n < 1 || (n & (n - 1)) != 0) throw ArgumentError("grid resolution must be a power of two");
  const int d = domain.dimension();
  require_dimension(box.origin, d, "grid origin");
  if (!(box.side > 0.0)) throw ArgumentError("grid side must be positive");
  if (domain.is_empty()) throw DegenerateDomainError("cannot rasterize an empty domain");
  const Box bb = bounding_box(domain);
  const double slack = 1e-12 * box.side;
  for (int i = 0; i < d; ++i)
    if (bb.lo[i] < box.origin[i] - slack || bb.hi[i] > box.origin[i] + box.side + slack)
      throw ArgumentError("grid box does not contain the domain's bounding box");

  GridMask mask;
  mask.dimension = d;
  mask.n = n;
  mask.box = box;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(n);
  mask.occupied.assign(total, 0);
  for (std::size_t k = 0; k < total; ++k) {
    if (contains(domain, mask.cell_center(k))) {
      mask.occupied[k] = 1;
      ++mask.occupied_count;
    }
  }
  if (mask.occupied_count == 0) throw DegenerateDomainError("no grid cell centre lies in the domain");
  return mask;
}

nlohmann::json to_json(const GridMask& mask) {
  json runs = json::array();
  std::uint8_t current = 0;
  std::size_t length = 0;
  for (std::uint8_t v : mask.occupied) {
    if (v != current) {
      runs.push_back(length);
      current = v;
      length = 0;
    }
    ++length;
  }
  runs.push_back(length);
  return json{{"d", mask.dimension}, {"n", mask.n}, {"L", mask.box.side}, {"origin", mask.box.origin}, {"runs", runs}};
}

GridMask grid_mask_from_json(const nlohmann::json& j) {
  try {
    GridMask mask;
    mask.dimension = j.at("d").get<int>();
    mask.n = j.at("n").get<int>();
    mask.box.side = j.at("L").get<double>();
    mask.box.origin = j.at("origin").get<Point>();
    if (mask.dimension < 1 || mask.n < 1 || static_cast<int>(mask.box.origin.size()) != mask.dimension)
      throw ValidationError("grid mask header is inconsistent");
    std::size_t total = 1;
    for (int i = 0; i < mask.dimension; ++i) total *= static_cast<std::size_t>(mask.n);
    std::uint8_t current = 0;
    for (const json& r : j.at("runs")) {
      const auto length = r.get<std::size_t>();
      if (mask.occupied.size() + length > total) throw ValidationError("grid mask runs exceed the grid size");
      mask.occupied.insert(mask.occupied.end(), length, current);
      if (current) mask.occupied_count += length;
      current ^= 1u;
    }
    if (mask.occupied.size() != total) throw ValidationError("grid mask runs do not cover the grid");
    return mask;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("grid mask: ") + e.what());
  }
}

namespace {

Point point_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ValidationError(std::string("missing array field '") + key + "'");
  Point p;
  for (const json& v : j.at(key)) {
    if (!v.is_number()) throw ValidationError(std::string("field '") + key + "' must hold numbers");
    p.push_back(v.get<double>());
  }
  return p;
}

std::vector<DomainSet> children_of(const json& j) {
  if (!j.contains("children") || !j.at("children").is_array() || j.at("children").empty())
    throw ValidationError("operation needs a nonempty 'children' array");
  std::vector<DomainSet> kids;
  for (const json& c : j.at("children")) kids.push_back(domain_from_json(c));
  return kids;
}

json box_json(const Box& b) { return json{{"lo", b.lo}, {"hi", b.hi}}; }

}  // namespace

DomainSet domain_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("domain node must be an object");
  try {
    if (j.contains("shape")) {
      const std::string shape = j.at("shape").get<std::string>();
      if (shape == "box") return DomainSet::box(point_field(j, "lo"), point_field(j, "hi"));
      if (shape == "ball") {
        if (!j.contains("radius") || !j.at("radius").is_number()) throw ValidationError("ball needs a numeric radius");
        return DomainSet::ball(point_field(j, "center"), j.at("radius").get<double>());
      }
      if (shape == "clipped_box") {
        std::vector<HalfSpace> cuts;
        if (j.contains("cuts")) {
          for (const json& c : j.at("cuts")) {
            if (!c.contains("offset") || !c.at("offset").is_number()) throw ValidationError("cut needs a numeric offset");
            cuts.push_back(HalfSpace{point_field(c, "normal"), c.at("offset").get<double>()});
          }
        }
        return DomainSet::clipped_box(Box{point_field(j, "lo"), point_field(j, "hi")}, std::move(cuts));
      }
      if (shape == "empty") return DomainSet::empty(j.at("d").get<int>());
      throw ValidationError("unknown shape '" + shape + "'");
    }
    if (j.contains("op")) {
      const std::string op = j.at("op").get<std::string>();
      std::vector<DomainSet> kids = children_of(j);
      if (op == "union") return DomainSet::unite(std::move(kids));
      if (op == "difference") {
        if (kids.size() != 2) throw ValidationError("difference needs exactly two children");
        return DomainSet::difference(std::move(kids[0]), std::move(kids[1]));
      }
      if (op == "translate") {
        if (kids.size() != 1) throw ValidationError("translate needs exactly one child");
        return DomainSet::translate(std::move(kids[0]), point_field(j, "offset"));
      }
      throw ValidationError("unknown op '" + op + "'");
    }
  } catch (const ArgumentError& e) {
    throw ValidationError(e.what());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("domain: ") + e.what());
  }
  throw ValidationError("domain node needs 'shape' or 'op'");
}

nlohmann::json to_json(const DomainSet& domain) {
  return std::visit(overloaded{
                        [&](const Empty&) { return json{{"shape", "empty"}, {"d", domain.dimension()}}; },
                        [](const Box& b) {
                          json j = box_json(b);
                          j["shape"] = "box";
                          return j;
                        },
                        [](const Ball& b) { return json{{"shape", "ball"}, {"center", b.center}, {"radius", b.radius}}; },
                        [](const ClippedBox& c) {
                          json j = box_json(c.box);
                          j["shape"] = "clipped_box";
                          json cuts = json::array();
                          for (const HalfSpace& h : c.cuts) cuts.push_back({{"normal", h.normal}, {"offset", h.offset}});
                          j["cuts"] = cuts;
                          return j;
                        },
                        [](const Union& u) {
                          json kids = json::array();
                          for (const DomainSet& c : u.children) kids.push_back(to_json(c));
                          return json{{"op", "union"}, {"children", kids}};
                        },
                        [](const Difference& d) {
                          return json{{"op", "difference"}, {"children", {to_json(*d.a), to_json(*d.b)}}};
                        },
                        [](const Translate& t) {
                          return json{{"op", "translate"}, {"offset", t.offset}, {"children", {to_json(*t.child)}}};
                        },
                    },
                    domain.node());
}

}  // namespace weyl::geometry
