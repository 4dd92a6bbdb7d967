#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace helmuc {

struct Rect {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    bool contains(double x, double y) const {
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
    }
};

// Point-membership predicate for the measurement/continuation subsets.
// Only the shapes the benchmark geometries need: a box, a rectangle with a
// box cut out, and a disk.
class Region {
  public:
    static Region box(double x0, double x1, double y0, double y1) {
        Region r;
        r.kind_ = Kind::box;
        r.a_ = Rect{x0, x1, y0, y1};
        return r;
    }
    static Region rect_minus_box(const Rect& outer, const Rect& cut) {
        Region r;
        r.kind_ = Kind::rect_minus_box;
        r.a_ = outer;
        r.b_ = cut;
        return r;
    }
    static Region disk(double cx, double cy, double radius) {
        Region r;
        r.kind_ = Kind::disk;
        r.cx_ = cx;
        r.cy_ = cy;
        r.radius_ = radius;
        return r;
    }

    bool contains(double x, double y) const {
        switch (kind_) {
        case Kind::box:
            return a_.contains(x, y);
        case Kind::rect_minus_box:
            return a_.contains(x, y) && !b_.contains(x, y);
        case Kind::disk: {
            const double dx = x - cx_, dy = y - cy_;
            return dx * dx + dy * dy <= radius_ * radius_;
        }
        }
        return false;
    }

  private:
    enum class Kind { box, rect_minus_box, disk };
    Kind kind_ = Kind::box;
    Rect a_{}, b_{};
    double cx_ = 0.0, cy_ = 0.0, radius_ = 0.0;
};

// A named benchmark geometry: the computational domain plus the data set
// omega (where measurements live) and the target set B (where the error is
// measured). B always excludes a neighborhood of the part of the boundary
// that carries no data, since no estimate holds up to that boundary.
struct Geometry {
    std::string name;
    Rect domain;
    Region omega;
    Region B;
};

inline Geometry make_geometry(std::string_view name) {
    const double pi = std::numbers::pi;
    const Rect unit{0.0, 1.0, 0.0, 1.0};
    const Rect strip{0.0, pi, 0.0, 1.0};

    if (name == "convex") {
        // data fills the domain except a large box touching the top edge;
        // continuation runs upward into that box
        return {std::string(name), unit,
                Region::rect_minus_box(unit, Rect{0.1, 0.9, 0.25, 1.0}),
                Region::rect_minus_box(unit, Rect{0.1, 0.9, 0.95, 1.0})};
    }
    if (name == "nonconvex_box") {
        // data in an interior box, target a larger box around it: part of B
        // lies outside the convex hull of omega
        return {std::string(name), unit,
                Region::box(0.25, 0.75, 0.0, 0.5),
                Region::box(0.125, 0.875, 0.0, 0.95)};
    }
    if (name == "nonconvex_disk") {
        return {std::string(name), unit,
                Region::disk(0.5, 0.5, 0.25),
                Region::disk(0.5, 0.5, 0.45)};
    }
    if (name == "hadamard_convex") {
        // analogue of "convex" on the (0,pi)x(0,1) strip: side-and-bottom
        // data, continuation upward toward the growing modes
        return {std::string(name), strip,
                Region::rect_minus_box(strip, Rect{pi / 4, 3 * pi / 4, 0.25, 1.0}),
                Region::rect_minus_box(strip, Rect{pi / 4, 3 * pi / 4, 0.95, 1.0})};
    }
    if (name == "hadamard_nonconvex") {
        return {std::string(name), strip,
                Region::box(pi / 4, 3 * pi / 4, 0.0, 0.5),
                Region::box(pi / 8, 7 * pi / 8, 0.0, 0.95)};
    }
    if (name == "wkb") {
        // thin data strip at the bottom, target everything except the top sliver
        const double eps = 0.2;
        return {std::string(name), unit,
                Region::box(0.0, 1.0, 0.0, eps),
                Region::box(0.0, 1.0, 0.0, 1.0 - eps)};
    }
    throw std::invalid_argument("unknown geometry: " + std::string(name));
}

} // namespace helmuc
