#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "mesh.hpp"

namespace helmuc {

// Symmetric quadrature rule on the reference triangle, points in barycentric
// coordinates, weights summing to the reference area 1/2.
struct QuadratureRule {
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int degree = 0;
};

// 3-point rule, exact through degree 2.
inline const QuadratureRule& triangle_rule_degree2() {
    static const QuadratureRule rule = [] {
        QuadratureRule r;
        r.degree = 2;
        const double a = 2.0 / 3.0, b = 1.0 / 6.0;
        r.points = {{{a, b, b}}, {{b, a, b}}, {{b, b, a}}};
        r.weights = {b, b, b};
        return r;
    }();
    return rule;
}

// 6-point rule, exact through degree 4 (two symmetric orbits). The barycentric
// coordinates and weights are the closed-form roots of the degree-4 moment
// conditions, not truncated table values.
inline const QuadratureRule& triangle_rule_degree4() {
    static const QuadratureRule rule = [] {
        QuadratureRule r;
        r.degree = 4;
        const double s = std::sqrt(38.0 - 44.0 * std::sqrt(2.0 / 5.0));
        const double a1 = (8.0 - std::sqrt(10.0) + s) / 18.0;
        const double a2 = (8.0 - std::sqrt(10.0) - s) / 18.0;
        const double t = std::sqrt(213125.0 - 53320.0 * std::sqrt(10.0));
        const double w1 = (620.0 + t) / 3720.0 / 2.0;
        const double w2 = (620.0 - t) / 3720.0 / 2.0;
        for (int i = 0; i < 3; ++i) {
            std::array<double, 3> p{a1, a1, a1};
            p[i] = 1.0 - 2.0 * a1;
            r.points.push_back(p);
            r.weights.push_back(w1);
        }
        for (int i = 0; i < 3; ++i) {
            std::array<double, 3> p{a2, a2, a2};
            p[i] = 1.0 - 2.0 * a2;
            r.points.push_back(p);
            r.weights.push_back(w2);
        }
        return r;
    }();
    return rule;
}

// Integral of f over a physical triangle: 2*area * sum_i w_i f(x_i).
template <class F>
double integrate_triangle(const Vec2& p0, const Vec2& p1, const Vec2& p2, F&& f,
                          const QuadratureRule& rule) {
    const double area2 = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    double sum = 0.0;
    for (size_t q = 0; q < rule.points.size(); ++q) {
        const auto& l = rule.points[q];
        const double x = l[0] * p0.x + l[1] * p1.x + l[2] * p2.x;
        const double y = l[0] * p0.y + l[1] * p1.y + l[2] * p2.y;
        sum += rule.weights[q] * f(x, y);
    }
    return area2 * sum;
}

template <class F>
double integrate_elements(const Mesh& m, const std::vector<int>& elems, F&& f,
                          const QuadratureRule& rule) {
    double sum = 0.0;
    for (int t : elems) {
        const auto& tr = m.triangles[t];
        sum += integrate_triangle(m.vertices[tr.v[0]], m.vertices[tr.v[1]],
                                  m.vertices[tr.v[2]], f, rule);
    }
    return sum;
}

} // namespace helmuc
