#pragma once

#include <Eigen/SparseCholesky>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "mesh.hpp"
#include "quadrature.hpp"
#include "sparse.hpp"

namespace helmuc {

// Gradients of the three hat functions on a triangle (constant vectors),
// ordered like the vertices.
inline std::array<Vec2, 3> hat_gradients(const Vec2& p0, const Vec2& p1, const Vec2& p2,
                                         double area) {
    const double s = 1.0 / (2.0 * area);
    return {Vec2{(p1.y - p2.y) * s, (p2.x - p1.x) * s},
            Vec2{(p2.y - p0.y) * s, (p0.x - p2.x) * s},
            Vec2{(p0.y - p1.y) * s, (p1.x - p0.x) * s}};
}

inline Eigen::Matrix3d local_stiffness(const Vec2& p0, const Vec2& p1, const Vec2& p2) {
    const double area =
        0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
    const auto g = hat_gradients(p0, p1, p2, area);
    Eigen::Matrix3d k;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) k(i, j) = area * (g[i].x * g[j].x + g[i].y * g[j].y);
    return k;
}

inline Eigen::Matrix3d local_mass(const Vec2& p0, const Vec2& p1, const Vec2& p2) {
    const double area =
        0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
    Eigen::Matrix3d m;
    m.setConstant(area / 12.0);
    m.diagonal().setConstant(area / 6.0);
    return m;
}

// Element load vector (integral of f against the hat functions) by quadrature.
template <class F>
Eigen::Vector3d local_load(const Vec2& p0, const Vec2& p1, const Vec2& p2, F&& f,
                           const QuadratureRule& rule) {
    const double area2 = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    Eigen::Vector3d b = Eigen::Vector3d::Zero();
    for (size_t q = 0; q < rule.points.size(); ++q) {
        const auto& l = rule.points[q];
        const double x = l[0] * p0.x + l[1] * p1.x + l[2] * p2.x;
        const double y = l[0] * p0.y + l[1] * p1.y + l[2] * p2.y;
        const double wf = area2 * rule.weights[q] * f(x, y);
        for (int i = 0; i < 3; ++i) b[i] += wf * l[i];
    }
    return b;
}

namespace detail {
template <class LocalFn>
SpMat assemble_elementwise(const Mesh& m, const std::vector<int>& elems, LocalFn&& local) {
    SymmetricBuilder builder(m.n_vertices());
    for (int t : elems) {
        const auto& tr = m.triangles[t];
        const auto local_mat =
            local(m.vertices[tr.v[0]], m.vertices[tr.v[1]], m.vertices[tr.v[2]]);
        builder.add_local(tr.v, local_mat);
    }
    return builder.build();
}

inline std::vector<int> all_elements(const Mesh& m) {
    std::vector<int> e(m.n_triangles());
    for (int t = 0; t < m.n_triangles(); ++t) e[t] = t;
    return e;
}
} // namespace detail

inline SpMat assemble_stiffness(const Mesh& m) {
    return detail::assemble_elementwise(m, detail::all_elements(m),
                                        [](auto& a, auto& b, auto& c) { return local_stiffness(a, b, c); });
}

inline SpMat assemble_mass(const Mesh& m) {
    return detail::assemble_elementwise(m, detail::all_elements(m),
                                        [](auto& a, auto& b, auto& c) { return local_mass(a, b, c); });
}

// Mass matrix restricted to an element subset (e.g. the data region omega).
inline SpMat assemble_mass_elems(const Mesh& m, const std::vector<int>& elems) {
    return detail::assemble_elementwise(m, elems,
                                        [](auto& a, auto& b, auto& c) { return local_mass(a, b, c); });
}

// Gradient-jump penalty: J(u,v) = sum over interior faces F of
// h_F |F| [n.grad u]_F [n.grad v]_F with h_F the face diameter, so the face
// weight is |F|^2. The jump of the (piecewise constant) normal gradient is a
// linear functional of the nodal values on the two adjacent triangles; each
// face contributes a rank-one block.
inline SpMat assemble_jump(const Mesh& m) {
    SymmetricBuilder builder(m.n_vertices());
    std::array<int, 4> nodes{};
    std::array<double, 4> coef{};
    for (size_t f = 0; f < m.faces.size(); ++f) {
        const Face& face = m.faces[f];
        const Vec2& pa = m.vertices[face.a];
        const Vec2& pb = m.vertices[face.b];
        const double len = std::hypot(pb.x - pa.x, pb.y - pa.y);
        const double weight = len * len;
        const Vec2 n = interior_face_normal(m, static_cast<int>(f));

        int cnt = 0;
        auto accumulate = [&](int tri, double sign) {
            const auto& tr = m.triangles[tri];
            const double area = tri_area(m, tri);
            const auto g = hat_gradients(m.vertices[tr.v[0]], m.vertices[tr.v[1]],
                                         m.vertices[tr.v[2]], area);
            for (int i = 0; i < 3; ++i) {
                const double c = sign * (n.x * g[i].x + n.y * g[i].y);
                int slot = -1;
                for (int s = 0; s < cnt; ++s)
                    if (nodes[s] == tr.v[i]) { slot = s; break; }
                if (slot < 0) {
                    slot = cnt++;
                    nodes[slot] = tr.v[i];
                    coef[slot] = 0.0;
                }
                coef[slot] += c;
            }
        };
        accumulate(face.left, 1.0);
        accumulate(face.right, -1.0);

        for (int i = 0; i < cnt; ++i)
            for (int j = 0; j < cnt; ++j)
                if (nodes[i] <= nodes[j]) builder.add(nodes[i], nodes[j], weight * coef[i] * coef[j]);
    }
    return builder.build();
}

template <class F>
Vec assemble_load(const Mesh& m, const std::vector<int>& elems, F&& f,
                  const QuadratureRule& rule) {
    Vec b = Vec::Zero(m.n_vertices());
    for (int t : elems) {
        const auto& tr = m.triangles[t];
        const Eigen::Vector3d local =
            local_load(m.vertices[tr.v[0]], m.vertices[tr.v[1]], m.vertices[tr.v[2]], f, rule);
        for (int i = 0; i < 3; ++i) b[tr.v[i]] += local[i];
    }
    return b;
}

template <class F>
Vec assemble_load_all(const Mesh& m, F&& f, const QuadratureRule& rule) {
    return assemble_load(m, detail::all_elements(m), f, rule);
}

template <class F>
Vec interpolate(const Mesh& m, F&& f) {
    Vec u(m.n_vertices());
    for (int v = 0; v < m.n_vertices(); ++v) u[v] = f(m.vertices[v].x, m.vertices[v].y);
    return u;
}

// L2 projection onto the P1 space: solve M w = (f, phi_i).
template <class F>
Vec l2_project(const Mesh& m, F&& f, const QuadratureRule& rule) {
    const SpMat mass = assemble_mass(m);
    const Vec b = assemble_load_all(m, f, rule);
    Eigen::SimplicialLDLT<SpMat> solver(mass);
    if (solver.info() != Eigen::Success) throw std::runtime_error("l2_project: mass factorization failed");
    return solver.solve(b);
}

// u^T (K - k^2 M) w, the discrete Helmholtz pairing. Convenience for tests;
// the solver assembles the same operator itself.
inline double apply_G(const Mesh& m, double k, const Vec& u, const Vec& w) {
    const SpMat g = SpMat(assemble_stiffness(m)) - SpMat(k * k * assemble_mass(m));
    return u.dot(g * w);
}

} // namespace helmuc
