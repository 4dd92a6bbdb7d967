#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "geometry.hpp"

namespace helmuc {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct Triangle {
    std::array<int, 3> v{}; // vertex ids, counter-clockwise
};

// Interior face: shared edge of two triangles. Vertex ids satisfy a < b and
// left < right (triangle ids); the conormal used in the jump terms points
// from left to right.
struct Face {
    int a = 0, b = 0;
    int left = 0, right = 0;
};

struct Mesh {
    Rect domain;
    int nx = 0, ny = 0;
    std::vector<Vec2> vertices;
    std::vector<Triangle> triangles;
    std::vector<Face> faces;        // interior faces only
    std::vector<char> boundary;     // 1 if the vertex lies on the domain boundary
    double h = 0.0;                 // reported mesh size 1/sqrt(n_v)
    double h_geom = 0.0;            // max element diameter, used by the stabilizer

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
    int n_interior_vertices() const {
        int n = 0;
        for (char b : boundary) n += (b == 0);
        return n;
    }
};

inline double tri_area(const Mesh& m, int t) {
    const auto& tr = m.triangles[t];
    const Vec2& p0 = m.vertices[tr.v[0]];
    const Vec2& p1 = m.vertices[tr.v[1]];
    const Vec2& p2 = m.vertices[tr.v[2]];
    return 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y));
}

inline Vec2 tri_centroid(const Mesh& m, int t) {
    const auto& tr = m.triangles[t];
    const Vec2& p0 = m.vertices[tr.v[0]];
    const Vec2& p1 = m.vertices[tr.v[1]];
    const Vec2& p2 = m.vertices[tr.v[2]];
    return {(p0.x + p1.x + p2.x) / 3.0, (p0.y + p1.y + p2.y) / 3.0};
}

// Structured triangulation of a rectangle: (nx+1)*(ny+1) vertices in row-major
// order, each cell split along a diagonal whose direction alternates with the
// cell parity (i+j even: SW-NE, odd: NW-SE), which avoids a globally preferred
// direction in the jump terms.
inline Mesh build_uniform_mesh(const Rect& domain, int nx, int ny) {
    if (nx < 1 || ny < 1) throw std::invalid_argument("build_uniform_mesh: nx, ny must be >= 1");

    Mesh m;
    m.domain = domain;
    m.nx = nx;
    m.ny = ny;

    const double dx = domain.width() / nx;
    const double dy = domain.height() / ny;

    m.vertices.resize(static_cast<size_t>(nx + 1) * (ny + 1));
    m.boundary.assign(m.vertices.size(), 0);
    for (int j = 0; j <= ny; ++j) {
        for (int i = 0; i <= nx; ++i) {
            const int vid = j * (nx + 1) + i;
            m.vertices[vid] = {domain.x0 + i * dx, domain.y0 + j * dy};
            m.boundary[vid] = (i == 0 || i == nx || j == 0 || j == ny) ? 1 : 0;
        }
    }

    m.triangles.reserve(static_cast<size_t>(2) * nx * ny);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int v00 = j * (nx + 1) + i;
            const int v10 = v00 + 1;
            const int v01 = v00 + (nx + 1);
            const int v11 = v01 + 1;
            if ((i + j) % 2 == 0) {
                m.triangles.push_back({{v00, v10, v11}});
                m.triangles.push_back({{v00, v11, v01}});
            } else {
                m.triangles.push_back({{v00, v10, v01}});
                m.triangles.push_back({{v10, v11, v01}});
            }
        }
    }

    // interior faces: edges shared by exactly two triangles
    const long long nv = m.n_vertices();
    std::unordered_map<long long, std::array<int, 2>> edge_tris;
    edge_tris.reserve(m.triangles.size() * 2);
    for (int t = 0; t < m.n_triangles(); ++t) {
        const auto& tr = m.triangles[t];
        for (int e = 0; e < 3; ++e) {
            int a = tr.v[e], b = tr.v[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            auto [it, inserted] = edge_tris.try_emplace(a * nv + b, std::array<int, 2>{t, -1});
            if (!inserted) it->second[1] = t;
        }
    }
    for (const auto& [key, tris] : edge_tris) {
        if (tris[1] < 0) continue; // boundary edge
        m.faces.push_back({static_cast<int>(key / nv), static_cast<int>(key % nv),
                           tris[0], tris[1]});
    }
    std::sort(m.faces.begin(), m.faces.end(), [](const Face& f, const Face& g) {
        return f.a != g.a ? f.a < g.a : f.b < g.b;
    });

    m.h = 1.0 / std::sqrt(static_cast<double>(m.n_vertices()));
    m.h_geom = 0.0;
    for (int t = 0; t < m.n_triangles(); ++t) {
        const auto& tr = m.triangles[t];
        for (int e = 0; e < 3; ++e) {
            const Vec2& p = m.vertices[tr.v[e]];
            const Vec2& q = m.vertices[tr.v[(e + 1) % 3]];
            m.h_geom = std::max(m.h_geom, std::hypot(q.x - p.x, q.y - p.y));
        }
    }
    return m;
}

// Elements whose barycenter lies in the region. Subset boundaries are only
// resolved to element granularity; the convergence studies keep region
// boundaries aligned with mesh lines so this is exact there.
inline std::vector<int> classify_elements(const Mesh& m, const Region& region) {
    std::vector<int> elems;
    for (int t = 0; t < m.n_triangles(); ++t) {
        const Vec2 c = tri_centroid(m, t);
        if (region.contains(c.x, c.y)) elems.push_back(t);
    }
    return elems;
}

// Unit normal of an interior face, oriented from the left triangle into the
// right one.
inline Vec2 interior_face_normal(const Mesh& m, int f) {
    const Face& face = m.faces[f];
    const Vec2& pa = m.vertices[face.a];
    const Vec2& pb = m.vertices[face.b];
    const double ex = pb.x - pa.x, ey = pb.y - pa.y;
    const double len = std::hypot(ex, ey);
    Vec2 n{ey / len, -ex / len};
    const Vec2 cr = tri_centroid(m, face.right);
    const Vec2 mid{0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};
    if (n.x * (cr.x - mid.x) + n.y * (cr.y - mid.y) < 0.0) {
        n.x = -n.x;
        n.y = -n.y;
    }
    return n;
}

// Plain-text dump for external inspection: counts, then vertices with
// boundary flags, then triangles, then interior faces.
inline void dump_mesh(const Mesh& m, std::ostream& os) {
    char buf[128];
    os << m.n_vertices() << ' ' << m.n_triangles() << ' ' << m.faces.size() << '\n';
    for (int v = 0; v < m.n_vertices(); ++v) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", m.vertices[v].x, m.vertices[v].y,
                      static_cast<int>(m.boundary[v]));
        os << buf;
    }
    for (const auto& t : m.triangles)
        os << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << '\n';
    for (const auto& f : m.faces)
        os << f.a << ' ' << f.b << ' ' << f.left << ' ' << f.right << '\n';
}

} // namespace helmuc
