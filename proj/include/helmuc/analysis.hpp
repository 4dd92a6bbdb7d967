#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "assembly.hpp"
#include "mesh.hpp"
#include "problems.hpp"
#include "quadrature.hpp"
#include "sparse.hpp"

namespace helmuc {

// Error and reference norms of a P1 function against an analytic solution,
// accumulated over an element subset with the degree-4 rule (the analytic
// fields are evaluated exactly at the quadrature points; no interpolation of
// the reference solution is involved).
struct ErrorNorms {
    double l2_err = 0.0, h1_err = 0.0;    // full H1 norm: L2 part + seminorm
    double l2_exact = 0.0, h1_exact = 0.0;
    double l2_uh = 0.0;                   // norm of the discrete function itself
    bool relative_valid = false;          // false if the exact norm vanishes

    double rel_l2() const { return relative_valid ? l2_err / l2_exact : l2_err; }
    double rel_h1() const { return relative_valid ? h1_err / h1_exact : h1_err; }
};

inline ErrorNorms error_norms(const Mesh& m, const std::vector<int>& elems, const Vec& uh,
                              const ProblemCase& prob) {
    const auto& rule = triangle_rule_degree4();
    double e_l2 = 0, e_semi = 0, x_l2 = 0, x_semi = 0, d_l2 = 0;
    for (int t : elems) {
        const auto& tr = m.triangles[t];
        const Vec2& p0 = m.vertices[tr.v[0]];
        const Vec2& p1 = m.vertices[tr.v[1]];
        const Vec2& p2 = m.vertices[tr.v[2]];
        const double area = tri_area(m, t);
        const auto g = hat_gradients(p0, p1, p2, area);
        const double u0 = uh[tr.v[0]], u1 = uh[tr.v[1]], u2 = uh[tr.v[2]];
        const double ghx = u0 * g[0].x + u1 * g[1].x + u2 * g[2].x;
        const double ghy = u0 * g[0].y + u1 * g[1].y + u2 * g[2].y;
        for (size_t q = 0; q < rule.points.size(); ++q) {
            const auto& l = rule.points[q];
            const double x = l[0] * p0.x + l[1] * p1.x + l[2] * p2.x;
            const double y = l[0] * p0.y + l[1] * p1.y + l[2] * p2.y;
            const double w = 2.0 * area * rule.weights[q];
            const double vh = l[0] * u0 + l[1] * u1 + l[2] * u2;
            const double v = prob.u(x, y);
            const double vx = prob.ux(x, y), vy = prob.uy(x, y);
            e_l2 += w * (vh - v) * (vh - v);
            e_semi += w * ((ghx - vx) * (ghx - vx) + (ghy - vy) * (ghy - vy));
            x_l2 += w * v * v;
            x_semi += w * (vx * vx + vy * vy);
            d_l2 += w * vh * vh;
        }
    }
    ErrorNorms n;
    n.l2_err = std::sqrt(e_l2);
    n.h1_err = std::sqrt(e_l2 + e_semi);
    n.l2_exact = std::sqrt(x_l2);
    n.h1_exact = std::sqrt(x_l2 + x_semi);
    n.l2_uh = std::sqrt(d_l2);
    n.relative_valid = n.l2_exact > 0.0;
    return n;
}

// Continuum smoothness functional ||u||_{H^2} + k^2 ||u||_{L^2} of the exact
// solution over the full domain, by composite midpoint quadrature on an
// n x n grid. Used to sanity-check conditioning constants, not in any error
// measure, so midpoint accuracy suffices; tests pin its stability under grid
// doubling.
inline double star_norm(const ProblemCase& prob, int n = 512) {
    const Rect& d = prob.domain;
    const double dx = d.width() / n, dy = d.height() / n;
    double l2 = 0, h2 = 0;
    for (int j = 0; j < n; ++j) {
        const double y = d.y0 + (j + 0.5) * dy;
        for (int i = 0; i < n; ++i) {
            const double x = d.x0 + (i + 0.5) * dx;
            const double u = prob.u(x, y);
            const double ux = prob.ux(x, y), uy = prob.uy(x, y);
            const double uxx = prob.uxx(x, y), uxy = prob.uxy(x, y), uyy = prob.uyy(x, y);
            l2 += u * u;
            h2 += u * u + ux * ux + uy * uy + uxx * uxx + 2.0 * uxy * uxy + uyy * uyy;
        }
    }
    const double cell = dx * dy;
    return std::sqrt(h2 * cell) + prob.k * prob.k * std::sqrt(l2 * cell);
}

// Least-squares slope of log(err) against log(h): err ~ C h^rate.
inline double fit_rate(const std::vector<double>& hs, const std::vector<double>& errs) {
    if (hs.size() != errs.size() || hs.size() < 2)
        throw std::invalid_argument("fit_rate: need at least two (h, err) pairs");
    const size_t n = hs.size();
    double mx = 0, my = 0;
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(hs[i] > 0.0) || !(errs[i] > 0.0))
            throw std::invalid_argument("fit_rate: h and err values must be positive");
        lx[i] = std::log(hs[i]);
        ly[i] = std::log(errs[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_rate: h values must not be all equal");
    return sxy / sxx;
}

// One mesh level of a convergence study; column order matches the CSV schema.
struct ErrorReport {
    double h = 0;            // reported mesh size 1/sqrt(n_v)
    double rel_l2_B = 0;
    double rel_h1_B = 0;
    double jump = 0;         // J(u_h, u_h)
    double jump_over_h = 0;
    double z_norm = 0;       // |z|_{H^1_0}
    double l2_omega_err = 0; // absolute L2 error over the data region
    // extras, not part of the CSV schema
    double uh_l2_B = 0;
    double exact_l2_B = 0;
};

struct FittedRates {
    double rel_l2_B = std::numeric_limits<double>::quiet_NaN();
    double rel_h1_B = std::numeric_limits<double>::quiet_NaN();
    double jump = std::numeric_limits<double>::quiet_NaN();
    double jump_over_h = std::numeric_limits<double>::quiet_NaN();
    double z_norm = std::numeric_limits<double>::quiet_NaN();
    double l2_omega_err = std::numeric_limits<double>::quiet_NaN();
    bool valid = false; // set once >= 3 levels are fitted
};

struct ConvergenceReport {
    std::vector<ErrorReport> rows;
    FittedRates rates;
};

inline FittedRates fit_report_rates(const std::vector<ErrorReport>& rows) {
    FittedRates r;
    if (rows.size() < 3) return r;
    std::vector<double> h;
    for (const auto& row : rows) h.push_back(row.h);
    auto fit = [&](auto field) {
        std::vector<double> e;
        for (const auto& row : rows) e.push_back(row.*field);
        return fit_rate(h, e);
    };
    r.rel_l2_B = fit(&ErrorReport::rel_l2_B);
    r.rel_h1_B = fit(&ErrorReport::rel_h1_B);
    r.jump = fit(&ErrorReport::jump);
    r.jump_over_h = fit(&ErrorReport::jump_over_h);
    r.z_norm = fit(&ErrorReport::z_norm);
    r.l2_omega_err = fit(&ErrorReport::l2_omega_err);
    r.valid = true;
    return r;
}

// CSV serialization: fixed header, one row per level, full 17-digit precision
// (reruns must be byte-identical), and a fitted-rates footer. The file is
// written to a temporary sibling and renamed, so readers never observe a
// partial file.
inline std::string csv_string(const ConvergenceReport& rep) {
    std::string out = "h, rel_l2_B, rel_h1_B, jump, jump_over_h, z_norm, l2_omega_err\n";
    char buf[256];
    for (const auto& r : rep.rows) {
        std::snprintf(buf, sizeof buf, "%.17g, %.17g, %.17g, %.17g, %.17g, %.17g, %.17g\n",
                      r.h, r.rel_l2_B, r.rel_h1_B, r.jump, r.jump_over_h, r.z_norm,
                      r.l2_omega_err);
        out += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "# rates: rel_l2_B=%.17g rel_h1_B=%.17g jump=%.17g jump_over_h=%.17g "
                  "z_norm=%.17g l2_omega_err=%.17g\n",
                  rep.rates.rel_l2_B, rep.rates.rel_h1_B, rep.rates.jump,
                  rep.rates.jump_over_h, rep.rates.z_norm, rep.rates.l2_omega_err);
    out += buf;
    return out;
}

inline void write_csv(const ConvergenceReport& rep, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("write_csv: cannot open " + tmp);
        os << csv_string(rep);
    }
    std::filesystem::rename(tmp, path);
}

} // namespace helmuc
