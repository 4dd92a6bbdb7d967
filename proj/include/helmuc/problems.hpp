#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "geometry.hpp"
#include "sparse.hpp"

namespace helmuc {

using Field = std::function<double(double, double)>;

// An exact Helmholtz solution (Delta u + k^2 u = -f) with analytic derivatives
// through second order, used both to drive the benchmarks (data q = u|_omega,
// source f) and to measure errors exactly at quadrature points.
struct ProblemCase {
    std::string name;
    Rect domain;
    double k = 0.0;
    double n = 0.0;          // vertical frequency of the separable cases, 0 if unused
    bool feed_source = true; // false: the benchmark run feeds zero data and zero source
    Field u, ux, uy, uxx, uxy, uyy, lap, f;
};

// Gaussian bump centered on the top edge at (0.5, 1), anisotropic widths
// (0.1, sqrt(0.1)). Not a homogeneous solution, so f = -Delta u - k^2 u.
inline ProblemCase gaussian_bump(double k) {
    ProblemCase p;
    p.name = "gaussian";
    p.domain = Rect{0.0, 1.0, 0.0, 1.0};
    p.k = k;
    auto val = [](double x, double y) {
        const double X = x - 0.5, Y = y - 1.0;
        return std::exp(-X * X / 0.02 - Y * Y / 0.2);
    };
    p.u = val;
    p.ux = [val](double x, double y) { return -100.0 * (x - 0.5) * val(x, y); };
    p.uy = [val](double x, double y) { return -10.0 * (y - 1.0) * val(x, y); };
    p.uxx = [val](double x, double y) {
        const double X = x - 0.5;
        return (-100.0 + 1.0e4 * X * X) * val(x, y);
    };
    p.uyy = [val](double x, double y) {
        const double Y = y - 1.0;
        return (-10.0 + 100.0 * Y * Y) * val(x, y);
    };
    p.uxy = [val](double x, double y) { return 1000.0 * (x - 0.5) * (y - 1.0) * val(x, y); };
    p.lap = [p](double x, double y) { return p.uxx(x, y) + p.uyy(x, y); };
    p.f = [p, k](double x, double y) { return -p.lap(x, y) - k * k * p.u(x, y); };
    return p;
}

// Separable homogeneous solutions sin(nx) * v(y) on the (0,pi)x(0,1) strip,
// where v solves v'' = (n^2 - k^2) v. Normalized so that dv/dy(0) = 1, which
// keeps the family continuous across the branch switch at n = k:
//   n > k: v = sinh(mu y)/mu,   n < k: v = sin(mu y)/mu,   n = k: v = y.
// All three satisfy the homogeneous equation exactly, so f = 0.
inline ProblemCase hadamard(double k, double n) {
    if (n <= 0.0) throw std::invalid_argument("hadamard: frequency n must be positive");
    ProblemCase p;
    p.name = "hadamard";
    p.domain = Rect{0.0, std::numbers::pi, 0.0, 1.0};
    p.k = k;
    p.n = n;
    p.f = [](double, double) { return 0.0; };

    const double disc = n * n - k * k;
    if (std::abs(disc) < 1e-12) {
        p.u = [n](double x, double y) { return std::sin(n * x) * y; };
        p.ux = [n](double x, double y) { return n * std::cos(n * x) * y; };
        p.uy = [n](double x, double) { return std::sin(n * x); };
        p.uxx = [n](double x, double y) { return -n * n * std::sin(n * x) * y; };
        p.uyy = [](double, double) { return 0.0; };
        p.uxy = [n](double x, double) { return n * std::cos(n * x); };
    } else if (disc > 0.0) {
        const double mu = std::sqrt(disc);
        p.u = [n, mu](double x, double y) { return std::sin(n * x) * std::sinh(mu * y) / mu; };
        p.ux = [n, mu](double x, double y) { return n * std::cos(n * x) * std::sinh(mu * y) / mu; };
        p.uy = [n, mu](double x, double y) { return std::sin(n * x) * std::cosh(mu * y); };
        p.uxx = [n, mu](double x, double y) {
            return -n * n * std::sin(n * x) * std::sinh(mu * y) / mu;
        };
        p.uyy = [n, mu](double x, double y) { return mu * std::sin(n * x) * std::sinh(mu * y); };
        p.uxy = [n, mu](double x, double y) { return n * std::cos(n * x) * std::cosh(mu * y); };
    } else {
        const double mu = std::sqrt(-disc);
        p.u = [n, mu](double x, double y) { return std::sin(n * x) * std::sin(mu * y) / mu; };
        p.ux = [n, mu](double x, double y) { return n * std::cos(n * x) * std::sin(mu * y) / mu; };
        p.uy = [n, mu](double x, double y) { return std::sin(n * x) * std::cos(mu * y); };
        p.uxx = [n, mu](double x, double y) {
            return -n * n * std::sin(n * x) * std::sin(mu * y) / mu;
        };
        p.uyy = [n, mu](double x, double y) { return -mu * std::sin(n * x) * std::sin(mu * y); };
        p.uxy = [n, mu](double x, double y) { return n * std::cos(n * x) * std::cos(mu * y); };
    }
    p.lap = [p](double x, double y) { return p.uxx(x, y) + p.uyy(x, y); };
    return p;
}

namespace detail {
// Smooth compactly supported bump profile a0 and its y-derivatives:
// a0(y) = exp(-1/(1-t^2)) for |t|<1 with t = (2y-1)/(1-2*eps), else 0.
struct WkbProfile {
    double c; // dt/dy
    explicit WkbProfile(double eps) : c(2.0 / (1.0 - 2.0 * eps)) {}
    double t(double y) const { return (2.0 * y - 1.0) * 0.5 * c; }
    double a(double y) const {
        const double s = t(y);
        if (std::abs(s) >= 1.0) return 0.0;
        return std::exp(-1.0 / (1.0 - s * s));
    }
    double da(double y) const {
        const double s = t(y);
        if (std::abs(s) >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        return c * a(y) * (-2.0 * s / (q * q));
    }
    double dda(double y) const {
        const double s = t(y);
        if (std::abs(s) >= 1.0) return 0.0;
        const double q = 1.0 - s * s;
        return c * c * a(y) * (6.0 * s * s * s * s - 2.0) / (q * q * q * q);
    }
};
} // namespace detail

// Oscillatory solution u = cos(kx) a0(y) whose bump a0 is supported in the
// horizontal band (eps, 1-eps), i.e. strictly outside the data strip
// omega = (0,1)x(0,eps). The data q = u|_omega vanishes identically, so the
// benchmark run feeds no signal at all (q = 0 and f = 0); the analytic f here
// exists for the residual checks only.
inline ProblemCase wkb_leading(double k, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("wkb_leading: need 0 < eps < 1/2");
    ProblemCase p;
    p.name = "wkb";
    p.domain = Rect{0.0, 1.0, 0.0, 1.0};
    p.k = k;
    p.feed_source = false;
    const detail::WkbProfile prof(eps);
    p.u = [prof, k](double x, double y) { return std::cos(k * x) * prof.a(y); };
    p.ux = [prof, k](double x, double y) { return -k * std::sin(k * x) * prof.a(y); };
    p.uy = [prof, k](double x, double y) { return std::cos(k * x) * prof.da(y); };
    p.uxx = [prof, k](double x, double y) { return -k * k * std::cos(k * x) * prof.a(y); };
    p.uyy = [prof, k](double x, double y) { return std::cos(k * x) * prof.dda(y); };
    p.uxy = [prof, k](double x, double y) { return -k * std::sin(k * x) * prof.da(y); };
    p.lap = [p](double x, double y) { return p.uxx(x, y) + p.uyy(x, y); };
    p.f = [prof, k](double x, double y) { return -std::cos(k * x) * prof.dda(y); };
    return p;
}

inline ProblemCase make_problem(std::string_view name, double k, double n, double eps = 0.2) {
    if (name == "gaussian") return gaussian_bump(k);
    if (name == "hadamard") return hadamard(k, n);
    if (name == "wkb") return wkb_leading(k, eps);
    throw std::invalid_argument("unknown problem: " + std::string(name));
}

// ===== data perturbation =====

enum class PerturbLaw { none, h, h2 };

inline PerturbLaw perturb_law_from_string(std::string_view s) {
    if (s == "none") return PerturbLaw::none;
    if (s == "h") return PerturbLaw::h;
    if (s == "h2") return PerturbLaw::h2;
    throw std::invalid_argument("unknown perturbation law: " + std::string(s));
}

inline double perturb_amplitude(PerturbLaw law, double mesh_size) {
    switch (law) {
    case PerturbLaw::none: return 0.0;
    case PerturbLaw::h: return mesh_size;
    case PerturbLaw::h2: return mesh_size * mesh_size;
    }
    return 0.0;
}

namespace detail {
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}
} // namespace detail

// Deterministic uniform noise in [-1, 1), keyed by (seed, stream, node) so
// perturbed runs are reproducible independent of evaluation order or thread
// count. Streams separate the data noise from the source noise.
inline double node_noise(uint64_t seed, uint64_t stream, int node) {
    const uint64_t key =
        detail::splitmix64(seed ^ 0xA0761D6478BD642Full) + (static_cast<uint64_t>(node) << 1 | stream);
    const uint64_t bits = detail::splitmix64(key);
    const double u01 = static_cast<double>(bits >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
}

inline Vec perturb_nodal(Vec values, double amplitude, uint64_t seed, uint64_t stream) {
    if (amplitude == 0.0) return values;
    for (int i = 0; i < values.size(); ++i) values[i] += amplitude * node_noise(seed, stream, i);
    return values;
}

} // namespace helmuc
