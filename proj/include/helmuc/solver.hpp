#pragma once

#include <Eigen/SparseLU>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "assembly.hpp"
#include "geometry.hpp"
#include "mesh.hpp"
#include "problems.hpp"
#include "quadrature.hpp"
#include "sparse.hpp"

namespace helmuc {

// Stabilization parameters of the primal-dual system. h is the geometric
// element size (max diameter), which scales the k^4 zero-order penalty.
struct StabilizationParams {
    double gamma = 1e-5;
    double k = 0.0;
    double h = 0.0;
};

// The matrices every run needs, assembled once per mesh/region pair.
struct Operators {
    SpMat stiffness;   // (grad u, grad v) on all of Omega
    SpMat mass;        // (u, v) on all of Omega
    SpMat mass_omega;  // (u, v) restricted to the data region
    SpMat jump;        // gradient-jump penalty over interior faces
    std::vector<int> omega_elems;
};

inline Operators build_operators(const Mesh& m, const Region& omega) {
    Operators ops;
    ops.omega_elems = classify_elements(m, omega);
    if (ops.omega_elems.empty())
        throw std::invalid_argument("build_operators: data region contains no element barycenter");
    ops.stiffness = assemble_stiffness(m);
    ops.mass = assemble_mass(m);
    ops.mass_omega = assemble_mass_elems(m, ops.omega_elems);
    ops.jump = assemble_jump(m);
    return ops;
}

// Saddle-point system in the primal variable u (all nodes) and the dual
// variable z (interior nodes):
//   [ M_omega + gamma J + gamma h^2 k^4 M    G_i^T ] [u]   [b_q]
//   [ G_i                                   -A_ii  ] [z] = [b_f]
// where G = K - k^2 M is the discrete Helmholtz operator and the subscript i
// restricts to interior rows/columns. The dual block uses the unscaled H^1_0
// inner product.
struct LinearSystem {
    SpMat A;
    Vec b;
    int nv = 0, ni = 0;
    std::vector<int> interior; // dual dof -> vertex id
};

struct Solution {
    Vec u, z;        // nodal values, z extended by zero on the boundary
    double residual = 0.0;
};

namespace detail {
inline double inf_norm(const SpMat& a) {
    Vec row_sums = Vec::Zero(a.rows());
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) row_sums[it.row()] += std::abs(it.value());
    return row_sums.size() ? row_sums.maxCoeff() : 0.0;
}
} // namespace detail

inline LinearSystem assemble_system(const Mesh& m, const Operators& ops,
                                    const StabilizationParams& params, const Vec& bq,
                                    const Vec& bf) {
    LinearSystem sys;
    sys.nv = m.n_vertices();
    for (int v = 0; v < sys.nv; ++v)
        if (!m.boundary[v]) sys.interior.push_back(v);
    sys.ni = static_cast<int>(sys.interior.size());
    if (sys.ni == 0) throw std::invalid_argument("assemble_system: mesh has no interior vertex");

    std::vector<int> dual_index(sys.nv, -1);
    for (int i = 0; i < sys.ni; ++i) dual_index[sys.interior[i]] = i;

    const double k2 = params.k * params.k;
    const double zero_order = params.gamma * params.h * params.h * k2 * k2;
    // entry-wise sums of exactly symmetric matrices stay exactly symmetric
    const SpMat primal = ops.mass_omega + params.gamma * ops.jump + zero_order * ops.mass;
    const SpMat helm = ops.stiffness - k2 * ops.mass;

    const int n = sys.nv + sys.ni;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(primal.nonZeros() + 3 * helm.nonZeros());
    for (int k = 0; k < primal.outerSize(); ++k)
        for (SpMat::InnerIterator it(primal, k); it; ++it)
            trip.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int k = 0; k < helm.outerSize(); ++k)
        for (SpMat::InnerIterator it(helm, k); it; ++it) {
            const int r = static_cast<int>(it.row());
            const int c = static_cast<int>(it.col());
            if (dual_index[r] >= 0) {
                // coupling blocks share the same stored value -> exact symmetry
                trip.emplace_back(sys.nv + dual_index[r], c, it.value());
                trip.emplace_back(c, sys.nv + dual_index[r], it.value());
            }
        }
    for (int k = 0; k < ops.stiffness.outerSize(); ++k)
        for (SpMat::InnerIterator it(ops.stiffness, k); it; ++it) {
            const int r = dual_index[it.row()];
            const int c = dual_index[it.col()];
            if (r >= 0 && c >= 0) trip.emplace_back(sys.nv + r, sys.nv + c, -it.value());
        }

    sys.A.resize(n, n);
    sys.A.setFromTriplets(trip.begin(), trip.end());

    sys.b = Vec::Zero(n);
    sys.b.head(sys.nv) = bq;
    for (int i = 0; i < sys.ni; ++i) sys.b[sys.nv + i] = bf[sys.interior[i]];
    return sys;
}

// Loads for the right-hand side. The unperturbed path integrates the analytic
// data/source against the hat functions with the degree-4 rule. Perturbed runs
// instead sample at the nodes, pollute the samples with uniform noise of the
// requested amplitude, and assemble through the mass matrices, so the noise is
// a genuine P1 function of the mesh.
struct Loads {
    Vec bq, bf;
};

inline Loads make_loads(const Mesh& m, const Operators& ops, const Field& q, const Field& f,
                        PerturbLaw law = PerturbLaw::none, uint64_t seed = 0) {
    Loads out;
    if (law == PerturbLaw::none) {
        const auto& rule = triangle_rule_degree4();
        out.bq = assemble_load(m, ops.omega_elems, q, rule);
        out.bf = assemble_load_all(m, f, rule);
    } else {
        const double amp = perturb_amplitude(law, m.h);
        const Vec qn = perturb_nodal(interpolate(m, q), amp, seed, 0);
        const Vec fn = perturb_nodal(interpolate(m, f), amp, seed, 1);
        out.bq = ops.mass_omega * qn;
        out.bf = ops.mass * fn;
    }
    return out;
}

// Direct solve with pivoting; the system is symmetric indefinite. The residual
// contract is checked explicitly and reported with norms when violated, since
// a silent near-singular factorization would poison every study downstream.
inline Solution solve(const LinearSystem& sys) {
    Eigen::SparseLU<SpMat> lu;
    lu.compute(sys.A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve: factorization failed (matrix singular to working precision)");
    const Vec x = lu.solve(sys.b);

    const double res = (sys.A * x - sys.b).norm();
    const double bound = 1e-9 * (sys.b.norm() + detail::inf_norm(sys.A) * x.norm());
    if (!(res <= bound) && sys.b.norm() > 0.0) {
        char msg[256];
        std::snprintf(msg, sizeof msg,
                      "solve: residual %.3e exceeds bound %.3e (|b| = %.3e, |x| = %.3e); "
                      "system is likely ill-conditioned beyond working precision",
                      res, bound, sys.b.norm(), x.norm());
        throw std::runtime_error(msg);
    }

    Solution sol;
    sol.residual = res;
    sol.u = x.head(sys.nv);
    sol.z = Vec::Zero(sys.nv);
    for (int i = 0; i < sys.ni; ++i) sol.z[sys.interior[i]] = x[sys.nv + i];
    return sol;
}

// Convenience entry point: classify, assemble, load, solve.
inline Solution solve_uc(const Mesh& m, const Region& omega, const StabilizationParams& params,
                         const Field& q, const Field& f, PerturbLaw law = PerturbLaw::none,
                         uint64_t seed = 0) {
    const Operators ops = build_operators(m, omega);
    const Loads loads = make_loads(m, ops, q, f, law, seed);
    return solve(assemble_system(m, ops, params, loads.bq, loads.bf));
}

} // namespace helmuc
