#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include <helmuc/assembly.hpp>
#include <helmuc/problems.hpp>

using namespace helmuc;

TEST_CASE("local stiffness and mass on the reference triangle") {
    const Vec2 p0{0, 0}, p1{1, 0}, p2{0, 1};

    const Eigen::Matrix3d k = local_stiffness(p0, p1, p2);
    Eigen::Matrix3d k_ref;
    k_ref << 1.0, -0.5, -0.5, -0.5, 0.5, 0.0, -0.5, 0.0, 0.5;
    CHECK((k - k_ref).cwiseAbs().maxCoeff() < 1e-14);

    const Eigen::Matrix3d m = local_mass(p0, p1, p2);
    Eigen::Matrix3d m_ref;
    m_ref << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    m_ref /= 24.0;
    CHECK((m - m_ref).cwiseAbs().maxCoeff() < 1e-14);

    // translation invariance of the stiffness, scaling of the mass
    const Vec2 q0{2, 3}, q1{3, 3}, q2{2, 4};
    CHECK((local_stiffness(q0, q1, q2) - k_ref).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("local load of f = x on the reference triangle") {
    const Vec2 p0{0, 0}, p1{1, 0}, p2{0, 1};
    const Eigen::Vector3d b =
        local_load(p0, p1, p2, [](double x, double) { return x; }, triangle_rule_degree4());
    CHECK(b[0] == doctest::Approx(1.0 / 24.0).epsilon(1e-13));
    CHECK(b[1] == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
    CHECK(b[2] == doctest::Approx(1.0 / 24.0).epsilon(1e-13));
}

TEST_CASE("global matrices: partition of unity and exact symmetry") {
    const Mesh m = build_uniform_mesh(Rect{0, 1, 0, 1}, 5, 4);
    const SpMat mass = assemble_mass(m);
    const SpMat stiff = assemble_stiffness(m);
    const SpMat jump = assemble_jump(m);

    const Vec ones = Vec::Ones(m.n_vertices());
    CHECK(ones.dot(mass * ones) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK((stiff * ones).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(ones.dot(jump * ones) < 1e-13);

    CHECK(max_asymmetry(mass) == 0.0);
    CHECK(max_asymmetry(stiff) == 0.0);
    CHECK(max_asymmetry(jump) == 0.0);

    // restricting the mass to all elements reproduces the full mass exactly
    std::vector<int> all(m.n_triangles());
    for (int t = 0; t < m.n_triangles(); ++t) all[t] = t;
    const SpMat diff = mass - assemble_mass_elems(m, all);
    double maxdiff = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SpMat::InnerIterator it(diff, k); it; ++it)
            maxdiff = std::max(maxdiff, std::abs(it.value()));
    CHECK(maxdiff == 0.0);
}

TEST_CASE("jump penalty: two-triangle oracle") {
    // one square cell, SW-NE diagonal of length sqrt(2): the hat at vertex 1
    // has gradient (1,-1) on the lower triangle and vanishes on the upper, so
    // [n.grad u] = sqrt(2) and J(u,u) = |F|^2 * 2 = 4
    const Mesh m = build_uniform_mesh(Rect{0, 1, 0, 1}, 1, 1);
    const SpMat j = assemble_jump(m);
    Vec u = Vec::Zero(4);
    u[1] = 1.0;
    CHECK(u.dot(j * u) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("jump penalty vanishes on globally affine functions") {
    const Mesh m = build_uniform_mesh(Rect{0, 1, 0, 1}, 4, 4);
    const SpMat j = assemble_jump(m);
    const Vec u = interpolate(m, [](double x, double y) { return 2.0 * x + 3.0 * y - 1.0; });
    CHECK(std::abs(u.dot(j * u)) < 1e-15);
}

TEST_CASE("jump of an interpolated smooth function decays ~ h^2") {
    const ProblemCase prob = gaussian_bump(10.0);
    std::vector<double> hs, js;
    for (int n : {8, 16, 32, 64}) {
        const Mesh m = build_uniform_mesh(prob.domain, n, n);
        const SpMat j = assemble_jump(m);
        const Vec w = l2_project(m, prob.u, triangle_rule_degree4());
        hs.push_back(m.h);
        js.push_back(w.dot(j * w));
    }
    // J is quadratic with an extra h weight: J(Pi_h u) ~ h^2 up to constants
    double rate = 0.0;
    {
        double mx = 0, my = 0;
        for (size_t i = 0; i < hs.size(); ++i) mx += std::log(hs[i]), my += std::log(js[i]);
        mx /= hs.size();
        my /= hs.size();
        double sxx = 0, sxy = 0;
        for (size_t i = 0; i < hs.size(); ++i) {
            sxx += (std::log(hs[i]) - mx) * (std::log(hs[i]) - mx);
            sxy += (std::log(hs[i]) - mx) * (std::log(js[i]) - my);
        }
        rate = sxy / sxx;
    }
    CHECK(rate >= 1.8);
}

TEST_CASE("l2 projection reproduces P1 functions") {
    const Mesh m = build_uniform_mesh(Rect{0, 1, 0, 1}, 4, 4);
    const Vec w =
        l2_project(m, [](double x, double y) { return 2.0 * x + 3.0 * y - 1.0; },
                   triangle_rule_degree4());
    const Vec u = interpolate(m, [](double x, double y) { return 2.0 * x + 3.0 * y - 1.0; });
    CHECK((w - u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("discrete Helmholtz pairing") {
    const Mesh m = build_uniform_mesh(Rect{0, 1, 0, 1}, 8, 8);

    // constants are in the kernel of the k=0 pairing
    const Vec ones = Vec::Ones(m.n_vertices());
    const Vec w = interpolate(m, [](double x, double y) { return std::sin(3 * x) * y; });
    CHECK(std::abs(apply_G(m, 0.0, ones, w)) < 1e-13);

    // u = w = x, k = 1: grad part is exactly 1, mass part is the exact
    // integral of x^2 (P1 interpolation of x is x itself); the oracle for the
    // latter is an independent dense midpoint quadrature
    const Vec ux = interpolate(m, [](double x, double) { return x; });
    const SpMat mass = assemble_mass(m);
    const double mass_part = ux.dot(mass * ux);
    double oracle = 0.0;
    const int ng = 1024;
    for (int j = 0; j < ng; ++j)
        for (int i = 0; i < ng; ++i) {
            const double x = (i + 0.5) / ng;
            oracle += x * x;
        }
    oracle /= static_cast<double>(ng) * ng;
    CHECK(std::abs(mass_part - oracle) < 1e-6);
    CHECK(apply_G(m, 1.0, ux, ux) == doctest::Approx(1.0 - mass_part).epsilon(1e-12));
    CHECK(apply_G(m, 1.0, ux, ux) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("matrix dump format") {
    const Mesh m = build_uniform_mesh(Rect{0, 1, 0, 1}, 2, 2);
    const SpMat mass = assemble_mass(m);
    std::ostringstream os;
    dump_matrix(mass, os);
    std::istringstream is(os.str());
    int rows, cols;
    long long nnz;
    is >> rows >> cols >> nnz;
    CHECK(rows == 9);
    CHECK(cols == 9);
    CHECK(nnz == mass.nonZeros());
    int count = 0;
    int r, c;
    double v;
    while (is >> r >> c >> v) ++count;
    CHECK(count == nnz);
}
