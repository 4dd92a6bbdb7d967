#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "geometry.hpp"
#include "mesh.hpp"
#include "problems.hpp"
#include "solver.hpp"

namespace helmuc {

struct StudyConfig {
    std::string problem = "gaussian";
    std::string geometry = "convex";
    double k = 10.0;
    double n = 12.0;    // vertical frequency of the separable cases
    double eps = 0.2;   // data-strip height of the oscillatory case
    double gamma = 1e-5;
    std::vector<int> levels = {16, 32, 64, 128};
    PerturbLaw perturb = PerturbLaw::none;
    uint64_t seed = 0;
    std::string out; // CSV path, empty = don't write
};

struct StudySetup {
    Geometry geom;
    ProblemCase prob;
};

// Builds and cross-checks geometry and problem. The geometries are tied to
// their domains, so mixing e.g. a strip geometry with a unit-square problem
// is a configuration error, not something to silently rescale.
inline StudySetup validate_config(const StudyConfig& cfg) {
    StudySetup s{make_geometry(cfg.geometry), make_problem(cfg.problem, cfg.k, cfg.n, cfg.eps)};
    const Rect& gd = s.geom.domain;
    const Rect& pd = s.prob.domain;
    if (gd.x0 != pd.x0 || gd.x1 != pd.x1 || gd.y0 != pd.y0 || gd.y1 != pd.y1)
        throw std::invalid_argument("domain mismatch: geometry '" + cfg.geometry +
                                    "' does not live on the domain of problem '" + cfg.problem + "'");
    if (cfg.gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
    if (cfg.levels.empty()) throw std::invalid_argument("need at least one mesh level");
    for (int l : cfg.levels)
        if (l < 2) throw std::invalid_argument("mesh levels must be >= 2");
    return s;
}

// One mesh level: build, assemble, solve, measure. ny = level and nx keeps
// the cells close to square (nx = round(aspect * ny)).
inline ErrorReport run_level(const StudyConfig& cfg, int level) {
    const StudySetup s = validate_config(cfg);
    const Rect& d = s.geom.domain;
    const int ny = level;
    const int nx = std::max(1, static_cast<int>(std::lround(d.width() / d.height() * ny)));
    const Mesh mesh = build_uniform_mesh(d, nx, ny);

    const Operators ops = build_operators(mesh, s.geom.omega);
    const StabilizationParams params{cfg.gamma, cfg.k, mesh.h_geom};

    // a case with feed_source = false is run with no signal at all: the data
    // q = u|_omega vanishes identically and the source is withheld
    const Field zero = [](double, double) { return 0.0; };
    const Field& q = s.prob.feed_source ? s.prob.u : zero;
    const Field& f = s.prob.feed_source ? s.prob.f : zero;
    const Loads loads = make_loads(mesh, ops, q, f, cfg.perturb, cfg.seed);
    const Solution sol = solve(assemble_system(mesh, ops, params, loads.bq, loads.bf));

    const std::vector<int> b_elems = classify_elements(mesh, s.geom.B);
    if (b_elems.empty()) throw std::invalid_argument("target region contains no element barycenter");
    const ErrorNorms nb = error_norms(mesh, b_elems, sol.u, s.prob);
    const ErrorNorms nw = error_norms(mesh, ops.omega_elems, sol.u, s.prob);

    ErrorReport r;
    r.h = mesh.h;
    r.rel_l2_B = nb.rel_l2();
    r.rel_h1_B = nb.rel_h1();
    r.jump = quadratic_form(ops.jump, sol.u);
    r.jump_over_h = r.jump / mesh.h;
    r.z_norm = std::sqrt(quadratic_form(ops.stiffness, sol.z));
    r.l2_omega_err = nw.l2_err;
    r.uh_l2_B = nb.l2_uh;
    r.exact_l2_B = nb.l2_exact;
    return r;
}

inline int worker_cap() {
    if (const char* env = std::getenv("HELMUC_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Levels are independent solves, so they run in parallel (capped by
// HELMUC_THREADS) and the rows are merged in level order afterwards -- the
// report and CSV are identical for any worker count.
inline ConvergenceReport run_convergence_study(const StudyConfig& cfg) {
    validate_config(cfg); // fail fast before spawning workers

    const int n = static_cast<int>(cfg.levels.size());
    std::vector<ErrorReport> rows(n);
    std::vector<std::exception_ptr> errors(n);

    const int workers = std::min(worker_cap(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) rows[i] = run_level(cfg, cfg.levels[i]);
    } else {
        std::atomic<int> next{0};
        auto work = [&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    rows[i] = run_level(cfg, cfg.levels[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
        for (int i = 0; i < n; ++i)
            if (errors[i]) std::rethrow_exception(errors[i]);
    }

    ConvergenceReport rep;
    rep.rows = std::move(rows);
    rep.rates = fit_report_rates(rep.rows);
    if (!cfg.out.empty()) write_csv(rep, cfg.out);
    return rep;
}

inline std::string perturb_to_string(PerturbLaw law) {
    switch (law) {
    case PerturbLaw::none: return "none";
    case PerturbLaw::h: return "h";
    case PerturbLaw::h2: return "h2";
    }
    return "none";
}

// Human-readable study summary; the CSV carries the full-precision record.
inline std::string format_summary(const StudyConfig& cfg, const ConvergenceReport& rep) {
    char buf[512];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "study: problem=%s geometry=%s k=%g n=%g gamma=%g perturb=%s seed=%llu\n",
                  cfg.problem.c_str(), cfg.geometry.c_str(), cfg.k, cfg.n, cfg.gamma,
                  perturb_to_string(cfg.perturb).c_str(),
                  static_cast<unsigned long long>(cfg.seed));
    out += buf;
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const auto& r = rep.rows[i];
        std::snprintf(buf, sizeof buf,
                      "  level ny=%-4d h=%-10.4g rel_l2_B=%-10.4g rel_h1_B=%-10.4g "
                      "jump_over_h=%-10.4g z_norm=%-10.4g\n",
                      cfg.levels[i], r.h, r.rel_l2_B, r.rel_h1_B, r.jump_over_h, r.z_norm);
        out += buf;
    }
    if (rep.rates.valid) {
        std::snprintf(buf, sizeof buf,
                      "fitted rates over %zu levels:\n"
                      "  rel_l2_B    = %.4f\n"
                      "  rel_h1_B    = %.4f\n"
                      "  jump_over_h = %.4f\n"
                      "  z_norm      = %.4f\n",
                      rep.rows.size(), rep.rates.rel_l2_B, rep.rates.rel_h1_B,
                      rep.rates.jump_over_h, rep.rates.z_norm);
        out += buf;
    } else {
        out += "fitted rates: not reported (need at least 3 levels)\n";
    }
    if (cfg.problem == "wkb") {
        const auto& last = rep.rows.back();
        std::snprintf(buf, sizeof buf,
                      "no-signal continuation: q = 0 on omega and the source is withheld\n"
                      "  ||u_h||_L2(B)       = %.6g\n"
                      "  hidden ||u||_L2(B)  = %.6g\n",
                      last.uh_l2_B, last.exact_l2_B);
        out += buf;
    }
    return out;
}

} // namespace helmuc
