#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cstdio>
#include <ostream>
#include <vector>

namespace helmuc {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

// Accumulates a symmetric bilinear form in canonical (upper-triangle) storage
// and mirrors it once at the end, so A(i,j) and A(j,i) are the same double --
// exact symmetry, not symmetry up to roundoff. Contributions must be fed once
// per unordered index pair.
class SymmetricBuilder {
  public:
    explicit SymmetricBuilder(int n) : n_(n) { triplets_.reserve(64); }

    void add(int i, int j, double v) {
        if (i <= j)
            triplets_.emplace_back(i, j, v);
        else
            triplets_.emplace_back(j, i, v);
    }

    // Feed a full symmetric local matrix; only the upper half is stored.
    template <class Matrix>
    void add_local(const std::array<int, 3>& dofs, const Matrix& local) {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                if (dofs[r] <= dofs[c]) triplets_.emplace_back(dofs[r], dofs[c], local(r, c));
    }

    SpMat build() const {
        SpMat upper(n_, n_);
        upper.setFromTriplets(triplets_.begin(), triplets_.end());
        SpMat full(n_, n_);
        full = upper.selfadjointView<Eigen::Upper>();
        return full;
    }

  private:
    int n_;
    std::vector<Eigen::Triplet<double>> triplets_;
};

inline double max_asymmetry(const SpMat& a) {
    SpMat d = a - SpMat(a.transpose());
    double m = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

inline double quadratic_form(const SpMat& a, const Vec& u) { return u.dot(a * u); }
inline double bilinear_form(const SpMat& a, const Vec& u, const Vec& v) { return u.dot(a * v); }

// Debug dump: "rows cols nnz" then one "row col value" line per entry in
// row-major order, full precision.
inline void dump_matrix(const SpMat& a, std::ostream& os) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(a.nonZeros());
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it)
            entries.emplace_back(it.row(), it.col(), it.value());
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) {
                  return x.row() != y.row() ? x.row() < y.row() : x.col() < y.col();
              });
    os << a.rows() << ' ' << a.cols() << ' ' << entries.size() << '\n';
    char buf[96];
    for (const auto& e : entries) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", static_cast<int>(e.row()),
                      static_cast<int>(e.col()), e.value());
        os << buf;
    }
}

} // namespace helmuc
