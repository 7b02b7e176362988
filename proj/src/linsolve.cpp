#include "obe/linsolve.hpp"

#include <cmath>
#include <numeric>
#include <utility>

namespace obe {

double DenseMatrix::inf_norm() const {
    double norm = 0.0;
    for (int i = 0; i < n_; ++i) {
        double row = 0.0;
        for (int j = 0; j < n_; ++j)
            row += std::abs((*this)(i, j));
        norm = std::max(norm, row);
    }
    return norm;
}

std::vector<cplx> lu_solve(DenseMatrix A, std::vector<cplx> b) {
    const int n = A.size();
    if (static_cast<int>(b.size()) != n)
        throw std::invalid_argument("lu_solve: rhs length does not match matrix");

    const double norm_a = A.inf_norm();
    if (!std::isfinite(norm_a))
        throw std::invalid_argument("lu_solve: matrix has non-finite entries");
    const double pivot_floor = 1e-14 * norm_a;

    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(A(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double m = std::abs(A(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best <= pivot_floor)
            throw SingularMatrixError(
                k, "lu_solve: matrix singular to working precision at "
                   "elimination step " + std::to_string(k));
        if (piv != k) {
            for (int j = 0; j < n; ++j)
                std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        const cplx inv_pivot = 1.0 / A(k, k);
        for (int i = k + 1; i < n; ++i) {
            const cplx factor = A(i, k) * inv_pivot;
            if (factor == cplx{})
                continue;
            A(i, k) = factor;
            for (int j = k + 1; j < n; ++j)
                A(i, j) -= factor * A(k, j);
            b[i] -= factor * b[k];
        }
    }

    std::vector<cplx> x(b);
    for (int i = n - 1; i >= 0; --i) {
        cplx s = x[i];
        for (int j = i + 1; j < n; ++j)
            s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

double residual_norm(const DenseMatrix& A, const std::vector<cplx>& x,
                     const std::vector<cplx>& b) {
    const int n = A.size();
    if (static_cast<int>(x.size()) != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("residual_norm: shape mismatch");
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        cplx r = -b[i];
        for (int j = 0; j < n; ++j)
            r += A(i, j) * x[j];
        norm = std::max(norm, std::abs(r));
    }
    return norm;
}

} // namespace obe
