#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace obe {

using cplx = std::complex<double>;

struct SingularMatrixError : std::runtime_error {
    int step; // elimination step at which the pivot vanished
    SingularMatrixError(int step_, const std::string& msg)
        : std::runtime_error(msg), step(step_) {}
};

// Dense square complex matrix, row-major.
class DenseMatrix {
  public:
    explicit DenseMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
        if (n < 1)
            throw std::invalid_argument("DenseMatrix: dimension must be >= 1");
    }

    int size() const { return n_; }
    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const {
        return a_[static_cast<size_t>(i) * n_ + j];
    }

    // Induced infinity norm (max absolute row sum).
    double inf_norm() const;

  private:
    int n_;
    std::vector<cplx> a_;
};

// Solves A x = b by LU factorization with partial (row) pivoting. The
// factorization works on a local copy; no iterative refinement. Throws
// SingularMatrixError if a pivot falls below 1e-14 * ||A||_inf.
std::vector<cplx> lu_solve(DenseMatrix A, std::vector<cplx> b);

// ||A x - b||_inf
double residual_norm(const DenseMatrix& A, const std::vector<cplx>& x,
                     const std::vector<cplx>& b);

} // namespace obe
