#ifndef LNSIR_NUMERICS_HPP
#define LNSIR_NUMERICS_HPP

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lnsir::numerics {

/// Gauss-Hermite rule for integrals against exp(-x^2).
/// Weights sum to sqrt(pi); nodes are symmetric about zero.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Computes the order-N Gauss-Hermite rule via Golub-Welsch
/// (eigen-decomposition of the symmetric tridiagonal Jacobi matrix).
/// Valid for 1 <= order <= 64.
QuadratureRule gauss_hermite(int order);

/// psi(x) for x > 0; recurrence shift to x >= 6 plus asymptotic series.
double digamma(double x);

/// psi'(x) for x > 0.
double trigamma(double x);

/// Dense square matrix, row-major. Small dimensions only (K <= a few tens).
class Matrix {
public:
    Matrix() = default;
    Matrix(int n, double fill = 0.0) : n_(n), a_(static_cast<size_t>(n) * n, fill) {}

    int dim() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    static Matrix identity(int n);
    bool is_symmetric(double tol = 1e-12) const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

struct CholeskyError : std::runtime_error {
    CholeskyError(std::string msg, int minor)
        : std::runtime_error(std::move(msg)), failing_minor(minor) {}
    int failing_minor;  // 1-based index of the first non-positive leading minor
};

/// Lower-triangular factor with C_sq * C_sq^T = C.
struct LowerTriangularFactor {
    Matrix factor;  // entries above the diagonal are zero

    int dim() const { return factor.dim(); }
    double operator()(int i, int j) const { return factor(i, j); }
};

/// Cholesky factorization of a symmetric positive-definite matrix.
/// Throws CholeskyError naming the failing leading minor otherwise.
LowerTriangularFactor cholesky(const Matrix& c);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Inverse standard normal CDF on (0,1); rational approximation plus one
/// Newton refinement against the erfc-based CDF. Absolute error < 1e-9.
double normal_cdf_inv(double alpha);

struct SolveResult {
    double u = 0.0;
    double v = 0.0;
    std::array<double, 2> residual{0.0, 0.0};
    int iterations = 0;
};

struct SolveError : std::runtime_error {
    SolveError(std::string msg, SolveResult best_it)
        : std::runtime_error(std::move(msg)), best(best_it) {}
    SolveResult best;
};

using Residual2d = std::function<std::array<double, 2>(double, double)>;

/// Damped Newton iteration on a 2x2 nonlinear system with a
/// finite-difference Jacobian. Stops when the max-norm residual
/// drops below tol; throws SolveError (carrying the best iterate)
/// on non-convergence or a singular Jacobian.
SolveResult solve_2d(const Residual2d& f, double u0, double v0, double tol,
                     int max_iterations = 100);

}  // namespace lnsir::numerics

#endif
