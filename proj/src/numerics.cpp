#include "lnsir/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lnsir::numerics {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

// Implicit-shift QL iteration on a symmetric tridiagonal matrix, tracking
// only the first row of the accumulated eigenvector matrix (all that
// Golub-Welsch needs for the weights).
void tridiag_eigen_first_row(std::vector<double>& d, std::vector<double>& e,
                             std::vector<double>& z) {
    const int n = static_cast<int>(d.size());
    e.push_back(0.0);
    z.assign(n, 0.0);
    z[0] = 1.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
            }
            if (m != l) {
                if (++iter > 50)
                    throw std::runtime_error("tridiagonal eigensolver failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    // rotate the tracked first-row entries
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

QuadratureRule gauss_hermite(int order) {
    if (order < 1 || order > 64)
        throw std::invalid_argument("gauss_hermite: order must be in [1, 64]");

    // Jacobi matrix for physicists' Hermite: zero diagonal,
    // off-diagonal beta_i = sqrt(i/2).
    std::vector<double> diag(order, 0.0);
    std::vector<double> off(order > 1 ? order - 1 : 0);
    for (int i = 1; i < order; ++i) off[i - 1] = std::sqrt(i / 2.0);

    std::vector<double> first_row;
    tridiag_eigen_first_row(diag, off, first_row);

    std::vector<int> idx(order);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return diag[a] < diag[b]; });

    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int j = 0; j < order; ++j) {
        rule.nodes[j] = diag[idx[j]];
        rule.weights[j] = kSqrtPi * first_row[idx[j]] * first_row[idx[j]];
    }
    // enforce exact symmetry of the node set
    for (int j = 0; j < order / 2; ++j) {
        const double a = 0.5 * (rule.nodes[order - 1 - j] - rule.nodes[j]);
        rule.nodes[j] = -a;
        rule.nodes[order - 1 - j] = a;
        const double w = 0.5 * (rule.weights[j] + rule.weights[order - 1 - j]);
        rule.weights[j] = w;
        rule.weights[order - 1 - j] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: x must be positive");
    double result = 0.0;
    while (x < 6.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // ln x - 1/(2x) - sum B_2n / (2n x^2n)
    double series = -1.0 / 12.0;
    double p = inv2;
    double acc = series * p;
    p *= inv2;
    acc += (1.0 / 120.0) * p;
    p *= inv2;
    acc += (-1.0 / 252.0) * p;
    p *= inv2;
    acc += (1.0 / 240.0) * p;
    p *= inv2;
    acc += (-1.0 / 132.0) * p;
    p *= inv2;
    acc += (691.0 / 32760.0) * p;
    p *= inv2;
    acc += (-1.0 / 12.0) * p;
    return result + std::log(x) - 0.5 * inv + acc;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("trigamma: x must be positive");
    double result = 0.0;
    while (x < 6.0) {
        result += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // 1/x + 1/(2x^2) + sum B_2n / x^(2n+1)
    double acc = 0.0;
    double p = inv * inv2;
    acc += (1.0 / 6.0) * p;
    p *= inv2;
    acc += (-1.0 / 30.0) * p;
    p *= inv2;
    acc += (1.0 / 42.0) * p;
    p *= inv2;
    acc += (-1.0 / 30.0) * p;
    p *= inv2;
    acc += (5.0 / 66.0) * p;
    p *= inv2;
    acc += (-691.0 / 2730.0) * p;
    p *= inv2;
    acc += (7.0 / 6.0) * p;
    return result + inv + 0.5 * inv2 + acc;
}

Matrix Matrix::identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::is_symmetric(double tol) const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
}

LowerTriangularFactor cholesky(const Matrix& c) {
    if (!c.is_symmetric())
        throw std::invalid_argument("cholesky: matrix is not symmetric");
    const int n = c.dim();
    Matrix l(n);
    for (int j = 0; j < n; ++j) {
        double diag = c(j, j);
        for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0))
            throw CholeskyError(
                "cholesky: matrix is not positive definite (leading minor " +
                    std::to_string(j + 1) + " is non-positive)",
                j + 1);
        l(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double s = c(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return LowerTriangularFactor{std::move(l)};
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_cdf_inv(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("normal_cdf_inv: alpha must be in (0,1)");

    // Acklam's rational approximation, then one Newton step on Phi.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double x;
    if (alpha < p_low) {
        const double q = std::sqrt(-2.0 * std::log(alpha));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (alpha <= 1.0 - p_low) {
        const double q = alpha - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - alpha));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double err = normal_cdf(x) - alpha;
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    if (pdf > 0.0) x -= err / pdf;
    return x;
}

SolveResult solve_2d(const Residual2d& f, double u0, double v0, double tol,
                     int max_iterations) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_2d: tol must be positive");

    auto norm_inf = [](const std::array<double, 2>& r) {
        return std::max(std::abs(r[0]), std::abs(r[1]));
    };

    SolveResult cur;
    cur.u = u0;
    cur.v = v0;
    cur.residual = f(u0, v0);

    for (int it = 0; it < max_iterations; ++it) {
        cur.iterations = it;
        const double rnorm = norm_inf(cur.residual);
        if (rnorm <= tol) return cur;

        const double hu = 1e-7 * std::max(1.0, std::abs(cur.u));
        const double hv = 1e-7 * std::max(1.0, std::abs(cur.v));
        const auto fu = f(cur.u + hu, cur.v);
        const auto fv = f(cur.u, cur.v + hv);
        const double j00 = (fu[0] - cur.residual[0]) / hu;
        const double j10 = (fu[1] - cur.residual[1]) / hu;
        const double j01 = (fv[0] - cur.residual[0]) / hv;
        const double j11 = (fv[1] - cur.residual[1]) / hv;

        const double det = j00 * j11 - j01 * j10;
        if (!std::isfinite(det) || std::abs(det) < 1e-300)
            throw SolveError("solve_2d: singular Jacobian", cur);

        const double du = -(j11 * cur.residual[0] - j01 * cur.residual[1]) / det;
        const double dv = -(-j10 * cur.residual[0] + j00 * cur.residual[1]) / det;

        // step halving until the residual does not increase
        double lambda = 1.0;
        SolveResult next = cur;
        bool accepted = false;
        for (int half = 0; half < 30; ++half) {
            next.u = cur.u + lambda * du;
            next.v = cur.v + lambda * dv;
            next.residual = f(next.u, next.v);
            if (std::isfinite(next.residual[0]) && std::isfinite(next.residual[1]) &&
                norm_inf(next.residual) < rnorm) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            // full step as a last resort; may still converge next iteration
            next.u = cur.u + du;
            next.v = cur.v + dv;
            next.residual = f(next.u, next.v);
            if (!std::isfinite(next.residual[0]) || !std::isfinite(next.residual[1]))
                throw SolveError("solve_2d: residual became non-finite", cur);
        }
        cur.u = next.u;
        cur.v = next.v;
        cur.residual = next.residual;
    }
    cur.iterations = max_iterations;
    if (norm_inf(cur.residual) <= tol) return cur;
    throw SolveError("solve_2d: no convergence after " +
                         std::to_string(max_iterations) + " iterations",
                     cur);
}

}  // namespace lnsir::numerics
