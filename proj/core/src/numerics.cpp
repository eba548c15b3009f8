#include "leglab/numerics.hpp"

#include <cmath>
#include <limits>

namespace leglab {

// ---------------------------------------------------------------------------
// Cholesky
// ---------------------------------------------------------------------------

std::optional<Cholesky> try_cholesky(const Matrix& a) {
    if (!a.square() || !all_finite(a)) return std::nullopt;
    const std::size_t n = a.rows();
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) return std::nullopt;
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return Cholesky{std::move(l)};
}

Cholesky cholesky(const SpdMatrix& a) {
    auto c = try_cholesky(a.mat());
    if (!c) throw std::runtime_error("cholesky: SPD validation raced a non-PD matrix");
    return *std::move(c);
}

Vector Cholesky::solve(const Vector& b) const {
    const std::size_t n = l.rows();
    if (b.size() != n) throw std::invalid_argument("Cholesky::solve: size mismatch");
    Vector y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y[k];
        y[i] = s / l(i, i);
    }
    Vector x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = y[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

Matrix Cholesky::solve(const Matrix& b) const {
    Matrix x(b.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        Vector xj = solve(b.col(j));
        for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = xj[i];
    }
    return x;
}

double Cholesky::log_det() const {
    double s = 0.0;
    for (std::size_t i = 0; i < l.rows(); ++i) s += std::log(l(i, i));
    return 2.0 * s;
}

// ---------------------------------------------------------------------------
// LU
// ---------------------------------------------------------------------------

Lu lu_factor(const Matrix& a) {
    require_square(a, "lu_factor");
    const std::size_t n = a.rows();
    Lu f{a, std::vector<std::size_t>(n), 1, false};
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::fabs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::fabs(f.lu(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0 || !std::isfinite(best)) {
            f.singular = true;
            return f;
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            f.lu(i, k) /= f.lu(k, k);
            const double lik = f.lu(i, k);
            if (lik == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
        }
    }
    return f;
}

Vector Lu::solve(const Vector& b) const {
    const std::size_t n = lu.rows();
    if (singular) throw std::runtime_error("Lu::solve: singular matrix");
    if (b.size() != n) throw std::invalid_argument("Lu::solve: size mismatch");
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[perm[i]];
        for (std::size_t k = 0; k < i; ++k) s -= lu(i, k) * x[k];
        x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= lu(ii, k) * x[k];
        x[ii] = s / lu(ii, ii);
    }
    return x;
}

Matrix Lu::solve(const Matrix& b) const {
    Matrix x(b.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        Vector xj = solve(b.col(j));
        for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = xj[i];
    }
    return x;
}

Matrix invert(const Matrix& a) {
    const Lu f = lu_factor(a);
    if (f.singular) throw std::runtime_error("invert: singular matrix");
    return f.solve(Matrix::identity(a.rows()));
}

Matrix solve(const Matrix& a, const Matrix& b) {
    const Lu f = lu_factor(a);
    if (f.singular) throw std::runtime_error("solve: singular matrix");
    return f.solve(b);
}

Vector solve(const Matrix& a, const Vector& b) {
    const Lu f = lu_factor(a);
    if (f.singular) throw std::runtime_error("solve: singular matrix");
    return f.solve(b);
}

double condition_1norm(const Matrix& a) {
    const Lu f = lu_factor(a);
    if (f.singular) return std::numeric_limits<double>::infinity();
    const Matrix inv = f.solve(Matrix::identity(a.rows()));
    if (!all_finite(inv)) return std::numeric_limits<double>::infinity();
    return one_norm(a) * one_norm(inv);
}

// ---------------------------------------------------------------------------
// Matrix exponential, degree-13 Pade with scaling and squaring
// ---------------------------------------------------------------------------

namespace {

constexpr double kPadeTheta13 = 5.371920351148152;

constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

}  // namespace

Matrix mat_exp(const Matrix& a) {
    require_square(a, "mat_exp");
    require_finite(a, "mat_exp");
    const std::size_t n = a.rows();
    if (n == 0) return a;

    const double nrm = one_norm(a);
    int squarings = 0;
    if (nrm > kPadeTheta13)
        squarings = static_cast<int>(std::ceil(std::log2(nrm / kPadeTheta13)));

    Matrix as = a * std::ldexp(1.0, -squarings);

    const Matrix id = Matrix::identity(n);
    const Matrix a2 = as * as;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a2 * a4;

    const auto& b = kPade13;
    Matrix u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
    u_inner += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
    const Matrix u = as * u_inner;

    Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
    v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    Matrix r = solve(v - u, v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

Matrix phi1(const Matrix& a) {
    require_square(a, "phi1");
    require_finite(a, "phi1");
    const std::size_t n = a.rows();
    Matrix aug(2 * n, 2 * n);
    aug.set_block(0, 0, a);
    aug.set_block(0, n, Matrix::identity(n));
    const Matrix e = mat_exp(aug);
    return e.block(0, n, n, n);
}

// ---------------------------------------------------------------------------
// Lyapunov: k X + X k^T = d via the Kronecker-product linear system
// ---------------------------------------------------------------------------

SpdMatrix solve_lyapunov(const Matrix& k, const SpdMatrix& d) {
    require_square(k, "solve_lyapunov");
    require_finite(k, "solve_lyapunov");
    const std::size_t n = k.rows();
    if (d.dim() != n) throw std::invalid_argument("solve_lyapunov: dimension mismatch");

    // Row (i,j) of the operator: sum_m k_im X_mj + sum_m X_im k_jm = d_ij.
    Matrix op(n * n, n * n);
    Vector rhs(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t r = i * n + j;
            rhs[r] = d(i, j);
            for (std::size_t m = 0; m < n; ++m) {
                op(r, m * n + j) += k(i, m);
                op(r, i * n + m) += k(j, m);
            }
        }

    const Lu f = lu_factor(op);
    if (f.singular)
        throw NoUniqueSolutionError("solve_lyapunov: singular Lyapunov operator (an eigenvalue "
                                    "pair of k sums to zero)");
    const Vector xv = f.solve(rhs);

    Matrix x(n, n, xv);
    x = symmetrize(x);

    const double resid = frobenius_norm(k * x + x * k.transpose() - d.mat());
    const double dnorm = std::max(frobenius_norm(d.mat()), 1e-300);
    if (!all_finite(x) || resid / dnorm > 1e-10)
        throw NoUniqueSolutionError("solve_lyapunov: ill-conditioned Lyapunov operator, relative "
                                    "residual " + std::to_string(resid / dnorm));
    if (!try_cholesky(x))
        throw NoUniqueSolutionError("solve_lyapunov: solution is not positive definite; the "
                                    "spectrum of k must lie in the right half plane");
    return SpdMatrix(std::move(x));
}

// ---------------------------------------------------------------------------
// Quadrature and RK4
// ---------------------------------------------------------------------------

const GaussLegendre5& gauss_legendre_5() {
    static const GaussLegendre5 rule = [] {
        GaussLegendre5 r;
        const double n1 = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
        const double n2 = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
        const double w0 = 128.0 / 225.0;
        const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
        const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
        r.nodes = {-n2, -n1, 0.0, n1, n2};
        r.weights = {w2, w1, w0, w1, w2};
        return r;
    }();
    return rule;
}

double integrate_quadrature(const std::function<double(double)>& f, double lo, double hi,
                            int panels) {
    if (panels < 1) throw std::invalid_argument("integrate_quadrature: panels must be >= 1");
    const auto& rule = gauss_legendre_5();
    const double h = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * h;
        const double mid = a + 0.5 * h;
        double panel = 0.0;
        for (int q = 0; q < 5; ++q) panel += rule.weights[q] * f(mid + 0.5 * h * rule.nodes[q]);
        total += 0.5 * h * panel;
    }
    return total;
}

Vector rk4_integrate(const std::function<Vector(double, const Vector&)>& field, Vector state0,
                     double t_end, int steps) {
    if (steps < 1) throw std::invalid_argument("rk4_integrate: steps must be >= 1");
    require_finite(state0, "rk4_integrate");
    const double h = t_end / steps;
    Vector x = std::move(state0);
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const Vector k1 = field(t, x);
        const Vector k2 = field(t + 0.5 * h, x + 0.5 * h * k1);
        const Vector k3 = field(t + 0.5 * h, x + 0.5 * h * k2);
        const Vector k4 = field(t + h, x + h * k3);
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!all_finite(x))
            throw DivergenceError("rk4_integrate: non-finite state after step " +
                                      std::to_string(k + 1) + " of " + std::to_string(steps),
                                  k + 1);
    }
    return x;
}

}  // namespace leglab
