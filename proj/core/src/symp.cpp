#include "leglab/symp.hpp"
#include "leglab/numerics.hpp"
#include "leglab/rng.hpp"

#include <cmath>

namespace leglab::symp {

namespace {

std::size_t even_half(const Matrix& a, const std::string& who) {
    require_square(a, who);
    if (a.rows() % 2 != 0)
        throw std::invalid_argument(who + ": dimension must be even, got " +
                                    std::to_string(a.rows()));
    return a.rows() / 2;
}

// w'Jw - J without forming J: for column blocks, (w'Jw)_{ij} =
// sum_k w_ki w_{k+n, j} - w_{k+n, i} w_kj.
Matrix symplectic_defect(const Matrix& w) {
    const std::size_t n = w.rows() / 2;
    const std::size_t m = w.rows();
    Matrix g(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += w(k, i) * w(k + n, j) - w(k + n, i) * w(k, j);
            g(i, j) = s;
        }
    // subtract J
    for (std::size_t k = 0; k < n; ++k) {
        g(k, k + n) -= 1.0;
        g(k + n, k) += 1.0;
    }
    return g;
}

}  // namespace

CanonicalJ::CanonicalJ(std::size_t n_) : n(n_), matrix(2 * n_, 2 * n_) {
    for (std::size_t k = 0; k < n; ++k) {
        matrix(k, k + n) = 1.0;
        matrix(k + n, k) = -1.0;
    }
}

Matrix canonical_j(std::size_t n) { return CanonicalJ(n).matrix; }

StructureCheck is_symplectic(const Matrix& w, double tol) {
    even_half(w, "is_symplectic");
    require_finite(w, "is_symplectic");
    const double residual = frobenius_norm(symplectic_defect(w));
    return {residual <= tol, residual};
}

StructureCheck is_hamiltonian_matrix(const Matrix& a, double tol) {
    const std::size_t n = even_half(a, "is_hamiltonian_matrix");
    require_finite(a, "is_hamiltonian_matrix");
    const Matrix j = canonical_j(n);
    const double residual = frobenius_norm(a.transpose() * j + j * a);
    return {residual <= tol, residual};
}

ConformalResult conformal_factor(const Matrix& w, double tol) {
    const std::size_t n = even_half(w, "conformal_factor");
    require_finite(w, "conformal_factor");
    const Lu f = lu_factor(w);
    if (f.singular) throw std::invalid_argument("conformal_factor: singular map");
    const Matrix j = canonical_j(n);
    const Matrix g = w.transpose() * j * w;
    const double c = frobenius_inner(g, j) / frobenius_inner(j, j);
    const double residual = frobenius_norm(g - c * j);
    return {residual <= tol, c, residual};
}

LagrangianFrame random_lagrangian_frame(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_lagrangian_frame: n must be >= 1");
    Xoshiro256pp rng(seed, streams::sampling);
    Matrix s(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double x = rng.uniform(-1.0, 1.0);
            s(i, j) = x;
            s(j, i) = x;
        }
    Matrix basis(2 * n, n);
    basis.set_block(0, 0, Matrix::identity(n));
    basis.set_block(n, 0, s);
    return {std::move(basis)};
}

LagrangianFrame vertical_frame(std::size_t n) {
    Matrix basis(2 * n, n);
    basis.set_block(n, 0, Matrix::identity(n));
    return {std::move(basis)};
}

LagrangianFrame horizontal_frame(std::size_t n) {
    Matrix basis(2 * n, n);
    basis.set_block(0, 0, Matrix::identity(n));
    return {std::move(basis)};
}

FrameCheck is_lagrangian_frame(const LagrangianFrame& frame, double tol) {
    const Matrix& b = frame.basis;
    if (b.rows() == 0 || b.rows() % 2 != 0 || b.cols() != b.rows() / 2)
        return {false, 0.0,
                "frame must be 2n x n, got " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols())};
    const std::size_t n = b.cols();

    // Column rank via the pivots of an LU on B'B (n x n, desk scale).
    const Matrix gram = b.transpose() * b;
    const Lu f = lu_factor(gram);
    if (f.singular) return {false, 0.0, "rank-deficient frame"};
    double pmin = std::fabs(f.lu(0, 0)), pmax = pmin;
    for (std::size_t i = 1; i < n; ++i) {
        const double p = std::fabs(f.lu(i, i));
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
    }
    if (pmin < 1e-12 * pmax) return {false, 0.0, "rank-deficient frame"};

    const Matrix j = canonical_j(n);
    const double residual = frobenius_norm(b.transpose() * j * b);
    return {residual <= tol, residual, residual <= tol ? "" : "isotropy residual above tol"};
}

QuadraticPotential::QuadraticPotential(Matrix p, Vector b, double c)
    : p_hess(std::move(p)), b_lin(std::move(b)), c_const(c) {
    require_square(p_hess, "QuadraticPotential");
    require_finite(p_hess, "QuadraticPotential");
    require_finite(b_lin, "QuadraticPotential");
    if (p_hess.rows() != b_lin.size())
        throw std::invalid_argument("QuadraticPotential: Hessian/linear size mismatch");
    if (symmetry_gap(p_hess) > 1e-12 * std::max(1.0, frobenius_norm(p_hess)))
        throw std::invalid_argument("QuadraticPotential: Hessian must be symmetric");
    p_hess = symmetrize(p_hess);
}

double QuadraticPotential::value(const Vector& q) const {
    return 0.5 * dot(q, p_hess * q) + dot(b_lin, q) + c_const;
}

Vector QuadraticPotential::gradient(const Vector& q) const { return p_hess * q + b_lin; }

AffineSymplecticMap::AffineSymplecticMap(Matrix w_, Vector v_) : w(std::move(w_)), v(std::move(v_)) {
    const std::size_t n = even_half(w, "AffineSymplecticMap");
    require_finite(w, "AffineSymplecticMap");
    require_finite(v, "AffineSymplecticMap");
    if (v.size() != 2 * n)
        throw std::invalid_argument("AffineSymplecticMap: translation size mismatch");
    const double jnorm = std::sqrt(2.0 * static_cast<double>(n));
    const auto check = is_symplectic(w, symplectic_tol * jnorm);
    if (!check.ok)
        throw std::invalid_argument(
            "AffineSymplecticMap: w is not symplectic (relative residual " +
            std::to_string(check.residual / jnorm) + ")");
}

AffineSymplecticMap AffineSymplecticMap::unchecked(Matrix w_, Vector v_) {
    AffineSymplecticMap m;
    m.w = std::move(w_);
    m.v = std::move(v_);
    even_half(m.w, "AffineSymplecticMap::unchecked");
    if (m.v.size() != m.w.rows())
        throw std::invalid_argument("AffineSymplecticMap: translation size mismatch");
    return m;
}

Vector AffineSymplecticMap::apply(const Vector& x) const { return w * x + v; }

TransportResult transport_quadratic_graph(const AffineSymplecticMap& map,
                                          const QuadraticPotential& psi) {
    const std::size_t n = map.half_dim();
    if (psi.dim() != n)
        throw std::invalid_argument("transport_quadratic_graph: dimension mismatch");

    const Matrix w11 = map.w.block(0, 0, n, n);
    const Matrix w12 = map.w.block(0, n, n, n);
    const Matrix w21 = map.w.block(n, 0, n, n);
    const Matrix w22 = map.w.block(n, n, n, n);
    const Vector vq(map.v.begin(), map.v.begin() + n);
    const Vector vp(map.v.begin() + n, map.v.end());

    const Matrix g = w11 + w12 * psi.p_hess;
    TransportResult out;
    out.base_condition = condition_1norm(g);
    if (!(out.base_condition < 1e12)) return out;  // image plane is vertical somewhere

    const Matrix h = w21 + w22 * psi.p_hess;
    const Matrix p_img = h * invert(g);
    out.hessian_asymmetry = symmetry_gap(p_img);

    // b' from p' = P'q' + b' identically in q.
    const Vector b_img = w22 * psi.b_lin + vp - p_img * (w12 * psi.b_lin + vq);
    out.potential.emplace(symmetrize(p_img), b_img, psi.c_const);
    return out;
}

GraphPreservingDecomposition::GraphPreservingDecomposition(Matrix f, Vector d, Matrix x, Vector y)
    : f_base(std::move(f)), d_base(std::move(d)), x_hess(std::move(x)), y_lin(std::move(y)) {
    require_square(f_base, "GraphPreservingDecomposition");
    const std::size_t n = f_base.rows();
    if (d_base.size() != n || x_hess.rows() != n || x_hess.cols() != n || y_lin.size() != n)
        throw std::invalid_argument("GraphPreservingDecomposition: size mismatch");
    if (lu_factor(f_base).singular)
        throw std::invalid_argument("GraphPreservingDecomposition: base map must be invertible");
    if (symmetry_gap(x_hess) > 1e-9 * std::max(1.0, frobenius_norm(x_hess)))
        throw std::invalid_argument("GraphPreservingDecomposition: X must be symmetric");
    x_hess = symmetrize(x_hess);
}

Vector GraphPreservingDecomposition::apply(const Vector& x) const {
    const std::size_t n = dim();
    if (x.size() != 2 * n)
        throw std::invalid_argument("GraphPreservingDecomposition::apply: size mismatch");
    const Vector q(x.begin(), x.begin() + n);
    const Vector p(x.begin() + n, x.end());
    const Vector q_img = f_base * q + d_base;
    const Vector p_img = invert(f_base.transpose()) * p + x_hess * q_img + y_lin;
    Vector out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = q_img[i];
        out[i + n] = p_img[i];
    }
    return out;
}

DecomposeResult decompose_graph_preserving(const AffineSymplecticMap& map, double tol) {
    const std::size_t n = map.half_dim();
    const Matrix w12 = map.w.block(0, n, n, n);

    DecomposeResult out;
    out.coupling_norm = frobenius_norm(w12);
    if (out.coupling_norm > tol) return out;  // symplectic but not Legendre-preserving

    const Matrix f = map.w.block(0, 0, n, n);
    const Matrix w21 = map.w.block(n, 0, n, n);
    const Vector d(map.v.begin(), map.v.begin() + n);
    const Vector vp(map.v.begin() + n, map.v.end());

    const Lu flu = lu_factor(f);
    if (flu.singular)
        throw std::logic_error("decompose_graph_preserving: base block singular; w cannot be "
                               "symplectic with W12 = 0");
    // X = W21 F^{-1}, computed as (F^{-T} W21^T)^T.
    const Matrix x_raw = lu_factor(f.transpose()).solve(w21.transpose()).transpose();
    out.x_asymmetry = symmetry_gap(x_raw);
    if (out.x_asymmetry > std::max(tol, 1e-9 * std::max(1.0, frobenius_norm(x_raw))))
        throw std::logic_error(
            "decompose_graph_preserving: fiber Hessian asymmetric (gap " +
            std::to_string(out.x_asymmetry) + "); input map was not symplectic");

    const Matrix x = symmetrize(x_raw);
    const Vector y = vp - x * d;
    out.decomposition.emplace(f, d, x, y);
    return out;
}

DecomposeResult decompose_graph_preserving(const AffineSymplecticMap& map) {
    return decompose_graph_preserving(map, 1e-10 * frobenius_norm(map.w));
}

QuadraticPotential compose_potential(const GraphPreservingDecomposition& decomp,
                                     const QuadraticPotential& psi) {
    const std::size_t n = decomp.dim();
    if (psi.dim() != n) throw std::invalid_argument("compose_potential: dimension mismatch");
    const Matrix f_inv = invert(decomp.f_base);
    const Matrix pullback = f_inv.transpose() * psi.p_hess * f_inv;
    Matrix p_out = symmetrize(pullback) + decomp.x_hess;
    // linear term of psi(f^{-1}(q')) is F^{-T}(b - P F^{-1} d), plus y from chi
    Vector b_out =
        f_inv.transpose() * (psi.b_lin - psi.p_hess * (f_inv * decomp.d_base)) + decomp.y_lin;
    return QuadraticPotential(std::move(p_out), std::move(b_out), psi.c_const);
}

GraphTransportReport verify_sampled_graph_transport(
    const AffineSymplecticMap& map, const std::function<Vector(const Vector&)>& grad_psi,
    const Vector& box_lo, const Vector& box_hi, int count, std::uint64_t seed, double fd_step) {
    const std::size_t n = map.half_dim();
    if (box_lo.size() != n || box_hi.size() != n)
        throw std::invalid_argument("verify_sampled_graph_transport: box dimension mismatch");
    if (count < 1 || fd_step <= 0.0)
        throw std::invalid_argument("verify_sampled_graph_transport: bad sampling parameters");

    const Matrix w12 = map.w.block(0, n, n, n);
    if (frobenius_norm(w12) > 1e-10 * std::max(1.0, frobenius_norm(map.w)))
        throw std::invalid_argument(
            "verify_sampled_graph_transport: map must be graph-preserving (W12 = 0)");

    const Matrix f = map.w.block(0, 0, n, n);
    const Matrix w21 = map.w.block(n, 0, n, n);
    const Matrix w22 = map.w.block(n, n, n, n);
    const Vector d(map.v.begin(), map.v.begin() + n);
    const Vector vp(map.v.begin() + n, map.v.end());

    const Lu flu = lu_factor(f);
    if (flu.singular)
        throw std::invalid_argument("verify_sampled_graph_transport: degenerate base map");

    // p' as a function of q': invert the base map, then push the fiber.
    const auto p_of_qimg = [&](const Vector& q_img) {
        const Vector q = flu.solve(q_img - d);
        return w21 * q + w22 * grad_psi(q) + vp;
    };

    Xoshiro256pp rng(seed, streams::sampling);
    double worst = 0.0;
    for (int s = 0; s < count; ++s) {
        Vector q(n);
        for (std::size_t i = 0; i < n; ++i) q[i] = rng.uniform(box_lo[i], box_hi[i]);
        const Vector q_img = f * q + d;

        Matrix jac(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            Vector qp = q_img, qm = q_img;
            qp[j] += fd_step;
            qm[j] -= fd_step;
            const Vector pp = p_of_qimg(qp);
            const Vector pm = p_of_qimg(qm);
            for (std::size_t i = 0; i < n; ++i) jac(i, j) = (pp[i] - pm[i]) / (2.0 * fd_step);
        }
        worst = std::max(worst, max_abs(jac - jac.transpose()));
    }
    return {worst, count, fd_step};
}

}  // namespace leglab::symp
