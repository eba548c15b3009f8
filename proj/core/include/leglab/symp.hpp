#pragma once

#include "leglab/matrix.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace leglab::symp {

/// The canonical symplectic structure matrix [[0, I], [-I, 0]] on R^{2n};
/// satisfies J^2 = -I and J' = -J exactly.
struct CanonicalJ {
    explicit CanonicalJ(std::size_t n_);
    std::size_t n;
    Matrix matrix;
};

Matrix canonical_j(std::size_t n);

/// Residual-carrying boolean for structure predicates.
struct StructureCheck {
    bool ok;
    double residual;
};

/// ||w'Jw - J||_F against tol. Requires even dimension.
StructureCheck is_symplectic(const Matrix& w, double tol);

/// ||a'J + Ja||_F against tol (membership in sp(2n)). Requires even dimension.
StructureCheck is_hamiltonian_matrix(const Matrix& a, double tol);

/// Best constant c with w'Jw ~ c J (closed form c = <w'Jw, J>_F / <J, J>_F).
/// conformal is false when the residual at that c exceeds tol.
struct ConformalResult {
    bool conformal;
    double factor;
    double residual;
};
ConformalResult conformal_factor(const Matrix& w, double tol);

/// Columns span a candidate Lagrangian subspace of R^{2n} (2n x n basis).
struct LagrangianFrame {
    Matrix basis;
};

/// Graph-type frame [[I], [S]] for a seeded random symmetric S with entries
/// in [-1, 1]. Always Lagrangian.
LagrangianFrame random_lagrangian_frame(std::size_t n, std::uint64_t seed);
/// The vertical subspace [[0], [I]] (the stratum graph frames miss).
LagrangianFrame vertical_frame(std::size_t n);
/// The zero section [[I], [0]].
LagrangianFrame horizontal_frame(std::size_t n);

struct FrameCheck {
    bool lagrangian;
    double residual;     // ||B'JB||_F
    std::string reason;  // non-empty when rejected for rank or shape
};
FrameCheck is_lagrangian_frame(const LagrangianFrame& frame, double tol);

/// psi(q) = q'Pq/2 + b'q + c. Constructor validates symmetry of P to 1e-12
/// relative and stores the symmetrized matrix. Convexity is not required:
/// symplectic transport can and does produce concave potentials.
struct QuadraticPotential {
    Matrix p_hess;
    Vector b_lin;
    double c_const;

    QuadraticPotential(Matrix p, Vector b, double c);
    std::size_t dim() const noexcept { return b_lin.size(); }
    double value(const Vector& q) const;
    Vector gradient(const Vector& q) const;
};

/// x -> w x + v with w symplectic. The constructor enforces
/// ||w'Jw - J||_F / ||J||_F < 1e-9; unchecked() skips the gate (for feeding
/// deliberately broken maps to the detectors).
struct AffineSymplecticMap {
    Matrix w;
    Vector v;

    AffineSymplecticMap(Matrix w_, Vector v_);
    static AffineSymplecticMap unchecked(Matrix w_, Vector v_);

    std::size_t half_dim() const noexcept { return v.size() / 2; }
    Vector apply(const Vector& x) const;

    static constexpr double symplectic_tol = 1e-9;

private:
    AffineSymplecticMap() = default;
};

/// Image of the gradient graph of a quadratic potential under an affine
/// symplectic map, when that image is again a graph over the base.
struct TransportResult {
    std::optional<QuadraticPotential> potential;  // nullopt: image plane is vertical somewhere
    double hessian_asymmetry = 0.0;               // ||P' - P''||_F before symmetrization
    double base_condition = 0.0;                  // cond_1(G), the not-a-graph gate
};

/// Linear-fractional action on quadratic graphs: with w in n x n blocks and
/// G = W11 + W12 P, the image of {(q, Pq + b)} is the graph of the quadratic
/// with Hessian (W21 + W22 P) G^{-1}. not-a-graph when cond_1(G) > 1e12.
/// The constant term follows the c' = c convention (only gradients are
/// observable on a graph).
TransportResult transport_quadratic_graph(const AffineSymplecticMap& map,
                                          const QuadraticPotential& psi);

/// Normal-form data for a graph-preserving affine symplectic map:
/// base q -> Fq + d composed with fiber translation p -> p + Xq' + y.
struct GraphPreservingDecomposition {
    Matrix f_base;
    Vector d_base;
    Matrix x_hess;
    Vector y_lin;

    GraphPreservingDecomposition(Matrix f, Vector d, Matrix x, Vector y);
    std::size_t dim() const noexcept { return d_base.size(); }

    /// (q, p) -> (Fq + d, F^{-T}p + X(Fq + d) + y); equals the decomposed map.
    Vector apply(const Vector& x) const;
};

struct DecomposeResult {
    std::optional<GraphPreservingDecomposition> decomposition;
    double coupling_norm = 0.0;    // ||W12||_F, the graph-preserving gate
    double x_asymmetry = 0.0;      // raw ||X - X'||_F before symmetrization
};

/// Splits w = [[F, 0], [W21, F^{-T}]] into cotangent-lift + exact fiber
/// translation data: F = W11, d = v_q, X = W21 F^{-1}, y = v_p - X d.
/// Returns no decomposition when ||W12|| exceeds tol (symplectic but not
/// Legendre-preserving); throws std::logic_error when X comes out asymmetric
/// beyond tol, which can only happen if w was not symplectic.
DecomposeResult decompose_graph_preserving(const AffineSymplecticMap& map, double tol);
/// Same with the default relative gate tol = 1e-10 * ||w||_F.
DecomposeResult decompose_graph_preserving(const AffineSymplecticMap& map);

/// psi' = psi o f^{-1} + chi for the decomposition's base map f and quadratic
/// fiber potential chi(q) = q'Xq/2 + y'q. Agrees with transport of the
/// reconstructed map on (P', b'); c' follows the same constant convention.
QuadraticPotential compose_potential(const GraphPreservingDecomposition& decomp,
                                     const QuadraticPotential& psi);

/// Curl-free witness for sampled (non-quadratic) potentials: pushes the
/// gradient graph of grad_psi through a W12 = 0 map, reassembles p' as a
/// function of q', and reports the worst asymmetry of the finite-difference
/// Jacobian dp'/dq' over sampled base points.
struct GraphTransportReport {
    double max_jacobian_asymmetry;
    int samples;
    double fd_step;
};
GraphTransportReport verify_sampled_graph_transport(
    const AffineSymplecticMap& map, const std::function<Vector(const Vector&)>& grad_psi,
    const Vector& box_lo, const Vector& box_hi, int count, std::uint64_t seed, double fd_step);

}  // namespace leglab::symp
