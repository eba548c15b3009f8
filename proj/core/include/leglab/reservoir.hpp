#pragma once

#include "leglab/matrix.hpp"
#include "leglab/symp.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace leglab::reservoir {

/// H(x, u) = x'Mx/2 - x'Cu on R^{2n} with M SPD; internal energy plus
/// input coupling.
struct QuadraticHamiltonianSpec {
    SpdMatrix m_energy;
    Matrix c_couple;
    double dt;

    QuadraticHamiltonianSpec(SpdMatrix m, Matrix c, double dt_);
    std::size_t state_dim() const noexcept { return m_energy.dim(); }
    std::size_t input_dim() const noexcept { return c_couple.cols(); }
};

/// H(q, p, u) = p'Sq + q'Lq/2 - (q'Cq u + p'Cp u); at most linear in the
/// momentum. L must be symmetric; SPD is optional and off by default.
struct LinearPHamiltonianSpec {
    Matrix s_mat;
    Matrix l_mat;
    Matrix cq;
    Matrix cp;
    double dt;

    LinearPHamiltonianSpec(Matrix s, Matrix l, Matrix cq_, Matrix cp_, double dt_,
                           bool require_spd_l = false);
    std::size_t base_dim() const noexcept { return s_mat.rows(); }
    std::size_t input_dim() const noexcept { return cq.cols(); }
};

enum class GeneratorKind { quadratic, linear_p };

/// Discrete update pair x -> Wx + W_in u obtained as the exact flow of an
/// input-driven Hamiltonian. W is symplectic and a_gen = JM (or the
/// block-triangular [[S, 0], [-L, -S']]) is a Hamiltonian matrix; both are
/// re-checked at construction.
struct SymplecticReservoir {
    Matrix w;
    Matrix w_in;
    Matrix a_gen;
    GeneratorKind provenance;
    double dt;

    SymplecticReservoir(Matrix w_, Matrix w_in_, Matrix a_gen_, GeneratorKind kind, double dt_);
    std::size_t state_dim() const noexcept { return w.rows(); }
    std::size_t input_dim() const noexcept { return w_in.cols(); }
};

struct ReservoirTrajectory {
    std::vector<Vector> states;  // length inputs.size() + 1
    std::vector<Vector> inputs;
};

/// W = exp(JM dt), W_in = dt phi1(JM dt)(-JC). The phi1 form agrees with
/// A^{-1}(e^{A dt} - I)B whenever A is invertible and extends it when not.
SymplecticReservoir build_quadratic(const QuadraticHamiltonianSpec& spec);

/// Block generator A = [[S, 0], [-L, -S']], B = [[-Cp], [Cq]]; W inherits the
/// block triangularity (zero upper-right block), so every update is of
/// graph-preserving normal form.
SymplecticReservoir build_linear_p(const LinearPHamiltonianSpec& spec);

Vector step(const SymplecticReservoir& res, const Vector& x, const Vector& u);

ReservoirTrajectory run(const SymplecticReservoir& res, Vector x0, std::span<const Vector> inputs);

/// Internal energy x'Mx/2; conserved along undriven trajectories.
double energy(const QuadraticHamiltonianSpec& spec, const Vector& x);

/// Affine base flow q -> e^{S s} q - s phi1(S s) Cp u of the linear-p
/// Hamiltonian under zero-order hold, precomputed on the Gauss-Legendre
/// nodes of [0, t] so chi can be evaluated cheaply at many points.
class ChiQuadrature {
public:
    ChiQuadrature(const LinearPHamiltonianSpec& spec, Vector u_const, double t, int panels);
    double value(const Vector& q) const;
    Vector fd_gradient(const Vector& q, double h) const;
    double horizon() const noexcept { return t_; }

private:
    struct Node {
        Matrix flow;     // e^{S(tau - t)}
        Vector offset;   // input contribution to f_{tau-t}(q)
        double weight;   // quadrature weight on [0, t]
    };
    std::vector<Node> nodes_;
    Matrix l_;
    Vector cq_u_;
    double t_;
};

/// chi_t(q) = -int_0^t V(f_{tau-t}(q)) dtau with V(q) = q'Lq/2 - q'Cq u and
/// base flow q' = Sq - Cp u (constant input folded into V per zero-order
/// hold). Composite 5-point Gauss-Legendre with the given panel count.
double chi_t_value(const LinearPHamiltonianSpec& spec, const Vector& u_const, double t,
                   const Vector& q, int panels);

/// Numerical verdict on the normal-form theorem for one spec and one constant
/// input: the update decomposes, the reconstruction matches pointwise, and
/// the decomposition's fiber translation is the gradient of chi_t.
struct MainTheoremReport {
    bool decomposed = false;
    double coupling_norm = 0.0;         // ||W12||
    double max_map_err = 0.0;           // decomposition vs update, sampled points
    double max_fiber_gradient_err = 0.0;  // X q' + y vs finite-difference grad chi
    double hessian_asymmetry = 0.0;     // worst transported-Hessian asymmetry
    int samples = 0;
};

MainTheoremReport verify_main_theorem(const LinearPHamiltonianSpec& spec, const Vector& u_const,
                                      int sample_count, std::uint64_t seed);

}  // namespace leglab::reservoir
