#include "leglab/reservoir.hpp"
#include "leglab/numerics.hpp"
#include "leglab/rng.hpp"

#include <cmath>

namespace leglab::reservoir {

QuadraticHamiltonianSpec::QuadraticHamiltonianSpec(SpdMatrix m, Matrix c, double dt_)
    : m_energy(std::move(m)), c_couple(std::move(c)), dt(dt_) {
    if (m_energy.dim() % 2 != 0)
        throw std::invalid_argument("QuadraticHamiltonianSpec: state dimension must be even");
    require_finite(c_couple, "QuadraticHamiltonianSpec");
    if (c_couple.rows() != m_energy.dim())
        throw std::invalid_argument("QuadraticHamiltonianSpec: coupling rows must match state");
    if (!(dt > 0.0)) throw std::invalid_argument("QuadraticHamiltonianSpec: dt must be positive");
}

LinearPHamiltonianSpec::LinearPHamiltonianSpec(Matrix s, Matrix l, Matrix cq_, Matrix cp_,
                                               double dt_, bool require_spd_l)
    : s_mat(std::move(s)), l_mat(std::move(l)), cq(std::move(cq_)), cp(std::move(cp_)), dt(dt_) {
    require_square(s_mat, "LinearPHamiltonianSpec");
    require_square(l_mat, "LinearPHamiltonianSpec");
    require_finite(s_mat, "LinearPHamiltonianSpec");
    require_finite(l_mat, "LinearPHamiltonianSpec");
    require_finite(cq, "LinearPHamiltonianSpec");
    require_finite(cp, "LinearPHamiltonianSpec");
    const std::size_t n = s_mat.rows();
    if (l_mat.rows() != n || cq.rows() != n || cp.rows() != n || cq.cols() != cp.cols())
        throw std::invalid_argument("LinearPHamiltonianSpec: dimension mismatch");
    if (symmetry_gap(l_mat) > 1e-12 * std::max(1.0, frobenius_norm(l_mat)))
        throw std::invalid_argument("LinearPHamiltonianSpec: L must be symmetric");
    l_mat = symmetrize(l_mat);
    if (require_spd_l && !try_cholesky(l_mat))
        throw std::invalid_argument("LinearPHamiltonianSpec: L is not positive definite");
    if (!(dt > 0.0)) throw std::invalid_argument("LinearPHamiltonianSpec: dt must be positive");
}

SymplecticReservoir::SymplecticReservoir(Matrix w_, Matrix w_in_, Matrix a_gen_,
                                         GeneratorKind kind, double dt_)
    : w(std::move(w_)), w_in(std::move(w_in_)), a_gen(std::move(a_gen_)), provenance(kind),
      dt(dt_) {
    const auto sym = symp::is_symplectic(w, 1e-9 * std::sqrt(static_cast<double>(w.rows())));
    if (!sym.ok)
        throw std::runtime_error("SymplecticReservoir: W failed the symplecticity gate, residual " +
                                 std::to_string(sym.residual));
    const auto ham = symp::is_hamiltonian_matrix(a_gen, 1e-9);
    if (!ham.ok)
        throw std::runtime_error("SymplecticReservoir: generator failed the sp(2n) gate");
    if (w_in.rows() != w.rows())
        throw std::runtime_error("SymplecticReservoir: W_in row count mismatch");
}

SymplecticReservoir build_quadratic(const QuadraticHamiltonianSpec& spec) {
    const std::size_t n = spec.state_dim() / 2;
    const Matrix j = symp::canonical_j(n);
    const Matrix a = j * spec.m_energy.mat();
    const Matrix b = -(j * spec.c_couple);
    const Matrix a_dt = spec.dt * a;
    Matrix w = mat_exp(a_dt);
    Matrix w_in = spec.dt * (phi1(a_dt) * b);
    return SymplecticReservoir(std::move(w), std::move(w_in), a, GeneratorKind::quadratic,
                               spec.dt);
}

SymplecticReservoir build_linear_p(const LinearPHamiltonianSpec& spec) {
    const std::size_t n = spec.base_dim();
    Matrix a(2 * n, 2 * n);
    a.set_block(0, 0, spec.s_mat);
    a.set_block(n, 0, -spec.l_mat);
    a.set_block(n, n, -spec.s_mat.transpose());

    Matrix b(2 * n, spec.input_dim());
    b.set_block(0, 0, -spec.cp);
    b.set_block(n, 0, spec.cq);

    const Matrix a_dt = spec.dt * a;
    Matrix w = mat_exp(a_dt);
    // The exponential of a block-triangular generator is block triangular;
    // scrub the roundoff in the coupling block so downstream gates see zero.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = n; jj < 2 * n; ++jj) w(i, jj) = 0.0;
    Matrix w_in = spec.dt * (phi1(a_dt) * b);
    return SymplecticReservoir(std::move(w), std::move(w_in), a, GeneratorKind::linear_p,
                               spec.dt);
}

Vector step(const SymplecticReservoir& res, const Vector& x, const Vector& u) {
    if (x.size() != res.state_dim() || u.size() != res.input_dim())
        throw std::invalid_argument("reservoir step: dimension mismatch");
    return res.w * x + res.w_in * u;
}

ReservoirTrajectory run(const SymplecticReservoir& res, Vector x0,
                        std::span<const Vector> inputs) {
    if (x0.size() != res.state_dim())
        throw std::invalid_argument("reservoir run: state dimension mismatch");
    ReservoirTrajectory traj;
    traj.states.reserve(inputs.size() + 1);
    traj.inputs.assign(inputs.begin(), inputs.end());
    traj.states.push_back(std::move(x0));
    for (const Vector& u : inputs) traj.states.push_back(step(res, traj.states.back(), u));
    return traj;
}

double energy(const QuadraticHamiltonianSpec& spec, const Vector& x) {
    if (x.size() != spec.state_dim()) throw std::invalid_argument("energy: dimension mismatch");
    return 0.5 * dot(x, spec.m_energy.mat() * x);
}

ChiQuadrature::ChiQuadrature(const LinearPHamiltonianSpec& spec, Vector u_const, double t,
                             int panels)
    : l_(spec.l_mat), t_(t) {
    if (t < 0.0) throw std::invalid_argument("ChiQuadrature: t must be >= 0");
    if (panels < 1) throw std::invalid_argument("ChiQuadrature: panels must be >= 1");
    if (u_const.size() != spec.input_dim())
        throw std::invalid_argument("ChiQuadrature: input dimension mismatch");

    cq_u_ = spec.cq * u_const;
    const Vector cp_u = spec.cp * u_const;
    if (t == 0.0) return;

    const auto& rule = gauss_legendre_5();
    const double h = t / panels;
    nodes_.reserve(static_cast<std::size_t>(panels) * 5);
    for (int p = 0; p < panels; ++p) {
        const double mid = p * h + 0.5 * h;
        for (int q = 0; q < 5; ++q) {
            const double tau = mid + 0.5 * h * rule.nodes[q];
            const double s = tau - t;  // in [-t, 0]
            const Matrix flow = mat_exp(s * spec.s_mat);
            // f_s(q) = e^{Ss} q - s phi1(Ss) Cp u (variation of constants)
            const Vector offset = (-s) * (phi1(s * spec.s_mat) * cp_u);
            nodes_.push_back({flow, offset, 0.5 * h * rule.weights[q]});
        }
    }
}

double ChiQuadrature::value(const Vector& q) const {
    double acc = 0.0;
    for (const Node& node : nodes_) {
        const Vector z = node.flow * q + node.offset;
        const double v = 0.5 * dot(z, l_ * z) - dot(z, cq_u_);
        acc -= node.weight * v;
    }
    return acc;
}

Vector ChiQuadrature::fd_gradient(const Vector& q, double h) const {
    Vector g(q.size());
    Vector qp = q, qm = q;
    for (std::size_t i = 0; i < q.size(); ++i) {
        qp[i] = q[i] + h;
        qm[i] = q[i] - h;
        g[i] = (value(qp) - value(qm)) / (2.0 * h);
        qp[i] = q[i];
        qm[i] = q[i];
    }
    return g;
}

double chi_t_value(const LinearPHamiltonianSpec& spec, const Vector& u_const, double t,
                   const Vector& q, int panels) {
    if (q.size() != spec.base_dim())
        throw std::invalid_argument("chi_t_value: point dimension mismatch");
    return ChiQuadrature(spec, u_const, t, panels).value(q);
}

MainTheoremReport verify_main_theorem(const LinearPHamiltonianSpec& spec, const Vector& u_const,
                                      int sample_count, std::uint64_t seed) {
    if (sample_count < 1)
        throw std::invalid_argument("verify_main_theorem: sample_count must be >= 1");
    const std::size_t n = spec.base_dim();

    const SymplecticReservoir res = build_linear_p(spec);
    const symp::AffineSymplecticMap update(res.w, res.w_in * u_const);

    MainTheoremReport report;
    report.samples = sample_count;

    const auto dec = symp::decompose_graph_preserving(update);
    report.coupling_norm = dec.coupling_norm;
    report.decomposed = dec.decomposition.has_value();
    if (!report.decomposed) return report;
    const auto& decomp = *dec.decomposition;

    const ChiQuadrature chi(spec, u_const, spec.dt, 16);

    Xoshiro256pp rng(seed, streams::sampling);
    for (int s = 0; s < sample_count; ++s) {
        Vector x(2 * n);
        for (auto& xi : x) xi = rng.uniform(-2.0, 2.0);

        // full map vs tau_{d chi} o lift
        const Vector via_map = update.apply(x);
        const Vector via_decomp = decomp.apply(x);
        for (std::size_t i = 0; i < 2 * n; ++i)
            report.max_map_err = std::max(report.max_map_err,
                                          std::fabs(via_map[i] - via_decomp[i]));

        // fiber translation vs grad chi at the image base point
        const Vector q(x.begin(), x.begin() + n);
        const Vector q_img = decomp.f_base * q + decomp.d_base;
        const Vector fiber = decomp.x_hess * q_img + decomp.y_lin;
        const Vector grad = chi.fd_gradient(q_img, 1e-4);
        for (std::size_t i = 0; i < n; ++i)
            report.max_fiber_gradient_err =
                std::max(report.max_fiber_gradient_err, std::fabs(fiber[i] - grad[i]));

        // transported quadratic-potential Hessians stay symmetric
        Matrix p0(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t jj = i; jj < n; ++jj) {
                const double v = rng.uniform(-1.0, 1.0);
                p0(i, jj) = v;
                p0(jj, i) = v;
            }
        Vector b0(n);
        for (auto& bi : b0) bi = rng.uniform(-1.0, 1.0);
        const auto transported =
            symp::transport_quadratic_graph(update, symp::QuadraticPotential(p0, b0, 0.0));
        if (!transported.potential)
            throw std::logic_error("verify_main_theorem: transport failed on a W12 = 0 map");
        report.hessian_asymmetry =
            std::max(report.hessian_asymmetry, transported.hessian_asymmetry);
    }
    return report;
}

}  // namespace leglab::reservoir
