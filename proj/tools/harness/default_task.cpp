#include "default_task.hpp"

#include <cmath>
#include <numbers>

namespace leglab::harness {

ReadoutTaskSpec default_readout_task() {
    constexpr std::size_t n = 16;      // oscillator coordinates
    constexpr std::size_t blocks = 8;  // rotation pairs

    Matrix s(n, n);
    for (std::size_t b = 0; b < blocks; ++b) {
        const double omega = std::numbers::pi * (2.0 * b + 1.0) / 16.0;
        s(2 * b, 2 * b + 1) = -omega;
        s(2 * b + 1, 2 * b) = omega;
    }
    Matrix cq(n, 1), cp(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        cq(i, 0) = std::cos(1.7 * static_cast<double>(i) + 0.3);
        cp(i, 0) = std::sin(2.3 * static_cast<double>(i) + 0.9);
    }
    reservoir::LinearPHamiltonianSpec sr(std::move(s), Matrix(n, n), std::move(cq),
                                         std::move(cp), 1.0);

    const double angle = 0.7;
    const double rho = 0.9;
    Matrix a{{rho * std::cos(angle), -rho * std::sin(angle)},
             {rho * std::sin(angle), rho * std::cos(angle)}};
    legdyn::LtiStateSpace generator(std::move(a), SpdMatrix(Matrix{{0.04, 0.0}, {0.0, 0.04}}),
                                    Matrix{{1.0, 0.0}}, SpdMatrix(Matrix{{0.04}}));

    expfam::GaussianNatural theta0(Vector{0.0, 0.0},
                                   SpdMatrix(Matrix{{1.0, 0.0}, {0.0, 1.0}}));

    return ReadoutTaskSpec{std::move(sr),
                           std::move(generator),
                           std::move(theta0),
                           Vector{1.0, 0.0},
                           1200,
                           100,
                           0.6,
                           {1e-6, 1e-4, 1e-2},
                           42,
                           16};
}

}  // namespace leglab::harness
