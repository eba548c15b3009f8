#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace leglab {

using Vector = std::vector<double>;

/// Dense real matrix, row-major storage. All dimensions are desk scale
/// (tens, not thousands); every algorithm in this library is unblocked.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, Vector entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const Vector& entries() const noexcept { return data_; }
    Vector& entries() noexcept { return data_; }

    Matrix transpose() const;
    Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t row0, std::size_t col0, const Matrix& b);
    Vector row(std::size_t i) const;
    Vector col(std::size_t j) const;
    double trace() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(Matrix lhs, double s);
Matrix operator*(double s, Matrix rhs);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);
Matrix operator-(const Matrix& a);

// Vector helpers shared across modules.
Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double s, Vector v);
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
double max_abs(const Vector& v);
Matrix outer(const Vector& a, const Vector& b);

double frobenius_norm(const Matrix& a);
double frobenius_inner(const Matrix& a, const Matrix& b);
double one_norm(const Matrix& a);       // max column sum
double max_abs(const Matrix& a);
double symmetry_gap(const Matrix& a);   // ||a - a^T||_F
Matrix symmetrize(const Matrix& a);     // (a + a^T)/2

bool all_finite(const Vector& v);
bool all_finite(const Matrix& a);
void require_finite(const Matrix& a, const std::string& who);
void require_finite(const Vector& v, const std::string& who);
void require_square(const Matrix& a, const std::string& who);

/// Symmetric positive-definite matrix, validated on construction:
/// relative symmetry gap below 1e-12 (Frobenius) and strictly positive
/// Cholesky pivots. The single SPD gate used by every module.
class SpdMatrix {
public:
    explicit SpdMatrix(Matrix m);

    const Matrix& mat() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    static constexpr double symmetry_tol = 1e-12;

private:
    Matrix m_;
};

}  // namespace leglab
