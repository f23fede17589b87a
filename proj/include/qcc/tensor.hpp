#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace qcc {

using Complex = std::complex<double>;

/// Dense complex vector; entries are always finite.
class CVector {
public:
    CVector() = default;
    explicit CVector(std::size_t dim) : data_(dim, Complex{0.0, 0.0}) {}
    explicit CVector(std::vector<Complex> entries);
    CVector(std::initializer_list<Complex> entries) : CVector(std::vector<Complex>(entries)) {}

    static CVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return data_.size(); }
    const Complex& operator[](std::size_t i) const { return data_[i]; }
    Complex& operator[](std::size_t i) { return data_[i]; }
    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    double norm() const;
    double squared_norm() const;

    friend bool operator==(const CVector&, const CVector&) = default;

private:
    std::vector<Complex> data_;
};

/// Dense complex matrix stored row-major; entries are always finite.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static CMatrix identity(std::size_t dim);
    static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
    static CMatrix diagonal(std::span<const double> values);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const Complex> entries() const { return data_; }

    CMatrix transpose() const;
    CMatrix adjoint() const;
    double max_abs() const;

    friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CVector operator*(const CMatrix& a, const CVector& v);

/// Largest absolute entry of a - b (shapes must agree).
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double l2_distance(const CVector& a, const CVector& b);

/// Factorization in the convention m = u * diag(sigma) * v, with `v` already the
/// adjoint of the conventional right singular factor.
struct SvdResult {
    CMatrix u;
    std::vector<double> sigma;  // descending, length min(rows, cols)
    CMatrix v;

    /// u * diag(sigma) * v with the rectangular diagonal padded by zeros.
    CMatrix reconstruct() const;
};

SvdResult svd(const CMatrix& m);

inline constexpr double kDefaultRankTol = 1e-9;

/// Number of singular values above tol * sigma_max; 0 for the zero matrix.
std::size_t numeric_rank(const CMatrix& m, double tol = kDefaultRankTol);

/// Kronecker product; `a` indexes the most significant block.
CVector tensor(const CVector& a, const CVector& b);
CMatrix tensor(const CMatrix& a, const CMatrix& b);

bool is_unitary(const CMatrix& u, double tol = 1e-9);

/// Applies u to the listed qubits of a 2^N-dimensional state. Qubit 0 is the
/// leftmost tensor factor; targets[0] is the most significant index bit of u.
CVector apply_on_qubits(const CVector& state, const CMatrix& u, std::span<const unsigned> targets);

/// In-place variant without the unitarity check, for callers that validated
/// the gate already.
void apply_on_qubits_inplace(std::span<Complex> state, const CMatrix& u,
                             std::span<const unsigned> targets);

/// Haar-ish random unitary: QR of a complex Gaussian matrix with phase-fixed R.
CMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);
CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng);

/// Unitary whose first column is the unit vector v.
CMatrix complete_unitary(const CVector& v);

}  // namespace qcc
