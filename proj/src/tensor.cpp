#include "qcc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qcc/errors.hpp"

namespace qcc {
namespace {

using EMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void require_finite(std::span<const Complex> xs) {
    for (const auto& z : xs)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw ArgumentError("non-finite entry");
}

EMatrix to_eigen(const CMatrix& m) {
    EMatrix e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
    return e;
}

template <typename Derived>
CMatrix from_eigen(const Eigen::MatrixBase<Derived>& e) {
    CMatrix m(e.rows(), e.cols());
    for (Eigen::Index r = 0; r < e.rows(); ++r)
        for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
    return m;
}

}  // namespace

CVector::CVector(std::vector<Complex> entries) : data_(std::move(entries)) { require_finite(data_); }

CVector CVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw ArgumentError("basis index out of range");
    CVector v(dim);
    v[index] = 1.0;
    return v;
}

double CVector::squared_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return s;
}

double CVector::norm() const { return std::sqrt(squared_norm()); }

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw ArgumentError("entry count does not match shape");
    require_finite(data_);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw ArgumentError("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = std::conj((*this)(r, c));
    return t;
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw ArgumentError("matrix product shape mismatch");
    CMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex f = a(r, k);
            if (f == Complex{}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += f * b(k, c);
        }
    return out;
}

CVector operator*(const CMatrix& a, const CVector& v) {
    if (a.cols() != v.dim()) throw ArgumentError("matrix-vector shape mismatch");
    CVector out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        Complex s{};
        for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

double l2_distance(const CVector& a, const CVector& b) {
    if (a.dim() != b.dim()) throw ArgumentError("dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s);
}

CMatrix SvdResult::reconstruct() const {
    CMatrix us(u.rows(), v.rows());
    for (std::size_t r = 0; r < u.rows(); ++r)
        for (std::size_t k = 0; k < sigma.size(); ++k) us(r, k) = u(r, k) * sigma[k];
    return us * v;
}

SvdResult svd(const CMatrix& m) {
    if (m.empty()) throw ArgumentError("svd of an empty matrix");
    Eigen::JacobiSVD<EMatrix> solver(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    SvdResult out;
    out.u = from_eigen(solver.matrixU());
    out.v = from_eigen(solver.matrixV().adjoint());
    const auto& s = solver.singularValues();
    out.sigma.assign(s.data(), s.data() + s.size());
    for (double x : out.sigma)
        if (!std::isfinite(x)) throw NumericalFailure("svd did not converge");
    return out;
}

std::size_t numeric_rank(const CMatrix& m, double tol) {
    if (!(tol > 0.0)) throw ArgumentError("rank tolerance must be positive");
    if (m.empty() || m.max_abs() == 0.0) return 0;
    const auto s = svd(m).sigma;
    const double cut = tol * s.front();
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](double x) { return x > cut; }));
}

CVector tensor(const CVector& a, const CVector& b) {
    CVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
    return out;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac)
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
    return out;
}

bool is_unitary(const CMatrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    const std::size_t d = u.rows();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < d; ++k) s += u(i, k) * std::conj(u(j, k));
            if (std::abs(s - (i == j ? Complex{1.0} : Complex{})) > tol) return false;
        }
    return true;
}

void apply_on_qubits_inplace(std::span<Complex> state, const CMatrix& u,
                             std::span<const unsigned> targets) {
    const std::size_t k = targets.size();
    const std::size_t sub = std::size_t{1} << k;
    unsigned nq = 0;
    while ((std::size_t{1} << nq) < state.size()) ++nq;

    std::vector<std::size_t> masks(k);
    std::size_t all = 0;
    for (std::size_t t = 0; t < k; ++t) {
        masks[t] = std::size_t{1} << (nq - 1 - targets[t]);
        all |= masks[t];
    }
    // offsets[l] = global index bits for local index l (targets[0] most significant)
    std::vector<std::size_t> offsets(sub, 0);
    for (std::size_t l = 0; l < sub; ++l)
        for (std::size_t t = 0; t < k; ++t)
            if ((l >> (k - 1 - t)) & 1u) offsets[l] |= masks[t];

    std::vector<Complex> in(sub), out(sub);
    for (std::size_t base = 0; base < state.size(); ++base) {
        if (base & all) continue;
        bool any = false;
        for (std::size_t l = 0; l < sub; ++l) {
            in[l] = state[base | offsets[l]];
            any = any || in[l] != Complex{};
        }
        if (!any) continue;
        for (std::size_t r = 0; r < sub; ++r) {
            Complex s{};
            for (std::size_t c = 0; c < sub; ++c) s += u(r, c) * in[c];
            out[r] = s;
        }
        for (std::size_t l = 0; l < sub; ++l) state[base | offsets[l]] = out[l];
    }
}

CVector apply_on_qubits(const CVector& state, const CMatrix& u, std::span<const unsigned> targets) {
    unsigned nq = 0;
    while ((std::size_t{1} << nq) < state.dim()) ++nq;
    if ((std::size_t{1} << nq) != state.dim()) throw ArgumentError("state dimension is not a power of two");
    const std::size_t k = targets.size();
    if (u.rows() != (std::size_t{1} << k) || u.cols() != u.rows())
        throw ArgumentError("gate dimension does not match the number of targets");
    std::vector<bool> seen(nq, false);
    for (unsigned t : targets) {
        if (t >= nq) throw ArgumentError("target qubit out of range");
        if (seen[t]) throw ArgumentError("duplicate target qubit");
        seen[t] = true;
    }
    if (!is_unitary(u)) throw ContractViolation("gate is not unitary");
    CVector out = state;
    apply_on_qubits_inplace(out.entries(), u, targets);
    return out;
}

CMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex{g(rng), g(rng)};
    return m;
}

CMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
    const EMatrix a = to_eigen(random_matrix(dim, dim, rng));
    Eigen::HouseholderQR<EMatrix> qr(a);
    EMatrix q = qr.householderQ();
    const EMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const Complex d = r(i, i);
        const double ad = std::abs(d);
        if (ad > 0) q.col(i) *= d / ad;
    }
    return from_eigen(q);
}

CMatrix complete_unitary(const CVector& v) {
    const std::size_t d = v.dim();
    if (d == 0 || std::abs(v.norm() - 1.0) > 1e-9) throw ArgumentError("complete_unitary needs a unit vector");
    std::vector<std::vector<Complex>> cols;
    cols.emplace_back(v.entries().begin(), v.entries().end());
    for (std::size_t e = 0; e < d && cols.size() < d; ++e) {
        std::vector<Complex> w(d, Complex{});
        w[e] = 1.0;
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : cols) {
                Complex ip{};
                for (std::size_t i = 0; i < d; ++i) ip += std::conj(q[i]) * w[i];
                for (std::size_t i = 0; i < d; ++i) w[i] -= ip * q[i];
            }
        double nrm = 0.0;
        for (const auto& z : w) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-6) continue;
        for (auto& z : w) z /= nrm;
        cols.push_back(std::move(w));
    }
    CMatrix u(d, d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < d; ++r) u(r, c) = cols[c][r];
    return u;
}

}  // namespace qcc
