#include "qcc/exact_rank.hpp"

#include <climits>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcc/errors.hpp"

namespace qcc {

using boost::multiprecision::cpp_int;

std::size_t exact_rank(const CMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    // decompose each entry as mantissa * 2^exp with an integral 53-bit mantissa
    std::vector<long long> mant(rows * cols, 0);
    std::vector<int> expo(rows * cols, 0);
    int min_exp = INT_MAX;
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const Complex z = m.entries()[i];
        if (z.imag() != 0.0) throw ArgumentError("exact_rank needs a real matrix");
        if (z.real() == 0.0) continue;
        int e = 0;
        const double f = std::frexp(z.real(), &e);
        mant[i] = static_cast<long long>(std::ldexp(f, 53));
        expo[i] = e - 53;
        min_exp = std::min(min_exp, expo[i]);
    }
    if (min_exp == INT_MAX) return 0;

    std::vector<std::vector<cpp_int>> a(rows, std::vector<cpp_int>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t i = r * cols + c;
            if (mant[i] == 0) continue;
            a[r][c] = cpp_int(mant[i]) << (expo[i] - min_exp);
        }

    // Bareiss elimination with row pivoting; rank = number of pivots
    cpp_int prev = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k)
                a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
            a[r][c] = 0;
        }
        prev = a[rank][c];
        ++rank;
    }
    return rank;
}

std::optional<CMatrix> snap_to_dyadic(const CMatrix& m, unsigned denominator_bits, double tol) {
    const double scale = std::ldexp(1.0, static_cast<int>(denominator_bits));
    CMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Complex z = m(r, c);
            if (std::abs(z.imag()) > tol) return std::nullopt;
            const double snapped = std::round(z.real() * scale) / scale;
            if (std::abs(snapped - z.real()) > tol) return std::nullopt;
            out(r, c) = snapped;
        }
    return out;
}

}  // namespace qcc
