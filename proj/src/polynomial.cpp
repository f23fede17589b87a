#include "qcc/polynomial.hpp"

#include <cmath>

#include "qcc/errors.hpp"
#include "qcc/exact_rank.hpp"

namespace qcc {
namespace {

void require_and_dependent(const AcceptanceMatrix& P) {
    if (P.n() > kMaxAndDependentBits) throw CapacityError("AND-dependence is checked exhaustively up to n = 6");
    if (!is_and_dependent(P)) throw PreconditionError("acceptance matrix is not a function of x AND y");
}

}  // namespace

bool is_and_dependent(const AcceptanceMatrix& P, double tol) {
    if (P.n() > kMaxAndDependentBits) throw CapacityError("AND-dependence is checked exhaustively up to n = 6");
    const std::size_t N = P.size();
    // every pair must agree with the representative (z, z)
    for (std::uint64_t x = 0; x < N; ++x)
        for (std::uint64_t y = 0; y < N; ++y) {
            const std::uint64_t z = x & y;
            if (std::abs(P.at(x, y) - P.at(z, z)) > tol) return false;
        }
    return true;
}

double FoldedPolynomial::evaluate(std::uint64_t z) const {
    double s = 0.0;
    for (std::uint64_t S = 0; S < coeffs.size(); ++S)
        if ((S & z) == S) s += coeffs[S];
    return s;
}

std::size_t FoldedPolynomial::monomials(double tol) const {
    std::size_t k = 0;
    for (double c : coeffs)
        if (std::abs(c) > tol) ++k;
    return k;
}

FoldedPolynomial mobius_transform(unsigned n, const std::vector<double>& g) {
    if (g.size() != (std::size_t{1} << n)) throw ArgumentError("cube table must have 2^n values");
    FoldedPolynomial p{n, g};
    for (unsigned b = 0; b < n; ++b)
        for (std::uint64_t S = 0; S < p.coeffs.size(); ++S)
            if (S & (std::uint64_t{1} << b)) p.coeffs[S] -= p.coeffs[S ^ (std::uint64_t{1} << b)];
    return p;
}

FoldedPolynomial fold_to_polynomial(const AcceptanceMatrix& P) {
    require_and_dependent(P);
    std::vector<double> g(P.size());
    for (std::uint64_t z = 0; z < P.size(); ++z) g[z] = P.at(z, z);
    return mobius_transform(P.n(), g);
}

AcceptanceMatrix lift_and_dependent(unsigned n, const std::vector<double>& g) {
    const std::size_t N = std::size_t{1} << n;
    if (g.size() != N) throw ArgumentError("cube table must have 2^n values");
    std::vector<double> v(N * N);
    for (std::uint64_t x = 0; x < N; ++x)
        for (std::uint64_t y = 0; y < N; ++y) v[x * N + y] = g[x & y];
    return AcceptanceMatrix(n, std::move(v));
}

MonomialRankReport monomial_rank_audit(const AcceptanceMatrix& P, double tol) {
    const FoldedPolynomial poly = fold_to_polynomial(P);
    MonomialRankReport r;
    r.monomials = poly.monomials(tol);
    const CMatrix m = P.as_matrix();
    r.rank = numeric_rank(m, tol);
    r.ok = r.monomials == r.rank;
    if (auto snapped = snap_to_dyadic(m, 20)) {
        r.exact_rank = exact_rank(*snapped);
        // Moebius sums of dyadic values with small denominators are exact in double
        std::vector<double> g(P.size());
        for (std::uint64_t z = 0; z < P.size(); ++z) g[z] = (*snapped)(z, z).real();
        std::size_t k = 0;
        for (double c : mobius_transform(P.n(), g).coeffs)
            if (c != 0.0) ++k;
        r.exact_monomials = k;
        r.ok = r.ok && *r.exact_rank == k;
    }
    return r;
}

NorApproxReport nor_approx_audit(const FoldedPolynomial& poly, double eps) {
    NorApproxReport r;
    for (std::uint64_t z = 0; z < poly.coeffs.size(); ++z) {
        const double nor = z == 0 ? 1.0 : 0.0;
        r.max_error = std::max(r.max_error, std::abs(poly.evaluate(z) - nor));
    }
    r.ok = r.max_error <= eps;
    r.monomials = poly.monomials();
    r.predicted_monomial_bound = std::pow(2.0, std::sqrt(static_cast<double>(poly.n) / 12.0));
    return r;
}

}  // namespace qcc
