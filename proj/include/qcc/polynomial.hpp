#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcc/protocol.hpp"

namespace qcc {

inline constexpr unsigned kMaxAndDependentBits = 6;

/// True iff P(x, y) depends only on x AND y (within tol), checked over all pairs.
bool is_and_dependent(const AcceptanceMatrix& P, double tol = 1e-9);

/// Multilinear polynomial sum_S c_S prod_{i in S} z_i. Subsets are masks in
/// the same bit order as inputs: variable i is bit (n - 1 - i).
struct FoldedPolynomial {
    unsigned n = 0;
    std::vector<double> coeffs;

    double evaluate(std::uint64_t z) const;
    std::size_t monomials(double tol = 1e-9) const;
};

/// Coefficients from the values g(z) on the cube: c_S = sum_{T subset S} (-1)^{|S\T|} g(T).
FoldedPolynomial mobius_transform(unsigned n, const std::vector<double>& g);

/// Identifies x_i with y_i: g(z) = P(z, z). Requires AND-dependence.
FoldedPolynomial fold_to_polynomial(const AcceptanceMatrix& P);

/// P(x, y) = g(x AND y).
AcceptanceMatrix lift_and_dependent(unsigned n, const std::vector<double>& g);

struct MonomialRankReport {
    std::size_t monomials = 0;
    std::size_t rank = 0;
    bool ok = false;
    /// Exact counterparts when the table is dyadic rational.
    std::optional<std::size_t> exact_monomials;
    std::optional<std::size_t> exact_rank;
};

MonomialRankReport monomial_rank_audit(const AcceptanceMatrix& P, double tol = 1e-9);

struct NorApproxReport {
    bool ok = false;
    double max_error = 0.0;
    std::size_t monomials = 0;
    /// 2^{sqrt(n/12)}: the known lower bound on monomials of any 1/3-approximation.
    double predicted_monomial_bound = 0.0;
};

NorApproxReport nor_approx_audit(const FoldedPolynomial& poly, double eps);

}  // namespace qcc
