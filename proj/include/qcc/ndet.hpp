#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcc/comm_matrix.hpp"
#include "qcc/protocol.hpp"
#include "qcc/tensor.hpp"

namespace qcc {

using Counterexamples = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

/// Standard non-deterministic matrix for a named function: identity for EQ,
/// x - y for NEQ, |x AND y| for INT, and the 0/1 table itself for DISJ (full
/// rank by the triangular argument).
CMatrix canonical_witness(FunctionName f, unsigned n);

/// |entry| > tol * max|entry| counts as nonzero.
bool is_structural_nonzero(Complex v, double max_abs, double tol);

Counterexamples pattern_mismatches(const CMatrix& m, const CommMatrix& target, double tol = kDefaultRankTol);

struct NdetWitness {
    CMatrix matrix;
    CommMatrix target;
    std::size_t rank = 0;
    double tol = kDefaultRankTol;
    std::optional<std::size_t> exact_rank;

    std::string to_json() const;
};

std::string witness_report_json(const CommMatrix& target, std::size_t rank, bool pattern_ok,
                                const Counterexamples& counterexamples);

/// Accepts m iff its nonzero pattern is exactly target's 1-set; otherwise
/// throws PatternMismatch listing every offending (x, y).
NdetWitness verify_ndet_witness(const CMatrix& m, const CommMatrix& target, double tol = kDefaultRankTol);

struct AuditReport {
    std::string name;
    unsigned n = 0;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t expected_rank = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty() && passed == trials; }
    std::string to_json() const;
};

/// Random matrices with the EQ pattern (nonzero integer diagonal) all have full rank.
AuditReport eq_fullrank_audit(unsigned n, std::size_t trials, std::uint64_t seed);

/// Rows ordered by Hamming weight then value: a linear extension of subset order.
std::vector<std::uint64_t> subset_order(unsigned n);

/// Rows in subset order, columns the complements in the same order: every
/// DISJ-patterned matrix is upper triangular with nonzero diagonal.
AuditReport disj_triangular_audit(unsigned n, std::size_t trials, std::uint64_t seed);

// ---- scalarization ----

/// A family of vector-valued functions: f[i][input] is the i-th term's vector.
using VectorFamily = std::vector<std::vector<CVector>>;

struct CoefficientSet {
    unsigned bits = 24;
    std::size_t size() const { return std::size_t{1} << bits; }
    /// 1 + k / 2^bits: distinct, nonzero, in [1, 2).
    double value(std::uint64_t k) const { return 1.0 + static_cast<double>(k) / static_cast<double>(size()); }
};

struct ScalarizationTrial {
    std::size_t m = 0;
    CoefficientSet coeff_range;
    std::vector<double> alpha, beta;
    CMatrix a_table;  // rows x, columns i
    CMatrix b_table;  // rows i, columns y
    CMatrix v_table;  // a_table * b_table
    bool success = false;
};

/// Checks sum_i A_i(x) (x) B_i(y) = 0 exactly where target is 0 (relative 1e-9).
Counterexamples family_hypothesis_violations(const VectorFamily& A, const VectorFamily& B, const CommMatrix& target);

ScalarizationTrial scalarize_once(const VectorFamily& A, const VectorFamily& B, const CommMatrix& target,
                                  unsigned coeff_bits, std::uint64_t seed);

struct ScalarizationResult {
    ScalarizationTrial trial;
    NdetWitness witness;
    unsigned attempts = 0;
    /// Per-attempt failure bound: (number of 1-entries) * 2 / |I|.
    double failure_bound = 0.0;
};

inline constexpr unsigned kScalarizationRetries = 32;

/// Randomly collapses the families to scalars; on success the product of the
/// scalar tables is a non-deterministic matrix of rank <= m.
ScalarizationResult scalarize_families(const VectorFamily& A, const VectorFamily& B, const CommMatrix& target,
                                     unsigned coeff_bits, std::uint64_t seed);

struct ProtocolWitness {
    ScalarizationResult scalarization;
    std::size_t accepting_transcripts = 0;  // |S|
    unsigned ell = 0;
};

/// Families {A_i, |c_i> (x) B_i : i accepting} from the transcript
/// decomposition, scalarized into a witness of rank <= |S|.
ProtocolWitness protocol_to_witness(const Protocol& p, const CommMatrix& target, std::uint64_t seed,
                                    unsigned coeff_bits = 24);

}  // namespace qcc
