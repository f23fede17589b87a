#include "qcc/ndet.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "json.hpp"
#include "qcc/bits.hpp"
#include "qcc/errors.hpp"
#include "qcc/exact_rank.hpp"
#include "qcc/qsearch.hpp"

namespace qcc {
namespace {

// nonzero integer in [-9, 9]
double random_nonzero(std::mt19937_64& rng) {
    const int v = std::uniform_int_distribution<int>(1, 9)(rng);
    return std::uniform_int_distribution<int>(0, 1)(rng) ? v : -v;
}

std::optional<std::size_t> exact_rank_if_rational(const CMatrix& m) {
    for (const auto& v : m.entries())
        if (v.imag() != 0.0) return std::nullopt;
    if (auto snapped = snap_to_dyadic(m, 20)) return exact_rank(*snapped);
    return std::nullopt;
}

std::size_t input_count(const VectorFamily& f) {
    if (f.empty()) throw ArgumentError("family must have at least one term");
    const std::size_t count = f.front().size();
    for (const auto& term : f)
        if (term.size() != count) throw ArgumentError("every term must cover the same inputs");
    return count;
}

std::size_t vector_dim(const VectorFamily& f) {
    const std::size_t d = f.front().front().dim();
    for (const auto& term : f)
        for (const auto& v : term)
            if (v.dim() != d) throw ArgumentError("family vectors must share one dimension");
    return d;
}

}  // namespace

CMatrix canonical_witness(FunctionName f, unsigned n) {
    if (f == FunctionName::Custom) throw ArgumentError("no canonical witness for a custom function");
    const CommMatrix table = build_comm_matrix(f, n);
    const std::size_t N = table.size();
    CMatrix m(N, N);
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            switch (f) {
                case FunctionName::EQ: m(x, y) = x == y ? 1.0 : 0.0; break;
                case FunctionName::NEQ: m(x, y) = static_cast<double>(x) - static_cast<double>(y); break;
                case FunctionName::INT: m(x, y) = static_cast<double>(popcount(x & y)); break;
                default: m(x, y) = table.at(x, y) ? 1.0 : 0.0; break;
            }
        }
    return m;
}

bool is_structural_nonzero(Complex v, double max_abs, double tol) { return std::abs(v) > tol * max_abs; }

Counterexamples pattern_mismatches(const CMatrix& m, const CommMatrix& target, double tol) {
    if (m.rows() != target.size() || m.cols() != target.size()) throw ArgumentError("witness shape does not match target");
    const double max = m.max_abs();
    Counterexamples bad;
    for (std::size_t x = 0; x < m.rows(); ++x)
        for (std::size_t y = 0; y < m.cols(); ++y)
            if (is_structural_nonzero(m(x, y), max, tol) != target.at(x, y)) bad.emplace_back(x, y);
    return bad;
}

std::string witness_report_json(const CommMatrix& target, std::size_t rank, bool pattern_ok,
                                const Counterexamples& counterexamples) {
    nlohmann::ordered_json j;
    j["target"] = to_string(target.name());
    j["n"] = target.n();
    j["rank"] = rank;
    j["pattern_ok"] = pattern_ok;
    auto cex = nlohmann::json::array();
    for (const auto& [x, y] : counterexamples) cex.push_back({x, y});
    j["counterexamples"] = std::move(cex);
    return j.dump();
}

std::string NdetWitness::to_json() const { return witness_report_json(target, rank, true, {}); }

NdetWitness verify_ndet_witness(const CMatrix& m, const CommMatrix& target, double tol) {
    auto bad = pattern_mismatches(m, target, tol);
    if (!bad.empty())
        throw PatternMismatch("matrix nonzero pattern differs from " + to_string(target.name()) + " at " +
                                  std::to_string(bad.size()) + " entries",
                              std::move(bad));
    return {m, target, numeric_rank(m, tol), tol, exact_rank_if_rational(m)};
}

std::string AuditReport::to_json() const {
    nlohmann::ordered_json j;
    j["audit"] = name;
    j["n"] = n;
    j["trials"] = trials;
    j["passed"] = passed;
    j["expected_rank"] = expected_rank;
    j["ok"] = ok();
    j["failures"] = failures;
    return j.dump();
}

AuditReport eq_fullrank_audit(unsigned n, std::size_t trials, std::uint64_t seed) {
    if (n < 1 || n > 8) throw ArgumentError("eq-fullrank audit supports 1 <= n <= 8");
    const std::size_t N = std::size_t{1} << n;
    AuditReport r{"eq-fullrank", n, trials, 0, N, {}};
    const CommMatrix eq = build_comm_matrix(FunctionName::EQ, n);
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(split_seed(seed, t));
        CMatrix m(N, N);
        for (std::size_t i = 0; i < N; ++i) m(i, i) = random_nonzero(rng);
        bool ok = pattern_mismatches(m, eq).empty() && numeric_rank(m) == N;
        if (n <= 5) ok = ok && exact_rank(m) == N;
        if (ok) ++r.passed;
        else r.failures.push_back("trial " + std::to_string(t) + " is rank deficient");
    }
    return r;
}

std::vector<std::uint64_t> subset_order(unsigned n) {
    std::vector<std::uint64_t> order(std::size_t{1} << n);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [](std::uint64_t a, std::uint64_t b) { return popcount(a) < popcount(b); });
    return order;
}

AuditReport disj_triangular_audit(unsigned n, std::size_t trials, std::uint64_t seed) {
    if (n < 1 || n > 8) throw ArgumentError("disj-triangular audit supports 1 <= n <= 8");
    const std::size_t N = std::size_t{1} << n;
    const std::uint64_t full = N - 1;
    AuditReport r{"disj-triangular", n, trials, 0, N, {}};
    const CommMatrix disj = build_comm_matrix(FunctionName::DISJ, n);
    const auto order = subset_order(n);

    for (std::size_t i = 0; i < N; ++i) {
        if (!disj.at(order[i], full ^ order[i])) r.failures.push_back("diagonal pair " + std::to_string(i) + " is zero");
        for (std::size_t j = 0; j < i; ++j)
            if (disj.at(order[i], full ^ order[j]))
                r.failures.push_back("entry (" + std::to_string(i) + "," + std::to_string(j) + ") below the diagonal");
    }
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng(split_seed(seed, t));
        CMatrix m(N, N);
        for (std::size_t x = 0; x < N; ++x)
            for (std::size_t y = 0; y < N; ++y)
                if (disj.at(x, y)) m(x, y) = random_nonzero(rng);
        bool ok = numeric_rank(m) == N;
        if (n <= 5) ok = ok && exact_rank(m) == N;
        if (ok) ++r.passed;
        else r.failures.push_back("trial " + std::to_string(t) + " is rank deficient");
    }
    return r;
}

Counterexamples family_hypothesis_violations(const VectorFamily& A, const VectorFamily& B, const CommMatrix& target) {
    if (A.size() != B.size()) throw ArgumentError("families must have the same number of terms");
    const std::size_t X = input_count(A), Y = input_count(B);
    if (X != target.size() || Y != target.size()) throw ArgumentError("families do not match the target size");
    const std::size_t m = A.size(), dA = vector_dim(A), dB = vector_dim(B);
    std::vector<double> norm(X * Y, 0.0);
    double max = 0.0;
    std::vector<Complex> sum(dA * dB);
    for (std::size_t x = 0; x < X; ++x)
        for (std::size_t y = 0; y < Y; ++y) {
            // the vector itself, not a Gram sum: cancellation there squares the rounding error
            std::fill(sum.begin(), sum.end(), Complex{});
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t a = 0; a < dA; ++a) {
                    const Complex av = A[i][x][a];
                    if (av == Complex{}) continue;
                    for (std::size_t b = 0; b < dB; ++b) sum[a * dB + b] += av * B[i][y][b];
                }
            double s = 0.0;
            for (const auto& v : sum) s += std::norm(v);
            norm[x * Y + y] = std::sqrt(s);
            max = std::max(max, norm[x * Y + y]);
        }
    Counterexamples bad;
    for (std::size_t x = 0; x < X; ++x)
        for (std::size_t y = 0; y < Y; ++y)
            if ((norm[x * Y + y] > 1e-9 * max) != target.at(x, y)) bad.emplace_back(x, y);
    return bad;
}

ScalarizationTrial scalarize_once(const VectorFamily& A, const VectorFamily& B, const CommMatrix& target,
                                  unsigned coeff_bits, std::uint64_t seed) {
    if (coeff_bits < 1 || coeff_bits > 52) throw ArgumentError("coeff_bits must lie in 1..52");
    const std::size_t X = input_count(A), Y = input_count(B), m = A.size();
    if (B.size() != m) throw ArgumentError("families must have the same number of terms");
    const std::size_t dA = vector_dim(A), dB = vector_dim(B);

    ScalarizationTrial t;
    t.m = m;
    t.coeff_range.bits = coeff_bits;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, t.coeff_range.size() - 1);
    for (std::size_t j = 0; j < dA; ++j) t.alpha.push_back(t.coeff_range.value(pick(rng)));
    for (std::size_t k = 0; k < dB; ++k) t.beta.push_back(t.coeff_range.value(pick(rng)));

    t.a_table = CMatrix(X, m);
    t.b_table = CMatrix(m, Y);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t x = 0; x < X; ++x)
            for (std::size_t j = 0; j < dA; ++j) t.a_table(x, i) += t.alpha[j] * A[i][x][j];
        for (std::size_t y = 0; y < Y; ++y)
            for (std::size_t k = 0; k < dB; ++k) t.b_table(i, y) += t.beta[k] * B[i][y][k];
    }
    t.v_table = t.a_table * t.b_table;
    t.success = pattern_mismatches(t.v_table, target).empty();
    return t;
}

ScalarizationResult scalarize_families(const VectorFamily& A, const VectorFamily& B, const CommMatrix& target,
                                     unsigned coeff_bits, std::uint64_t seed) {
    const auto violations = family_hypothesis_violations(A, B, target);
    if (!violations.empty())
        throw PreconditionError("sum of A_i (x) B_i does not vanish exactly on the zeros of the target (" +
                                std::to_string(violations.size()) + " pairs)");
    const double bound = 2.0 * static_cast<double>(target.ones()) / static_cast<double>(std::size_t{1} << coeff_bits);
    for (unsigned attempt = 0; attempt <= kScalarizationRetries; ++attempt) {
        auto t = scalarize_once(A, B, target, coeff_bits, split_seed(seed, attempt));
        if (t.success) {
            NdetWitness w = verify_ndet_witness(t.v_table, target);
            return {std::move(t), std::move(w), attempt + 1, bound};
        }
    }
    throw ProbabilisticFailure("scalarization failed on every attempt; per-attempt failure bound " +
                               std::to_string(bound));
}

ProtocolWitness protocol_to_witness(const Protocol& p, const CommMatrix& target, std::uint64_t seed,
                                    unsigned coeff_bits) {
    if (p.input_bits() != target.n()) throw ArgumentError("protocol input size differs from the target's");
    const auto P = acceptance_matrix(p);
    const auto bad = pattern_mismatches(P.as_matrix(), target);
    if (!bad.empty())
        throw PreconditionError("protocol is not non-deterministic for " + to_string(target.name()) + " (" +
                                std::to_string(bad.size()) + " mismatched pairs)");
    const std::size_t N = target.size();
    const unsigned C = p.layout().channel_qubits;
    const std::uint64_t out_mask = std::uint64_t{1} << (C - 1);

    std::vector<PartyBranches> alice_br, bob_br;
    for (std::size_t x = 0; x < N; ++x) alice_br.push_back(party_branches(p, Party::Alice, x));
    for (std::size_t y = 0; y < N; ++y) bob_br.push_back(party_branches(p, Party::Bob, y));

    ProtocolWitness out{ScalarizationResult{{}, {CMatrix(), target, 0, kDefaultRankTol, std::nullopt}, 0, 0.0}, 0,
                        alice_br.front().ell};
    const auto& content = alice_br.front().channel_content;
    VectorFamily A, B;
    for (std::size_t i = 0; i < content.size(); ++i) {
        if (!(content[i] & out_mask)) continue;
        std::vector<CVector> a, b;
        for (std::size_t x = 0; x < N; ++x) a.push_back(alice_br[x].vectors[i]);
        // Bob's side carries the channel content: B'_i = |c_i> (x) B_i
        const CVector c = CVector::basis(std::size_t{1} << C, content[i]);
        for (std::size_t y = 0; y < N; ++y) b.push_back(tensor(c, bob_br[y].vectors[i]));
        A.push_back(std::move(a));
        B.push_back(std::move(b));
    }
    out.accepting_transcripts = A.size();
    if (A.empty()) throw PreconditionError("protocol never accepts");
    out.scalarization = scalarize_families(A, B, target, coeff_bits, seed);
    return out;
}

}  // namespace qcc
