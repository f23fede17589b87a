#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>

#include "qcc/tensor.hpp"

namespace qcc {

/// max_applications = factor * ceil(sqrt(n)) in the default configuration.
inline constexpr double kQSearchBudgetFactor = 8.0;

using BasisPredicate = std::function<bool(std::uint64_t)>;

struct QSearchConfig {
    double schedule_growth = 1.2;
    std::uint64_t max_applications = 64;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// Budget used throughout: enough applications of the preparation for a
/// single marked item among n to be found with probability well above 1/2.
QSearchConfig default_qsearch_config(std::uint64_t n, std::uint64_t seed);

struct QSearchResult {
    std::optional<std::uint64_t> outcome;
    /// Applications of the preparation or its inverse (1 + 2j per round).
    std::uint64_t applications = 0;
    /// Predicate reflections (j per round).
    std::uint64_t iterations = 0;
    /// Measured candidates, each checked against the predicate.
    std::uint64_t rounds = 0;
};

/// Deterministic per-trial seed derived from a master seed (SplitMix64).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

/// One Grover iterate on |psi> = A|0>: flip marked amplitudes, then reflect
/// about psi.
void grover_iterate(std::span<Complex> v, const CVector& psi, const BasisPredicate& chi);

/// State after `iterations` Grover iterates applied to psi.
CVector amplify(const CVector& psi, const BasisPredicate& chi, unsigned iterations);

/// Total probability mass on marked basis states.
double marked_probability(const CVector& v, const BasisPredicate& chi);

/// Amplitude amplification with unknown success probability: each round
/// picks j uniformly below a growing cap, runs j iterates and measures.
/// Gives up (returns no outcome) when the next round would exceed the budget.
QSearchResult qsearch(const CVector& psi, const BasisPredicate& chi, const QSearchConfig& cfg);

/// Same, with the preparation given as a unitary; psi is its first column.
QSearchResult qsearch(const CMatrix& prepare, const BasisPredicate& chi, const QSearchConfig& cfg);

/// Samples a basis state with probability |v_i|^2.
std::uint64_t measure(const CVector& v, std::mt19937_64& rng);

}  // namespace qcc
