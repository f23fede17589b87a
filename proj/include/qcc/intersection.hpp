#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcc/qsearch.hpp"

namespace qcc {

/// Input bits, x[i] = x_i (index 0 is the leftmost character).
using Bits = std::vector<std::uint8_t>;

Bits bits_from_string(std::string_view s);
std::string bits_to_string(const Bits& b);
bool intersects(const Bits& x, const Bits& y);

/// Rules are real-valued so the cost model can be evaluated far beyond
/// simulable sizes (n up to 2^64).
struct RecursionConfig {
    std::function<double(double)> block_size_rule;
    std::uint64_t base_threshold = 64;
    double kappa = 2.0;
    /// Empty: ceil(kappa * sqrt(n) / log2 n).
    std::function<double(double)> amplification_rounds_rule;

    RecursionConfig();
    void validate() const;
    double block_size(double n) const;
    double rounds(double n) const;
};

/// max(1, ceil(log2(n)^2))
double default_block_size(double n);

/// Cost of checking a measured candidate: send the index, return x_i, confirm.
unsigned verification_cost(std::uint64_t n);

struct IntersectionOutcome {
    std::optional<std::uint64_t> index;
    std::uint64_t cost = 0;  // qubits communicated, as instrumented
    QSearchResult search;
    bool delegated = false;  // recursive call that ran the base protocol
};

/// Grover search over the index register with the distributed AND oracle as
/// the marking reflection. Inputs are padded with zeros to a power of two.
IntersectionOutcome base_intersection(const Bits& x, const Bits& y, const QSearchConfig& cfg);

/// Block recursion: a superposition over blocks of the coherent inner
/// procedure, searched by amplitude amplification with classical verification.
IntersectionOutcome recursive_intersection(const Bits& x, const Bits& y, const RecursionConfig& rcfg,
                                           const QSearchConfig& cfg);

/// Upper bound on the base protocol's cost with K * ceil(sqrt(n)) applications.
double base_cost(double n, double K);

/// C_1 = 2; C_n = K sqrt(n)/log n * (C_b + K' log n), with the base protocol's
/// cost standing in for C_b when the block is not smaller than n.
double cost_model(double n, const RecursionConfig& rcfg, double K, double K_prime);

/// Largest cost the base protocol can incur within cfg's budget: every
/// application is charged at most one oracle call or one verification.
std::uint64_t base_worst_case_cost(std::uint64_t n, const QSearchConfig& cfg);

/// Cost of preparing the coherent block superposition over n indices (the
/// c_A charged per application in the top-level search).
std::uint64_t block_superposition_cost(std::uint64_t n, const RecursionConfig& rcfg);

/// Largest cost recursive_intersection can incur within cfg's budget; equals
/// base_worst_case_cost whenever the configuration delegates at n.
std::uint64_t recursive_worst_case_cost(std::uint64_t n, const RecursionConfig& rcfg, const QSearchConfig& cfg);

/// Smallest K' (to 1e-6 relative) with cost_model(n, K, K') >= cost for every
/// observed (n, cost) pair.
double fit_k_prime(const RecursionConfig& rcfg, const std::vector<std::pair<double, double>>& observed,
                   double K = 1.0);

struct CostConstants {
    double K = 1.0;
    double K_prime = 1.0;
};

/// K = 1 and the smallest K' whose model covers the worst-case cost of
/// recursive_intersection under rcfg and the default budget at n in {1, 4, 16, 64}.
CostConstants fitted_cost_constants(const RecursionConfig& rcfg);

/// Number of times log2 must be applied to reach a value <= 1.
unsigned log_star(double n);

struct LogStarFit {
    std::vector<double> probes;
    std::vector<double> ratios;  // cost_model(n) / sqrt(n)
    bool ratios_nondecreasing = false;
    double kappa = 0.0;
    double c = 0.0;
    bool bounded = false;  // every ratio <= kappa * c^{log* n} and c <= 16
};

LogStarFit fit_log_star(const RecursionConfig& rcfg, double K, double K_prime,
                        std::vector<double> probes = {16.0, 256.0, 65536.0, 4294967296.0,
                                                      18446744073709551616.0});

}  // namespace qcc
