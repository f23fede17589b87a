#include "qcc/intersection.hpp"

#include <algorithm>
#include <cmath>

#include "qcc/bits.hpp"
#include "qcc/errors.hpp"
#include "qcc/zoo.hpp"

namespace qcc {
namespace {

// Coherent output of an unmeasured sub-procedure: amplitudes over
// (auxiliary registers, index) with the global input index of each entry.
struct CoherentState {
    CVector amp;
    std::vector<std::uint64_t> index;
    std::uint64_t cost = 0;
};

constexpr std::uint64_t kNoIndex = ~std::uint64_t{0};

void check_inputs(const Bits& x, const Bits& y) {
    if (x.empty() || x.size() != y.size()) throw ArgumentError("inputs must be non-empty and of equal length");
}

std::uint64_t as_count(double v) { return static_cast<std::uint64_t>(std::max(1.0, std::ceil(v))); }

bool delegates(std::uint64_t n, const RecursionConfig& rcfg) {
    return n <= rcfg.base_threshold || as_count(rcfg.block_size(static_cast<double>(n))) >= n;
}

std::uint64_t superposition_cost(std::uint64_t B, const RecursionConfig& rcfg);

// Cost of the coherent procedure run on one block of B indices.
std::uint64_t block_cost(std::uint64_t B, const RecursionConfig& rcfg) {
    if (delegates(B, rcfg)) return (as_count(std::sqrt(static_cast<double>(B))) - 1) * and_oracle_cost(B);
    const std::uint64_t a = superposition_cost(B, rcfg);
    const std::uint64_t R = as_count(rcfg.rounds(static_cast<double>(B)));
    return a + (R - 1) * (2 * a + and_oracle_cost(B));
}

// Index preparation over J blocks plus the most expensive block.
std::uint64_t superposition_cost(std::uint64_t B, const RecursionConfig& rcfg) {
    const std::uint64_t b = as_count(rcfg.block_size(static_cast<double>(B)));
    const std::uint64_t J = (B + b - 1) / b;
    std::uint64_t inner = block_cost(std::min(b, B), rcfg);
    if (B % b != 0 && J > 1) inner = std::max(inner, block_cost(B % b, rcfg));
    return 2 * ceil_log2(J) + inner;
}

CoherentState base_block(const Bits& x, const Bits& y, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t B = hi - lo;
    const std::uint64_t T = as_count(std::sqrt(static_cast<double>(B)));
    CVector u(B);
    for (std::uint64_t i = 0; i < B; ++i) u[i] = 1.0 / std::sqrt(static_cast<double>(B));
    auto chi = [&](std::uint64_t i) { return x[lo + i] && y[lo + i]; };

    CoherentState s{CVector(T * B), std::vector<std::uint64_t>(T * B), 0};
    CVector v = u;
    const double w = 1.0 / std::sqrt(static_cast<double>(T));
    for (std::uint64_t t = 0; t < T; ++t) {
        if (t > 0) grover_iterate(v.entries(), u, chi);
        for (std::uint64_t i = 0; i < B; ++i) {
            s.amp[t * B + i] = w * v[i];
            s.index[t * B + i] = lo + i;
        }
    }
    return s;
}

CoherentState block_state(const Bits& x, const Bits& y, std::uint64_t lo, std::uint64_t hi,
                          const RecursionConfig& rcfg);

// Uniform superposition over the blocks of [lo, hi), each running its inner procedure.
CoherentState block_superposition(const Bits& x, const Bits& y, std::uint64_t lo, std::uint64_t hi,
                                  const RecursionConfig& rcfg) {
    const std::uint64_t B = hi - lo;
    const std::uint64_t b = as_count(rcfg.block_size(static_cast<double>(B)));
    const std::uint64_t J = (B + b - 1) / b;
    std::vector<Complex> amp;
    CoherentState s;
    const double w = 1.0 / std::sqrt(static_cast<double>(J));
    for (std::uint64_t j = 0; j < J; ++j) {
        const CoherentState c = block_state(x, y, lo + j * b, std::min(hi, lo + (j + 1) * b), rcfg);
        for (std::size_t k = 0; k < c.amp.dim(); ++k) amp.push_back(w * c.amp[k]);
        s.index.insert(s.index.end(), c.index.begin(), c.index.end());
    }
    s.amp = CVector(std::move(amp));
    s.cost = superposition_cost(B, rcfg);
    return s;
}

CoherentState block_state(const Bits& x, const Bits& y, std::uint64_t lo, std::uint64_t hi,
                          const RecursionConfig& rcfg) {
    const std::uint64_t B = hi - lo;
    if (delegates(B, rcfg)) {
        CoherentState s = base_block(x, y, lo, hi);
        s.cost = block_cost(B, rcfg);
        return s;
    }

    // Amplification with an unmeasured round counter k < R held in superposition.
    const CoherentState a = block_superposition(x, y, lo, hi, rcfg);
    const std::uint64_t R = as_count(rcfg.rounds(static_cast<double>(B)));
    const std::size_t D = a.amp.dim();
    auto chi = [&](std::uint64_t d) { return a.index[d] != kNoIndex && x[a.index[d]] && y[a.index[d]]; };
    CoherentState s{CVector(R * D), {}, 0};
    CVector v = a.amp;
    const double w = 1.0 / std::sqrt(static_cast<double>(R));
    for (std::uint64_t k = 0; k < R; ++k) {
        if (k > 0) grover_iterate(v.entries(), a.amp, chi);
        for (std::size_t d = 0; d < D; ++d) s.amp[k * D + d] = w * v[d];
        s.index.insert(s.index.end(), a.index.begin(), a.index.end());
    }
    s.cost = block_cost(B, rcfg);
    return s;
}

}  // namespace

Bits bits_from_string(std::string_view s) {
    if (s.empty()) throw ArgumentError("bit string must be non-empty");
    Bits b;
    for (char c : s) {
        if (c != '0' && c != '1') throw ArgumentError("bit string may only contain 0 and 1");
        b.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return b;
}

std::string bits_to_string(const Bits& b) {
    std::string s;
    for (auto v : b) s.push_back(v ? '1' : '0');
    return s;
}

bool intersects(const Bits& x, const Bits& y) {
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (x[i] && y[i]) return true;
    return false;
}

double default_block_size(double n) {
    const double l = std::log2(std::max(n, 1.0));
    return std::max(1.0, std::ceil(l * l));
}

RecursionConfig::RecursionConfig() : block_size_rule(default_block_size) {}

void RecursionConfig::validate() const {
    if (base_threshold < 2) throw ArgumentError("base_threshold must be at least 2");
    if (!block_size_rule) throw ArgumentError("recursion rules must be set");
}

double RecursionConfig::block_size(double n) const {
    const double b = block_size_rule(n);
    if (!(b >= 1.0)) throw ArgumentError("block size must be at least 1");
    return b;
}

double RecursionConfig::rounds(double n) const {
    if (amplification_rounds_rule) return amplification_rounds_rule(n);
    const double l = std::log2(std::max(n, 2.0));
    return std::max(1.0, std::ceil(kappa * std::sqrt(n) / l));
}

unsigned verification_cost(std::uint64_t n) { return 2 * ceil_log2(n) + 2; }

IntersectionOutcome base_intersection(const Bits& x, const Bits& y, const QSearchConfig& cfg) {
    check_inputs(x, y);
    const std::uint64_t n = x.size();
    IntersectionOutcome out;
    if (n == 1) {
        // nothing to search: one verification round
        out.cost = verification_cost(1);
        out.search.rounds = 1;
        if (x[0] && y[0]) out.index = 0;
        return out;
    }
    const unsigned m = ceil_log2(n);
    if (m > 24) throw CapacityError("index register too large to simulate");
    const std::uint64_t N = std::uint64_t{1} << m;
    CVector psi(N);
    for (std::uint64_t i = 0; i < N; ++i) psi[i] = 1.0 / std::sqrt(static_cast<double>(N));
    auto chi = [&](std::uint64_t i) { return i < n && x[i] && y[i]; };
    out.search = qsearch(psi, chi, cfg);
    out.index = out.search.outcome;
    out.cost = out.search.iterations * and_oracle_cost(N) + out.search.rounds * verification_cost(n);
    return out;
}

IntersectionOutcome recursive_intersection(const Bits& x, const Bits& y, const RecursionConfig& rcfg,
                                           const QSearchConfig& cfg) {
    check_inputs(x, y);
    rcfg.validate();
    const std::uint64_t n = x.size();
    if (delegates(n, rcfg)) {
        IntersectionOutcome out = base_intersection(x, y, cfg);
        out.delegated = true;
        return out;
    }
    const CoherentState a = block_superposition(x, y, 0, n, rcfg);
    auto chi = [&](std::uint64_t d) { return x[a.index[d]] && y[a.index[d]]; };
    IntersectionOutcome out;
    out.search = qsearch(a.amp, chi, cfg);
    if (out.search.outcome) out.index = a.index[*out.search.outcome];
    out.cost = out.search.applications * a.cost + out.search.iterations * and_oracle_cost(n) +
               out.search.rounds * verification_cost(n);
    return out;
}

double base_cost(double n, double K) {
    if (n <= 1.0) return 2.0;
    const double l = std::log2(n);
    return K * std::sqrt(n) * 2.0 * (l + 1.0) + 2.0 * l + 2.0;
}

double cost_model(double n, const RecursionConfig& rcfg, double K, double K_prime) {
    if (n < 1.0) throw ArgumentError("cost_model needs n >= 1");
    if (n <= 1.0) return 2.0;
    const double b = rcfg.block_size(n);
    const double l = std::log2(n);
    const double inner = b < n ? cost_model(b, rcfg, K, K_prime) : base_cost(n, K);
    return K * std::sqrt(n) / l * (inner + K_prime * l);
}

std::uint64_t base_worst_case_cost(std::uint64_t n, const QSearchConfig& cfg) {
    if (n <= 1) return verification_cost(1);
    const std::uint64_t N = std::uint64_t{1} << ceil_log2(n);
    return cfg.max_applications * std::max<std::uint64_t>(and_oracle_cost(N), verification_cost(n));
}

std::uint64_t block_superposition_cost(std::uint64_t n, const RecursionConfig& rcfg) {
    rcfg.validate();
    if (n < 1) throw ArgumentError("block superposition needs n >= 1");
    return superposition_cost(n, rcfg);
}

std::uint64_t recursive_worst_case_cost(std::uint64_t n, const RecursionConfig& rcfg, const QSearchConfig& cfg) {
    rcfg.validate();
    if (n < 1) throw ArgumentError("worst-case cost needs n >= 1");
    if (delegates(n, rcfg)) return base_worst_case_cost(n, cfg);
    // every application prepares the block state and is charged one oracle call or verification on top
    return cfg.max_applications *
           (superposition_cost(n, rcfg) + std::max<std::uint64_t>(and_oracle_cost(n), verification_cost(n)));
}

double fit_k_prime(const RecursionConfig& rcfg, const std::vector<std::pair<double, double>>& observed, double K) {
    auto covers = [&](double kp) {
        return std::all_of(observed.begin(), observed.end(),
                           [&](const auto& o) { return cost_model(o.first, rcfg, K, kp) >= o.second; });
    };
    double hi = 1.0;
    while (!covers(hi)) {
        hi *= 2.0;
        if (hi > 1e12) throw NumericalFailure("no K' makes the cost model cover the observations");
    }
    double lo = 0.0;
    if (covers(lo)) return lo;
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        (covers(mid) ? hi : lo) = mid;
    }
    return hi;
}

CostConstants fitted_cost_constants(const RecursionConfig& rcfg) {
    std::vector<std::pair<double, double>> observed;
    for (std::uint64_t n : {1, 4, 16, 64})
        observed.emplace_back(static_cast<double>(n),
                              static_cast<double>(recursive_worst_case_cost(n, rcfg, default_qsearch_config(n, 0))));
    return {1.0, fit_k_prime(rcfg, observed, 1.0)};
}

unsigned log_star(double n) {
    unsigned k = 0;
    while (n > 1.0) {
        n = std::log2(n);
        ++k;
    }
    return k;
}

LogStarFit fit_log_star(const RecursionConfig& rcfg, double K, double K_prime, std::vector<double> probes) {
    LogStarFit fit;
    fit.probes = std::move(probes);
    for (double n : fit.probes) fit.ratios.push_back(cost_model(n, rcfg, K, K_prime) / std::sqrt(n));
    fit.ratios_nondecreasing = std::is_sorted(fit.ratios.begin(), fit.ratios.end());

    // c: largest growth of the ratio per extra level of log*, at least 1
    fit.c = 1.0;
    for (std::size_t i = 0; i < fit.probes.size(); ++i)
        for (std::size_t j = i + 1; j < fit.probes.size(); ++j) {
            const int dl = static_cast<int>(log_star(fit.probes[j])) - static_cast<int>(log_star(fit.probes[i]));
            if (dl > 0) fit.c = std::max(fit.c, std::pow(fit.ratios[j] / fit.ratios[i], 1.0 / dl));
        }
    for (std::size_t i = 0; i < fit.probes.size(); ++i)
        fit.kappa = std::max(fit.kappa, fit.ratios[i] / std::pow(fit.c, log_star(fit.probes[i])));
    fit.bounded = fit.c <= 16.0;
    for (std::size_t i = 0; i < fit.probes.size(); ++i)
        fit.bounded = fit.bounded &&
                      fit.ratios[i] <= fit.kappa * std::pow(fit.c, log_star(fit.probes[i])) * (1 + 1e-12);
    return fit;
}

}  // namespace qcc
