#include "qcc/qsearch.hpp"

#include <algorithm>
#include <cmath>

#include "qcc/errors.hpp"

namespace qcc {

void QSearchConfig::validate() const {
    if (!(schedule_growth > 1.0 && schedule_growth <= 2.0)) throw ArgumentError("schedule_growth must lie in (1, 2]");
    if (max_applications < 1) throw ArgumentError("max_applications must be at least 1");
}

QSearchConfig default_qsearch_config(std::uint64_t n, std::uint64_t seed) {
    const double root = std::ceil(std::sqrt(static_cast<double>(std::max<std::uint64_t>(n, 1))));
    return {1.2, static_cast<std::uint64_t>(kQSearchBudgetFactor * root), seed};
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void grover_iterate(std::span<Complex> v, const CVector& psi, const BasisPredicate& chi) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (chi(i)) v[i] = -v[i];
    Complex overlap{0.0, 0.0};
    for (std::size_t i = 0; i < v.size(); ++i) overlap += std::conj(psi[i]) * v[i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 2.0 * overlap * psi[i] - v[i];
}

CVector amplify(const CVector& psi, const BasisPredicate& chi, unsigned iterations) {
    CVector v = psi;
    for (unsigned k = 0; k < iterations; ++k) grover_iterate(v.entries(), psi, chi);
    return v;
}

double marked_probability(const CVector& v, const BasisPredicate& chi) {
    double p = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i)
        if (chi(i)) p += std::norm(v[i]);
    return p;
}

std::uint64_t measure(const CVector& v, std::mt19937_64& rng) {
    const double total = v.squared_norm();
    double r = std::uniform_real_distribution<double>(0.0, total)(rng);
    std::uint64_t last = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        const double p = std::norm(v[i]);
        if (p <= 0.0) continue;
        last = i;
        if (r < p) return i;
        r -= p;
    }
    return last;
}

QSearchResult qsearch(const CVector& psi, const BasisPredicate& chi, const QSearchConfig& cfg) {
    cfg.validate();
    if (std::abs(psi.norm() - 1.0) > 1e-9) throw ArgumentError("prepared state must be normalized");
    std::mt19937_64 rng(cfg.rng_seed);
    const double cap_limit = std::sqrt(static_cast<double>(psi.dim()));
    double cap = 1.0;
    QSearchResult res;
    for (;;) {
        const auto bound = static_cast<std::uint64_t>(std::ceil(cap));
        const std::uint64_t j = std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(rng);
        if (res.applications + 1 + 2 * j > cfg.max_applications) return res;
        res.applications += 1 + 2 * j;
        res.iterations += j;
        res.rounds += 1;
        const std::uint64_t z = measure(amplify(psi, chi, static_cast<unsigned>(j)), rng);
        if (chi(z)) {
            res.outcome = z;
            return res;
        }
        cap = std::min(cfg.schedule_growth * cap, cap_limit);
    }
}

QSearchResult qsearch(const CMatrix& prepare, const BasisPredicate& chi, const QSearchConfig& cfg) {
    if (!is_unitary(prepare)) throw ContractViolation("preparation is not unitary");
    CVector psi(prepare.rows());
    for (std::size_t i = 0; i < prepare.rows(); ++i) psi[i] = prepare(i, 0);
    return qsearch(psi, chi, cfg);
}

}  // namespace qcc
