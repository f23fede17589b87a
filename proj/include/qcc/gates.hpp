#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

#include "qcc/errors.hpp"
#include "qcc/tensor.hpp"

namespace qcc::gates {

inline CMatrix x() { return CMatrix{{0.0, 1.0}, {1.0, 0.0}}; }

inline CMatrix h() {
    const double s = 1.0 / std::sqrt(2.0);
    return CMatrix{{s, s}, {s, -s}};
}

inline CMatrix swap() {
    return CMatrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
}

/// |i> -> |f(i)> on k qubits; f must be a bijection.
inline CMatrix permutation(unsigned k, const std::function<std::uint64_t(std::uint64_t)>& f) {
    const std::size_t d = std::size_t{1} << k;
    CMatrix u(d, d);
    std::vector<bool> hit(d, false);
    for (std::size_t i = 0; i < d; ++i) {
        const std::uint64_t j = f(i);
        if (j >= d || hit[j]) throw ContractViolation("permutation gate is not a bijection");
        hit[j] = true;
        u(j, i) = 1.0;
    }
    return u;
}

/// |i> -> (-1)^{f(i)} |i> on k qubits.
inline CMatrix phase_flip(unsigned k, const std::function<bool(std::uint64_t)>& f) {
    const std::size_t d = std::size_t{1} << k;
    CMatrix u(d, d);
    for (std::size_t i = 0; i < d; ++i) u(i, i) = f(i) ? -1.0 : 1.0;
    return u;
}

/// Reflection 2|u><u| - I about the uniform superposition on k qubits.
inline CMatrix diffusion(unsigned k) {
    const std::size_t d = std::size_t{1} << k;
    CMatrix u(d, d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) u(r, c) = 2.0 / static_cast<double>(d) - (r == c ? 1.0 : 0.0);
    return u;
}

}  // namespace qcc::gates
