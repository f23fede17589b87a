#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qcc/tensor.hpp"

namespace qcc {

enum class FunctionName { EQ, NEQ, DISJ, INT, Custom };

FunctionName parse_function_name(std::string_view s);
std::string to_string(FunctionName f);

/// Evaluates a named function on n-bit inputs.
bool evaluate(FunctionName f, std::uint64_t x, std::uint64_t y, unsigned n);

/// The 2^n x 2^n 0/1 table of f(x, y); row x, column y.
class CommMatrix {
public:
    static constexpr unsigned kMaxBits = 10;

    CommMatrix(unsigned n, FunctionName name, std::vector<std::uint8_t> values);

    unsigned n() const { return n_; }
    FunctionName name() const { return name_; }
    std::size_t size() const { return std::size_t{1} << n_; }
    bool at(std::uint64_t x, std::uint64_t y) const { return values_[x * size() + y] != 0; }
    std::size_t ones() const;

    CMatrix as_matrix() const;
    std::string to_csv() const;
    std::string to_json() const;

    friend bool operator==(const CommMatrix&, const CommMatrix&) = default;

private:
    unsigned n_;
    FunctionName name_;
    std::vector<std::uint8_t> values_;
};

CommMatrix build_comm_matrix(FunctionName name, unsigned n);

}  // namespace qcc
