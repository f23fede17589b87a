#include "qcc/comm_matrix.hpp"

#include <algorithm>

#include "json.hpp"

#include "qcc/errors.hpp"

namespace qcc {

FunctionName parse_function_name(std::string_view s) {
    if (s == "EQ") return FunctionName::EQ;
    if (s == "NEQ") return FunctionName::NEQ;
    if (s == "DISJ") return FunctionName::DISJ;
    if (s == "INT") return FunctionName::INT;
    throw ArgumentError("unknown function name: " + std::string(s));
}

std::string to_string(FunctionName f) {
    switch (f) {
        case FunctionName::EQ: return "EQ";
        case FunctionName::NEQ: return "NEQ";
        case FunctionName::DISJ: return "DISJ";
        case FunctionName::INT: return "INT";
        case FunctionName::Custom: return "custom";
    }
    return "custom";
}

bool evaluate(FunctionName f, std::uint64_t x, std::uint64_t y, unsigned n) {
    const std::uint64_t mask = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    x &= mask;
    y &= mask;
    switch (f) {
        case FunctionName::EQ: return (x ^ y) == 0;    // NOR(x xor y)
        case FunctionName::NEQ: return (x ^ y) != 0;
        case FunctionName::DISJ: return (x & y) == 0;  // NOR(x and y)
        case FunctionName::INT: return (x & y) != 0;   // OR(x and y)
        case FunctionName::Custom: break;
    }
    throw ArgumentError("custom functions have no defining formula");
}

CommMatrix::CommMatrix(unsigned n, FunctionName name, std::vector<std::uint8_t> values)
    : n_(n), name_(name), values_(std::move(values)) {
    if (n_ < 1 || n_ > kMaxBits) throw CapacityError("communication matrix input length must be in 1..10");
    if (values_.size() != size() * size()) throw ArgumentError("communication matrix has the wrong number of entries");
    for (auto v : values_)
        if (v > 1) throw ArgumentError("communication matrix entries must be 0 or 1");
}

std::size_t CommMatrix::ones() const {
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

CMatrix CommMatrix::as_matrix() const {
    CMatrix m(size(), size());
    for (std::size_t x = 0; x < size(); ++x)
        for (std::size_t y = 0; y < size(); ++y) m(x, y) = at(x, y) ? 1.0 : 0.0;
    return m;
}

std::string CommMatrix::to_csv() const {
    std::string out;
    for (std::size_t x = 0; x < size(); ++x) {
        for (std::size_t y = 0; y < size(); ++y) {
            if (y) out += ',';
            out += at(x, y) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

std::string CommMatrix::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    auto rows = nlohmann::json::array();
    for (std::size_t x = 0; x < size(); ++x) {
        auto row = nlohmann::json::array();
        for (std::size_t y = 0; y < size(); ++y) row.push_back(at(x, y) ? 1 : 0);
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j.dump();
}

CommMatrix build_comm_matrix(FunctionName name, unsigned n) {
    if (name == FunctionName::Custom) throw ArgumentError("custom matrices are built from explicit values");
    if (n < 1 || n > CommMatrix::kMaxBits) throw CapacityError("communication matrix input length must be in 1..10");
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::uint8_t> v(size * size);
    for (std::size_t x = 0; x < size; ++x)
        for (std::size_t y = 0; y < size; ++y) v[x * size + y] = evaluate(name, x, y, n) ? 1 : 0;
    return CommMatrix(n, name, std::move(v));
}

}  // namespace qcc
