#include "qcc/serialize.hpp"

#include <cstdio>

#include "json.hpp"

#include "qcc/errors.hpp"
#include "qcc/protocol.hpp"

namespace qcc {

std::string format_sig12(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string AcceptanceMatrix::to_csv() const {
    std::string out;
    for (std::size_t x = 0; x < size(); ++x) {
        for (std::size_t y = 0; y < size(); ++y) {
            if (y) out += ',';
            out += format_sig12(at(x, y));
        }
        out += '\n';
    }
    return out;
}

std::string AcceptanceMatrix::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    auto rows = nlohmann::json::array();
    for (std::size_t x = 0; x < size(); ++x) {
        auto row = nlohmann::json::array();
        for (std::size_t y = 0; y < size(); ++y) row.push_back(at(x, y));
        rows.push_back(std::move(row));
    }
    j["values"] = std::move(rows);
    return j.dump();
}

AcceptanceMatrix AcceptanceMatrix::from_json(const std::string& text) {
    unsigned n = 0;
    std::vector<double> values;
    try {
        const auto j = nlohmann::json::parse(text);
        n = j.at("n").get<unsigned>();
        if (n > 16) throw ArgumentError("acceptance matrix too large");
        for (const auto& row : j.at("values")) {
            if (row.size() != (std::size_t{1} << n)) throw ArgumentError("acceptance matrix row has the wrong length");
            for (const auto& v : row) values.push_back(v.get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("invalid acceptance matrix JSON: ") + e.what());
    }
    return AcceptanceMatrix(n, std::move(values));
}

}  // namespace qcc
