#pragma once

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "stp/basis.hpp"
#include "stp/kernels.hpp"
#include "stp/metric.hpp"

// File formats:
//   matrix       {"rows", "cols", "scalar": "rational"|"float64", "data": [...]}
//                rationals as "num/den" strings, floats as JSON numbers
//   class        matrix fields + {"mu": "p/q", "k0": k0}
//   coordinates  {"mu": "p/q", "terms": [{"kind", "k", "l", "i", "j1", "j2", "coeff"}]}
//   matrix CSV   one row per line, comma separated

namespace stp::io {

using json = nlohmann::json;

template <Scalar T>
json scalar_to_json(const T& v)
{
    if constexpr (scalar_traits<T>::exact) {
        return scalar_traits<T>::to_string(v);
    } else {
        return v;
    }
}

template <Scalar T>
T scalar_from_json(const json& j)
{
    if (j.is_string()) return scalar_traits<T>::parse(j.get<std::string>());
    if (j.is_number_integer()) return scalar_traits<T>::parse(j.dump());
    if (j.is_number()) return scalar_traits<T>::from_double(j.get<double>());
    throw parse_error("bad_scalar", "expected a number or numeric string, got " + j.dump());
}

template <Scalar T>
json matrix_to_json(const Matrix<T>& a)
{
    json data = json::array();
    for (const auto& v : a.values()) data.push_back(scalar_to_json(v));
    return {{"rows", a.rows()}, {"cols", a.cols()}, {"scalar", std::string(scalar_traits<T>::name)}, {"data", data}};
}

namespace detail {

inline std::size_t positive_field(const json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() < 1) {
        throw parse_error("bad_json", std::string("missing or invalid positive integer field '") + key + "'");
    }
    return j[key].get<std::size_t>();
}

// Bare arrays: [1, 2] is a 1×2 row, [[1, 2], [3, 4]] is 2×2.
template <Scalar T>
Matrix<T> matrix_from_array(const json& j)
{
    if (!j.is_array() || j.empty()) throw parse_error("bad_json", "matrix literal must be a non-empty array");
    if (!j.front().is_array()) {
        std::vector<T> row;
        for (const auto& v : j) row.push_back(scalar_from_json<T>(v));
        return Matrix<T>(1, row.size(), row);
    }
    const std::size_t cols = j.front().size();
    std::vector<T> values;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != cols || cols == 0) {
            throw parse_error("bad_json", "matrix literal rows must be non-empty arrays of equal length");
        }
        for (const auto& v : row) values.push_back(scalar_from_json<T>(v));
    }
    return Matrix<T>(j.size(), cols, values);
}

} // namespace detail

// Accepts the object schema or a bare (nested) array literal.
template <Scalar T>
Matrix<T> matrix_from_json(const json& j)
{
    if (j.is_array()) return detail::matrix_from_array<T>(j);
    if (!j.is_object()) throw parse_error("bad_json", "matrix must be an object or array");
    const auto rows = detail::positive_field(j, "rows");
    const auto cols = detail::positive_field(j, "cols");
    if (!j.contains("data") || !j["data"].is_array()) throw parse_error("bad_json", "matrix needs a 'data' array");
    const auto& data = j["data"];
    if (data.size() != rows * cols) {
        throw parse_error("bad_json", "matrix data has " + std::to_string(data.size()) + " entries, expected " +
                                          std::to_string(rows * cols));
    }
    std::vector<T> values;
    values.reserve(data.size());
    for (const auto& v : data) values.push_back(scalar_from_json<T>(v));
    return Matrix<T>(rows, cols, values);
}

template <Scalar T>
json class_to_json(const MatrixClass<T>& x)
{
    json j = matrix_to_json(x.rep());
    j["mu"] = to_string(x.mu());
    j["k0"] = x.k0();
    return j;
}

// Canonicalizes whatever representative the file holds; a stated "mu" must
// agree with the matrix shape.
template <Scalar T>
MatrixClass<T> class_from_json(const json& j, const Tolerance& tol = {})
{
    auto cls = canonicalize(matrix_from_json<T>(j), tol);
    if (j.is_object() && j.contains("mu")) {
        if (!j["mu"].is_string()) throw parse_error("bad_json", "'mu' must be a \"p/q\" string");
        if (Ratio::parse(j["mu"].get<std::string>()) != cls.mu()) {
            throw parse_error("bad_json", "'mu' does not match the matrix shape");
        }
    }
    return cls;
}

inline json basis_element_to_json(const BasisElement& e)
{
    return {{"kind", std::string(1, e.kind())}, {"k", e.k}, {"l", e.l}, {"i", e.i}, {"j1", e.j1}, {"j2", e.j2}};
}

inline BasisElement basis_element_from_json(const json& j, const Ratio& mu)
{
    if (!j.is_object()) throw parse_error("bad_json", "basis term must be an object");
    BasisElement e{mu,
                   detail::positive_field(j, "k"),
                   detail::positive_field(j, "l"),
                   detail::positive_field(j, "i"),
                   detail::positive_field(j, "j1"),
                   detail::positive_field(j, "j2")};
    if (j.contains("kind")) {
        const auto kind = j["kind"].get<std::string>();
        if (kind != std::string(1, e.kind())) {
            throw parse_error("bad_json", "term kind '" + kind + "' disagrees with its indices");
        }
    }
    return e;
}

inline json coordinates_to_json(const Coordinates& c)
{
    json terms = json::array();
    for (const auto& [e, coeff] : c.terms) {
        json t = basis_element_to_json(e);
        t["coeff"] = scalar_traits<Rational>::to_string(coeff);
        terms.push_back(t);
    }
    return {{"mu", to_string(c.mu)}, {"terms", terms}};
}

inline Coordinates coordinates_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("mu") || !j.contains("terms") || !j["terms"].is_array()) {
        throw parse_error("bad_json", "coordinates need 'mu' and a 'terms' array");
    }
    Coordinates c{Ratio::parse(j["mu"].get<std::string>()), {}};
    for (const auto& t : j["terms"]) {
        auto e = basis_element_from_json(t, c.mu);
        require_valid(e);
        if (!t.contains("coeff")) throw parse_error("bad_json", "term without 'coeff'");
        c.add(e, scalar_from_json<Rational>(t["coeff"]));
    }
    return c;
}

template <Scalar T>
std::string matrix_to_csv(const Matrix<T>& a)
{
    std::string out;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (c) out += ',';
            out += scalar_traits<T>::to_string(a(r, c));
        }
        out += '\n';
    }
    return out;
}

template <Scalar T>
Matrix<T> matrix_from_csv(const std::string& text)
{
    std::vector<T> values;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t n = 0;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            values.push_back(scalar_traits<T>::parse(cell));
            ++n;
        }
        if (rows == 0) {
            cols = n;
        } else if (n != cols) {
            throw parse_error("bad_csv", "row " + std::to_string(rows + 1) + " has " + std::to_string(n) +
                                             " cells, expected " + std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0 || cols == 0) throw parse_error("bad_csv", "empty CSV matrix");
    return Matrix<T>(rows, cols, values);
}

inline std::string gap_reports_to_csv(const std::vector<GapReport>& reports)
{
    std::ostringstream out;
    out << "n,rows,cols,gap_measured,gap_predicted,rel_err\n";
    out << std::setprecision(17);
    for (const auto& r : reports) {
        out << r.n << ',' << r.size.rows << ',' << r.size.cols << ',' << r.gap_measured << ',' << r.gap_predicted
            << ',' << r.rel_err << '\n';
    }
    return out.str();
}

inline json bench_to_json(const std::vector<BenchRow>& rows)
{
    json out = json::array();
    for (const auto& r : rows) {
        out.push_back({{"shape", {{"a", {r.shape.m, r.shape.n}}, {"b", {r.shape.p, r.shape.q}}}},
                       {"t", r.t},
                       {"naive_ns", r.naive_ns},
                       {"fast_ns", r.fast_ns},
                       {"speedup", r.speedup},
                       {"naive_peak_elems", r.naive_peak_elems},
                       {"fast_peak_elems", r.fast_peak_elems},
                       {"outputs_equal", r.outputs_equal}});
    }
    return out;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("io_error", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error("bad_json", e.what());
    }
}

} // namespace stp::io
