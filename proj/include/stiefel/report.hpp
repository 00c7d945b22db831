#pragma once

// Serialization of solutions and polynomials: JSON, CSV and a plain-text table.
// Floats carry 12 significant digits; rationals are written as "num/den".

#include "stiefel/einstein/solver.hpp"
#include "stiefel/errors.hpp"
#include "stiefel/poly/polynomial.hpp"
#include "stiefel/rational.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace stiefel::report {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Pretty };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "pretty") return Format::Pretty;
    throw DomainError("unknown output format '" + s + "'");
}

inline std::string fixed12(long double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", x);
    return buf;
}

/// The double nearest to x printed with 12 significant digits, so the shortest round-trip
/// form emitted by the JSON writer has at most 12.
inline double round12(long double x) { return std::strtod(fixed12(x).c_str(), nullptr); }

inline std::string rational_text(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Json polynomial_json(const poly::Polynomial& p) {
    Json out = Json::array();
    for (const auto& t : p.terms()) {
        Json exps = Json::array();
        for (std::size_t i = 0; i < p.vars().size(); ++i) exps.push_back(t.mono[i]);
        Rational c = t.coeff;
        c.canonicalize();
        out.push_back({{"exps", exps}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
    }
    return out;
}

inline Json univariate_json(const poly::UPoly& p) {
    return polynomial_json(p.to_polynomial({"t"}, "t"));
}

inline Json solution_json(const EinsteinSolution& s) {
    Json coords = Json::object();
    for (const auto& [l, v] : s.coords) coords[l.coefficient_name()] = round12(v);
    Json intervals = Json::array();
    for (const auto& iv : s.intervals)
        intervals.push_back({{"var", iv.var}, {"lo", rational_text(iv.lo)}, {"hi", rational_text(iv.hi)}});
    Json out{{"decomp", s.decomp.to_string()},
             {"n", s.decomp.n()},
             {"branch", s.branch},
             {"classification", to_string(s.classification)},
             {"coords", coords},
             {"lambda", round12(s.lambda)},
             {"residual", round12(s.residual)},
             {"intervals", intervals}};
    if (s.exact) out["exact"] = *s.exact;
    return out;
}

inline std::string to_json(const std::vector<EinsteinSolution>& sols) {
    std::string out = "{\"solutions\": [";
    for (std::size_t i = 0; i < sols.size(); ++i) out += (i ? ", " : "") + solution_json(sols[i]).dump();
    return out + "]}\n";
}

inline const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{"x1", "x2", "x12", "x13", "x23"};
    return cols;
}

inline std::string to_csv(const std::vector<EinsteinSolution>& sols) {
    std::ostringstream os;
    os << "n,blocks,branch,classification";
    for (const auto& c : csv_columns()) os << "," << c;
    os << ",lambda,residual\n";
    for (const auto& s : sols) {
        std::string blocks = s.decomp.to_string();
        os << s.decomp.n() << ",\"" << blocks << "\"," << s.branch << "," << to_string(s.classification);
        for (const auto& c : csv_columns()) {
            os << ",";
            for (const auto& [l, v] : s.coords)
                if (l.coefficient_name() == c) os << fixed12(v);
        }
        os << "," << fixed12(s.lambda) << "," << fixed12(s.residual) << "\n";
    }
    return os.str();
}

/// Table column order: x23, x13, x12, x1, x2 (those present).
inline std::vector<std::pair<std::string, long double>> table_order(const EinsteinSolution& s) {
    std::vector<std::pair<std::string, long double>> out;
    for (const char* name : {"x23", "x13", "x12", "x1", "x2"})
        for (const auto& [l, v] : s.coords)
            if (l.coefficient_name() == name) out.emplace_back(name, v);
    return out;
}

inline std::string to_pretty(const std::vector<EinsteinSolution>& sols) {
    std::ostringstream os;
    const BlockDecomposition* current = nullptr;
    for (const auto& s : sols) {
        if (!current || !(*current == s.decomp)) {
            current = &s.decomp;
            os << "blocks " << s.decomp.to_string() << " (n = " << s.decomp.n() << ")\n";
            os << "  (";
            bool first = true;
            for (const auto& [name, v] : table_order(s)) {
                os << (first ? "" : ", ") << name;
                first = false;
            }
            os << ")\n";
        }
        os << "  " << (s.classification == Classification::Jensen ? "jensen " : "new    ") << "(";
        bool first = true;
        for (const auto& [name, v] : table_order(s)) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6Lg", v);
            os << (first ? "" : ", ") << buf;
            first = false;
        }
        os << ")";
        if (s.exact) os << "  x2 = " << *s.exact;
        os << "\n";
    }
    if (sols.empty()) os << "no solutions\n";
    return os.str();
}

inline std::string emit(const std::vector<EinsteinSolution>& sols, Format f) {
    switch (f) {
        case Format::Json: return to_json(sols);
        case Format::Csv: return to_csv(sols);
        case Format::Pretty: return to_pretty(sols);
    }
    return {};
}

}  // namespace stiefel::report
