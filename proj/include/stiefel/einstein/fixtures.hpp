#pragma once

// Golden fixtures: printed eliminant coefficients for the (2,3,2) and (1,4,2)
// systems, and the (1,3,n-4) family's coefficient formulas in n, evaluated per n.
//
// A family coefficient is scale * prod (sum_i desc[i] (n - shift)^(deg - i))^power.

#include "stiefel/errors.hpp"
#include "stiefel/poly/univariate.hpp"
#include "stiefel/rational.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace stiefel::fixtures {

namespace fs = std::filesystem;

struct Factor {
    int shift = 0;
    std::vector<Integer> desc;
    int power = 1;
};

/// scale * product of factors, a polynomial expression in n.
struct Expression {
    Integer scale;
    std::vector<Factor> factors;

    Integer at(long n) const {
        Integer out = scale;
        for (const auto& f : factors) {
            const Integer m = n - f.shift;
            Integer v = 0;
            for (const auto& c : f.desc) v = v * m + c;
            Integer p;
            mpz_pow_ui(p.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(f.power));
            out *= p;
        }
        return out;
    }
};

struct FamilyPolynomial {
    std::string name;
    std::string variable;
    /// coefficients[d] multiplies variable^d
    std::vector<Expression> coefficients;

    poly::UPoly at(long n) const {
        std::vector<Integer> c;
        for (const auto& e : coefficients) c.push_back(e.at(n));
        return poly::UPoly(std::move(c));
    }
};

/// Printed closed forms of a family polynomial's value at a fixed point; every form must agree.
struct FamilyValue {
    std::string polynomial;
    Integer point;
    std::vector<Expression> forms;
};

struct Family {
    std::vector<int> blocks_prefix;  // (1, 3); the last block is n - 4
    long min_n = 6;
    std::map<std::string, FamilyPolynomial> polynomials;
    std::vector<FamilyValue> values;

    const FamilyPolynomial& polynomial(const std::string& name) const {
        auto it = polynomials.find(name);
        if (it == polynomials.end()) throw DomainError("family fixture has no polynomial " + name);
        return it->second;
    }
};

struct EliminantCase {
    std::string name;
    std::vector<int> blocks;
    std::string variable;
    std::string polynomial;
    poly::UPoly coefficients;
};

namespace detail {

inline Integer to_integer(const nlohmann::json& j) {
    if (j.is_string()) return Integer(j.get<std::string>(), 10);
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()), 10);
    throw DomainError("fixture coefficient is not an integer: " + j.dump());
}

inline Expression expression(const nlohmann::json& j) {
    Expression e;
    e.scale = to_integer(j.at("scale"));
    for (const auto& f : j.at("factors")) {
        Factor x;
        x.shift = f.at("shift").get<int>();
        x.power = f.at("power").get<int>();
        for (const auto& c : f.at("desc")) x.desc.push_back(to_integer(c));
        e.factors.push_back(std::move(x));
    }
    return e;
}

inline nlohmann::json read(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw DomainError("cannot open fixture " + p.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("malformed fixture " + p.string() + ": " + e.what());
    }
}

}  // namespace detail

inline Family load_family(const fs::path& dir) {
    const auto j = detail::read(dir / "v4rn_family.json");
    Family f;
    f.min_n = j.at("min_n").get<long>();
    for (const auto& [name, p] : j.at("polynomials").items()) {
        FamilyPolynomial fp{name, p.at("variable").get<std::string>(), {}};
        for (const auto& c : p.at("coefficients")) {
            const auto d = c.at("degree").get<std::size_t>();
            if (fp.coefficients.size() <= d) fp.coefficients.resize(d + 1);
            fp.coefficients[d] = detail::expression(c);
        }
        f.polynomials.emplace(name, std::move(fp));
    }
    for (const auto& [name, vs] : j.at("values").items())
        for (const auto& v : vs) {
            FamilyValue fv{name, detail::to_integer(v.at("at")), {}};
            for (const auto& form : v.at("forms")) fv.forms.push_back(detail::expression(form));
            f.values.push_back(std::move(fv));
        }
    return f;
}

inline std::vector<EliminantCase> load_eliminants(const fs::path& dir) {
    const auto j = detail::read(dir / "v5r7_eliminants.json");
    std::vector<EliminantCase> out;
    for (const auto& c : j.at("cases")) {
        std::vector<Integer> asc;
        for (const auto& x : c.at("desc")) asc.push_back(detail::to_integer(x));
        std::reverse(asc.begin(), asc.end());
        out.push_back({c.at("name").get<std::string>(), c.at("blocks").get<std::vector<int>>(),
                       c.at("variable").get<std::string>(), c.at("polynomial").get<std::string>(),
                       poly::UPoly(std::move(asc))});
    }
    return out;
}

inline const EliminantCase& find_case(const std::vector<EliminantCase>& cases, const std::vector<int>& blocks) {
    for (const auto& c : cases)
        if (c.blocks == blocks) return c;
    throw DomainError("no eliminant fixture for the requested blocks");
}

}  // namespace stiefel::fixtures
