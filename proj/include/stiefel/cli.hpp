#pragma once

// Command-line front end. parse_and_run() turns argv into a RunConfig and
// dispatches; run() is the testable core. Exit codes: 0 success, 1 domain or
// usage error, 2 elimination overflow.

#include "stiefel/einstein/fixtures.hpp"
#include "stiefel/einstein/positivity.hpp"
#include "stiefel/einstein/solver.hpp"
#include "stiefel/einstein/system.hpp"
#include "stiefel/errors.hpp"
#include "stiefel/report.hpp"
#include "stiefel/ricci.hpp"
#include "stiefel/triples.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef STIEFEL_DATA_DIR
#define STIEFEL_DATA_DIR "data/fixtures"
#endif

namespace stiefel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitOverflow = 2;

/// Environment variable overriding the Buchberger pair-reduction cap.
inline constexpr const char* kPairCapEnv = "STIEFEL_MAX_PAIR_REDUCTIONS";

struct RunConfig {
    std::string command;
    std::string blocks;
    std::optional<std::pair<long, long>> n_range;
    long double tolerance = 1e-10L;
    long double jensen_tolerance = 1e-8L;
    Strategy strategy = Strategy::Auto;
    std::string output;
    std::optional<report::Format> format;
    std::string data_dir = STIEFEL_DATA_DIR;
    /// certify: "x2=0.39,x12=0.39,x13=1"; ricci: exact rationals, missing coefficients are 1.
    std::string coords;
    /// triples: "closed" or "brute".
    std::string method = "closed";
    std::size_t max_pair_reductions = poly::GroebnerOptions{}.max_pair_reductions;

    void validate() const {
        if (n_range && command != "sweep") throw DomainError("--n is only valid for sweep");
        if (command == "sweep" && !n_range) throw DomainError("sweep needs --n LO..HI");
        if (!(tolerance > 0) || !(jensen_tolerance > 0)) throw DomainError("tolerances must be positive");
        if (method != "closed" && method != "brute") throw DomainError("--method is closed or brute");
    }
};

/// "6..12" or "9".
inline std::pair<long, long> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const long v = std::stol(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {v, v};
        }
        const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
        const long lo = std::stol(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        const long hi = std::stol(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        if (lo > hi) throw DomainError("empty n range " + s);
        return {lo, hi};
    } catch (const std::logic_error&) {
        throw DomainError("malformed n range '" + s + "'");
    }
}

/// Comma-separated block sizes; a trailing "R" stands for the remainder n - (sum of the others).
struct BlockSpec {
    std::vector<int> fixed;
    bool remainder = false;

    BlockDecomposition at(long n) const {
        std::vector<int> k = fixed;
        if (remainder) {
            long rest = n;
            for (int x : fixed) rest -= x;
            if (rest < 1) throw DomainError("n = " + std::to_string(n) + " leaves no room for the last block");
            k.push_back(static_cast<int>(rest));
        }
        return BlockDecomposition(k);
    }
    BlockDecomposition fixed_decomposition() const {
        if (remainder) throw DomainError("blocks ending in R need an n range (sweep)");
        return BlockDecomposition(fixed);
    }
};

inline BlockSpec parse_blocks(const std::string& s) {
    if (s.empty()) throw DomainError("--blocks is required");
    BlockSpec spec;
    std::stringstream ss(s);
    std::string item;
    std::vector<std::string> items;
    while (std::getline(ss, item, ',')) items.push_back(item);
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i] == "R" || items[i] == "r") {
            if (i + 1 != items.size()) throw DomainError("R may only appear as the last block");
            spec.remainder = true;
            continue;
        }
        try {
            std::size_t used = 0;
            const int v = std::stoi(items[i], &used);
            if (used != items[i].size() || v < 1) throw std::invalid_argument(items[i]);
            spec.fixed.push_back(v);
        } catch (const std::logic_error&) {
            throw DomainError("malformed block size '" + items[i] + "'");
        }
    }
    return spec;
}

/// "x2=1/2,x12=3" as exact rationals (decimals allowed).
inline std::map<ModuleLabel, Rational> parse_assignments(const std::string& s) {
    std::map<ModuleLabel, Rational> out;
    if (s.empty()) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw DomainError("malformed assignment '" + item + "'");
        const auto label = ModuleLabel::parse(item.substr(0, eq));
        const std::string v = item.substr(eq + 1);
        Rational q;
        const auto dot = v.find('.');
        try {
            if (dot == std::string::npos) {
                q = Rational(v, 10);
            } else {
                const std::string digits = v.substr(0, dot) + v.substr(dot + 1);
                q = Rational(Integer(digits, 10), pow10(static_cast<unsigned>(v.size() - dot - 1)));
            }
        } catch (const std::invalid_argument&) {
            throw DomainError("malformed number '" + v + "'");
        }
        q.canonicalize();
        out[label] = q;
    }
    return out;
}

inline SolveOptions solve_options(const RunConfig& c) {
    SolveOptions o;
    o.strategy = c.strategy;
    o.tolerance = c.tolerance;
    o.jensen_tolerance = c.jensen_tolerance;
    o.groebner.max_pair_reductions = c.max_pair_reductions;
    return o;
}

namespace detail {

inline std::string triples_text(const TripleTable& t, report::Format f) {
    if (f == report::Format::Json) {
        report::Json dims = report::Json::object();
        for (const auto& [l, d] : t.dims()) dims[l.name()] = d;
        report::Json arr = report::Json::array();
        for (const auto& [key, v] : t.entries()) {
            const auto& l = key.labels();
            arr.push_back({{"modules", {l[0].name(), l[1].name(), l[2].name()}}, {"value", report::rational_text(v)}});
        }
        return report::Json{{"blocks", t.decomposition().to_string()}, {"dims", dims}, {"triples", arr}}.dump() + "\n";
    }
    std::ostringstream os;
    if (f == report::Format::Csv) os << "i,j,k,value\n";
    for (const auto& [key, v] : t.entries()) {
        const auto& l = key.labels();
        if (f == report::Format::Csv)
            os << l[0].name() << "," << l[1].name() << "," << l[2].name() << "," << report::rational_text(v) << "\n";
        else
            os << "[" << l[2].name() << "; " << l[0].name() << " " << l[1].name() << "] = " << v.get_str() << "\n";
    }
    return os.str();
}

inline std::string ricci_text(const RicciComponents<Rational>& r, report::Format f) {
    std::ostringstream os;
    if (f == report::Format::Json) {
        report::Json comps = report::Json::object();
        for (const auto& [l, v] : r.values) comps["r" + l.name()] = report::rational_text(v);
        report::Json out{{"components", comps}};
        if (r.einstein_constant_candidate) out["mean"] = report::rational_text(*r.einstein_constant_candidate);
        return out.dump() + "\n";
    }
    if (f == report::Format::Csv) os << "module,value\n";
    for (const auto& [l, v] : r.values) {
        if (f == report::Format::Csv)
            os << l.name() << "," << report::rational_text(v) << "\n";
        else
            os << "r" << l.name() << " = " << v.get_str() << "\n";
    }
    return os.str();
}

/// fixtures-verify: computed eliminants against the stored coefficients, and the family
/// formulas against their printed values.
inline bool verify_fixtures(const RunConfig& c, std::ostream& out) {
    bool ok = true;
    const auto line = [&](bool pass, const std::string& what) {
        out << (pass ? "ok   " : "FAIL ") << what << "\n";
        ok = ok && pass;
    };
    const auto opt = solve_options(c);
    for (const auto& ec : fixtures::load_eliminants(c.data_dir)) {
        const auto rep = solve(build_system(BlockDecomposition(ec.blocks)), opt);
        const auto h = ec.coefficients.normalized();
        const bool pass = rep.strategy_used == Strategy::Groebner ? rep.cofactor == h && rep.jensen_multiplicity == 1
                                                                   : poly::divides(h, rep.eliminant);
        line(pass, ec.name + " eliminant (x13 - 1) " + ec.polynomial + "(x13), degree " +
                       std::to_string(h.degree()) + " [" + to_string(rep.strategy_used) + "]");
    }
    const auto family = fixtures::load_family(c.data_dir);
    for (const auto& v : family.values)
        for (long n = family.min_n; n <= family.min_n + 24; ++n) {
            const Rational value = family.polynomial(v.polynomial).at(n).eval(Rational(v.point));
            bool same = true;
            for (const auto& form : v.forms) same = same && Rational(form.at(n)) == value;
            if (!same) line(false, v.polynomial + "(" + v.point.get_str() + ") closed forms at n = " + std::to_string(n));
        }
    line(ok, "family value forms agree for n in [" + std::to_string(family.min_n) + ", " +
                 std::to_string(family.min_n + 24) + "]");
    for (long n = family.min_n; n <= family.min_n + 4; ++n) {
        const auto sys = build_system(BlockDecomposition({1, 3, static_cast<int>(n - 4)}));
        const auto rep = solve(sys, opt);
        const bool h1 = rep.cofactor == family.polynomial("h1").at(n).normalized();
        bool h23 = true;
        if (rep.strategy_used == Strategy::Groebner)
            h23 = branch_eliminant(sys, "x12", opt.groebner) == family.polynomial("h2").at(n).normalized() &&
                  branch_eliminant(sys, "x2", opt.groebner) == family.polynomial("h3").at(n).normalized();
        line(h1 && h23, "family eliminants h1, h2, h3 at n = " + std::to_string(n));
    }
    return ok;
}

inline std::string positivity_text(const std::vector<PositivityRow>& rows) {
    std::ostringstream os;
    os << "n,h1(0),h1(1),h1(2),h2_alternating,h3_alternating,alpha13,beta13,extra_roots\n";
    for (const auto& r : rows) {
        os << r.n << "," << sign(r.h1_at_0) << "," << sign(r.h1_at_1) << "," << sign(r.h1_at_2) << ","
           << r.h2_alternating << "," << r.h3_alternating << ",";
        if (r.alpha13) os << report::fixed12(to_long_double(poly::refine(*r.alpha13, Rational(1, 1000000000000)).midpoint()));
        os << ",";
        if (r.beta13) os << report::fixed12(to_long_double(poly::refine(*r.beta13, Rational(1, 1000000000000)).midpoint()));
        os << "," << r.extra_positive_roots << "\n";
    }
    return os.str();
}

inline void write(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.output, std::ios::binary);
    if (!f) throw DomainError("cannot write " + c.output);
    f << text;
}

}  // namespace detail

inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        c.validate();
        if (c.command == "triples") {
            const auto d = parse_blocks(c.blocks).fixed_decomposition();
            const auto t = c.method == "brute" ? triples_bruteforce(d) : triples_closed_form(d);
            detail::write(c, detail::triples_text(t, c.format.value_or(report::Format::Pretty)), out);
        } else if (c.command == "ricci") {
            const auto d = parse_blocks(c.blocks).fixed_decomposition();
            InvariantMetric<Rational> m{d, {}};
            const auto given = parse_assignments(c.coords);
            for (const auto& [l, dim] : dims(d)) m.coeffs[l] = given.contains(l) ? given.at(l) : Rational(1);
            for (const auto& [l, v] : given)
                if (!dims(d).contains(l)) throw DomainError("module " + l.name() + " is not part of the decomposition");
            detail::write(c, detail::ricci_text(ricci_general(triples_closed_form(d), m), c.format.value_or(report::Format::Pretty)), out);
        } else if (c.command == "solve") {
            const auto d = parse_blocks(c.blocks).fixed_decomposition();
            const auto rep = solve(build_system(d), solve_options(c));
            detail::write(c, report::emit(rep.solutions, c.format.value_or(report::Format::Json)), out);
        } else if (c.command == "sweep") {
            const auto spec = parse_blocks(c.blocks);
            if (!spec.remainder || spec.fixed.size() != 2)
                throw DomainError("sweep expects blocks of the form k1,k2,R");
            const auto [lo, hi] = *c.n_range;
            std::vector<EinsteinSolution> all;
            for (const auto& rep : sweep(spec.fixed[0], spec.fixed[1], lo, hi, solve_options(c)))
                all.insert(all.end(), rep.solutions.begin(), rep.solutions.end());
            detail::write(c, report::emit(all, c.format.value_or(report::Format::Csv)), out);
        } else if (c.command == "certify") {
            const auto d = parse_blocks(c.blocks).fixed_decomposition();
            std::map<ModuleLabel, long double> coords;
            for (const auto& [l, v] : parse_assignments(c.coords)) coords[l] = to_long_double(v);
            const auto cert = certify(d, coords, c.tolerance, c.jensen_tolerance);
            if (!cert.accepted) {
                err << "rejected: " << cert.reason << "\n";
                return kExitDomain;
            }
            detail::write(c, report::emit({cert.solution}, c.format.value_or(report::Format::Json)), out);
        } else if (c.command == "fixtures-verify") {
            std::ostringstream os;
            const bool ok = detail::verify_fixtures(c, os);
            const auto family = fixtures::load_family(c.data_dir);
            os << detail::positivity_text(positivity_report(family, family.min_n, family.min_n + 44));
            detail::write(c, os.str(), out);
            return ok ? kExitOk : kExitDomain;
        } else {
            throw DomainError("unknown command '" + c.command + "'");
        }
        return kExitOk;
    } catch (const EliminationOverflow& e) {
        err << "error: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
}

inline int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Invariant Einstein metrics on Stiefel manifolds SO(n)/SO(k3)"};
    app.require_subcommand(1);
    RunConfig c;
    if (const char* cap = std::getenv(kPairCapEnv)) {
        try {
            c.max_pair_reductions = std::stoul(cap);
        } catch (const std::logic_error&) {
            err << "error: " << kPairCapEnv << " must be a positive integer\n";
            return kExitDomain;
        }
    }
    std::string n_range, format, strategy = "auto";
    double tol = 1e-10, jtol = 1e-8;

    const auto common = [&](CLI::App* sub, bool with_blocks) {
        if (with_blocks) sub->add_option("--blocks", c.blocks, "block sizes, e.g. 1,4,2 or 1,3,R")->required();
        sub->add_option("--format", format, "json | csv | pretty");
        sub->add_option("--output,-o", c.output, "write the report to a file");
    };
    const auto numeric = [&](CLI::App* sub) {
        sub->add_option("--tol", tol, "certification tolerance on the Einstein residual");
        sub->add_option("--jensen-tol", jtol, "tolerance of the Jensen classification");
        sub->add_option("--strategy", strategy, "groebner | resultant | auto");
    };
    auto* triples = app.add_subcommand("triples", "structure triples of a block decomposition");
    common(triples, true);
    triples->add_option("--method", c.method, "closed | brute");
    auto* ricci = app.add_subcommand("ricci", "exact Ricci components of a diagonal metric");
    common(ricci, true);
    ricci->add_option("--metric", c.coords, "coefficients, e.g. x2=1/2,x12=3 (others 1)");
    auto* solve_cmd = app.add_subcommand("solve", "all certified Einstein metrics of one decomposition");
    common(solve_cmd, true);
    numeric(solve_cmd);
    auto* sweep_cmd = app.add_subcommand("sweep", "solve k1,k2,R for a range of n");
    common(sweep_cmd, true);
    numeric(sweep_cmd);
    sweep_cmd->add_option("--n", n_range, "n range, e.g. 6..12")->required();
    auto* certify_cmd = app.add_subcommand("certify", "check a candidate metric");
    common(certify_cmd, true);
    certify_cmd->add_option("--coords", c.coords, "coefficients, e.g. x2=0.39,x12=0.39,x13=1")->required();
    certify_cmd->add_option("--tol", tol, "certification tolerance on the Einstein residual");
    certify_cmd->add_option("--jensen-tol", jtol, "tolerance of the Jensen classification");
    auto* fixtures_cmd = app.add_subcommand("fixtures-verify", "recompute eliminants and compare with the fixtures");
    common(fixtures_cmd, false);
    numeric(fixtures_cmd);
    app.add_option("--data-dir", c.data_dir, "fixture directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    c.command = app.get_subcommands().front()->get_name();
    try {
        if (!n_range.empty()) c.n_range = parse_range(n_range);
        if (!format.empty()) c.format = report::parse_format(format);
        c.strategy = parse_strategy(strategy);
        c.tolerance = tol;
        c.jensen_tolerance = jtol;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return run(c, out, err);
}

}  // namespace stiefel::cli
