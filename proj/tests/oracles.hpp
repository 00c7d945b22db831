#pragma once

// Independent reference computations used only by the tests: dense so(n)
// matrices, Killing form by trace, and structure triples by matrix brackets.

#include "stiefel/rational.hpp"
#include "stiefel/so_algebra.hpp"
#include "stiefel/triples.hpp"

#include <map>
#include <random>
#include <vector>

namespace oracle {

using stiefel::Rational;

using Matrix = std::vector<std::vector<long>>;

inline Matrix zero(int n) { return Matrix(n, std::vector<long>(n, 0)); }

/// E_ab = e_a e_b^T - e_b e_a^T (1-based indices).
inline Matrix elementary(int n, int a, int b) {
    Matrix m = zero(n);
    m[a - 1][b - 1] = 1;
    m[b - 1][a - 1] = -1;
    return m;
}

inline Matrix mul(const Matrix& x, const Matrix& y) {
    const int n = static_cast<int>(x.size());
    Matrix m = zero(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            if (x[i][k])
                for (int j = 0; j < n; ++j) m[i][j] += x[i][k] * y[k][j];
    return m;
}

inline Matrix commutator(const Matrix& x, const Matrix& y) {
    Matrix a = mul(x, y), b = mul(y, x);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] -= b[i][j];
    return a;
}

inline long trace_product(const Matrix& x, const Matrix& y) {
    long t = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = 0; k < x.size(); ++k) t += x[i][k] * y[k][i];
    return t;
}

/// -B(X, Y) = -(n - 2) tr(XY).
inline long minus_killing(const Matrix& x, const Matrix& y) {
    return -static_cast<long>(x.size() - 2) * trace_product(x, y);
}

/// Triples from dense matrices: sum of (-B([X, Y], Z))^2 over -B-orthonormal bases.
inline std::map<stiefel::TripleKey, Rational> matrix_triples(const stiefel::BlockDecomposition& d) {
    const int n = d.n();
    std::map<stiefel::ModuleLabel, std::vector<Matrix>> modules;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b)
            if (auto l = stiefel::module_of(d, {a, b})) modules[*l].push_back(elementary(n, a, b));
    const long norm = 2L * (n - 2);  // -B(E_ab, E_ab)
    std::map<stiefel::TripleKey, Rational> out;
    for (const auto& [li, xi] : modules)
        for (const auto& [lj, xj] : modules)
            for (const auto& [lk, xk] : modules) {
                if (!(li <= lj && lj <= lk)) continue;
                long sum = 0;
                for (const auto& x : xi)
                    for (const auto& y : xj) {
                        const Matrix c = commutator(x, y);
                        for (const auto& z : xk) {
                            const long v = minus_killing(c, z);
                            sum += v * v;
                        }
                    }
                if (sum) out[stiefel::TripleKey(li, lj, lk)] = Rational(sum, norm * norm * norm);
            }
    for (auto& [k, v] : out) v.canonicalize();
    return out;
}

/// Random positive rational with numerator and denominator in [1, bound].
inline Rational random_positive(std::mt19937_64& rng, long bound = 40) {
    std::uniform_int_distribution<long> u(1, bound);
    Rational q(u(rng), u(rng));
    q.canonicalize();
    return q;
}

}  // namespace oracle
