#pragma once

// Structure-constant triples [k; ij] over the non-isotropy modules, computed
// by summing squared brackets over a -B-orthonormal basis and by closed form.

#include "stiefel/rational.hpp"
#include "stiefel/so_algebra.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <vector>

namespace stiefel {

/// Unordered triple of module labels, stored sorted.
class TripleKey {
public:
    TripleKey(ModuleLabel i, ModuleLabel j, ModuleLabel k) : labels_{i, j, k} {
        std::sort(labels_.begin(), labels_.end());
    }
    const std::array<ModuleLabel, 3>& labels() const { return labels_; }
    friend auto operator<=>(const TripleKey&, const TripleKey&) = default;

private:
    std::array<ModuleLabel, 3> labels_;
};

/// Module dimensions d_k. Diag(a) is present only for k_a >= 2 and a below the isotropy block.
inline std::map<ModuleLabel, int> dims(const BlockDecomposition& decomp) {
    std::map<ModuleLabel, int> out;
    const int m = decomp.block_count();
    for (int a = 1; a < m; ++a) {
        const int k = decomp.k(a);
        if (k >= 2) out.emplace(ModuleLabel::diag(a), k * (k - 1) / 2);
    }
    for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b) out.emplace(ModuleLabel::off_diag(a, b), decomp.k(a) * decomp.k(b));
    return out;
}

class TripleTable {
public:
    explicit TripleTable(BlockDecomposition decomp) : decomp_(std::move(decomp)), dims_(stiefel::dims(decomp_)) {}

    const BlockDecomposition& decomposition() const { return decomp_; }
    const std::map<ModuleLabel, int>& dims() const { return dims_; }
    const std::map<TripleKey, Rational>& entries() const { return entries_; }

    /// [k; ij]; zero for absent keys.
    Rational at(const ModuleLabel& i, const ModuleLabel& j, const ModuleLabel& k) const {
        auto it = entries_.find(TripleKey(i, j, k));
        return it == entries_.end() ? Rational(0) : it->second;
    }

    void set(const ModuleLabel& i, const ModuleLabel& j, const ModuleLabel& k, const Rational& value) {
        for (const auto& l : {i, j, k})
            if (!dims_.contains(l)) throw DomainError("module " + l.name() + " is not part of the decomposition");
        if (value < 0) throw DomainError("structure triples are nonnegative");
        if (value == 0)
            entries_.erase(TripleKey(i, j, k));
        else
            entries_[TripleKey(i, j, k)] = value;
    }

    friend bool operator==(const TripleTable& x, const TripleTable& y) {
        return x.decomp_ == y.decomp_ && x.entries_ == y.entries_;
    }

private:
    BlockDecomposition decomp_;
    std::map<ModuleLabel, int> dims_;
    std::map<TripleKey, Rational> entries_;
};

/// Number of ordered basis pairs (alpha in m_i, beta in m_j) whose bracket lands in m_k,
/// keyed by the ordered label triple (i, j, k). Each such pair contributes 1/(2(n-2)).
inline std::map<std::array<ModuleLabel, 3>, long> ordered_bracket_counts(const BlockDecomposition& decomp) {
    struct Classified {
        BasisElement e;
        ModuleLabel label;
    };
    std::vector<Classified> basis;
    for (const auto& e : so_basis(decomp.n()))
        if (auto l = module_of(decomp, e)) basis.push_back({e, *l});

    std::map<std::array<ModuleLabel, 3>, long> counts;
    for (const auto& x : basis) {
        for (const auto& y : basis) {
            const SignedElement z = bracket(x.e, y.e);
            if (z.is_zero()) continue;
            const auto lz = module_of(decomp, z.element);
            if (!lz) continue;  // lands in the isotropy algebra
            ++counts[{x.label, y.label, *lz}];
        }
    }
    return counts;
}

/// Brute-force triples: sum of (-B([e_a, e_b], e_c))^2 over the orthonormal basis e / sqrt(2(n-2)).
inline TripleTable triples_bruteforce(const BlockDecomposition& decomp) {
    if (decomp.block_count() != 3) throw DomainError("triples need a three-block decomposition");
    // A nonzero bracket [e_a, e_b] = +-e_c gives A = +-1/sqrt(2(n-2)), so A^2 = 1/(2(n-2)).
    const Rational unit = make_rational(1, 2 * (decomp.n() - 2));
    TripleTable table(decomp);
    for (const auto& [key, count] : ordered_bracket_counts(decomp)) table.set(key[0], key[1], key[2], unit * count);
    return table;
}

/// Closed forms for the seven admissible triple shapes.
inline TripleTable triples_closed_form(const BlockDecomposition& decomp) {
    if (decomp.block_count() != 3) throw DomainError("triples need a three-block decomposition");
    const long n = decomp.n();
    const auto k = [&](int a) -> long { return decomp.k(a); };
    const auto over = [&](long num) { return make_rational(num, 2 * (n - 2)); };

    TripleTable table(decomp);
    const auto& d = table.dims();
    for (int a = 1; a <= 2; ++a) {
        const ModuleLabel da = ModuleLabel::diag(a);
        if (!d.contains(da)) continue;
        // [a; aa]
        table.set(da, da, da, over(k(a) * (k(a) - 1) * (k(a) - 2)));
        // [a; (ab)(ab)]
        for (int b = 1; b <= 3; ++b) {
            if (b == a) continue;
            const ModuleLabel ab = ModuleLabel::off_diag(a, b);
            table.set(da, ab, ab, over(k(a) * k(b) * (k(a) - 1)));
        }
    }
    // [(13); (12)(23)]
    table.set(ModuleLabel::off_diag(1, 3), ModuleLabel::off_diag(1, 2), ModuleLabel::off_diag(2, 3),
              over(k(1) * k(2) * k(3)));
    return table;
}

}  // namespace stiefel
