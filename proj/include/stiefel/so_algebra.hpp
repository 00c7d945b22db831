#pragma once

// so(n) with the basis e_ab = E_ab - E_ba, its Killing form, and the block
// decomposition n = k1 + k2 (+ k3) whose last block is the isotropy algebra.

#include "stiefel/errors.hpp"
#include "stiefel/rational.hpp"

#include <compare>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace stiefel {

class BlockDecomposition {
public:
    /// Blocks are laid out in order along the diagonal; the last block is the isotropy SO(k_m).
    explicit BlockDecomposition(std::vector<int> blocks) : blocks_(std::move(blocks)) {
        if (blocks_.size() < 2 || blocks_.size() > 3)
            throw DomainError("block decomposition needs 2 or 3 blocks");
        for (int k : blocks_)
            if (k < 1) throw DomainError("block sizes must be positive");
        n_ = std::accumulate(blocks_.begin(), blocks_.end(), 0);
        if (n_ < 4) throw DomainError("block decomposition needs n >= 4");
    }

    int n() const { return n_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<int>& blocks() const { return blocks_; }

    /// Size of block a, 1-based.
    int k(int a) const {
        if (a < 1 || a > block_count()) throw DomainError("block index out of range");
        return blocks_[static_cast<std::size_t>(a - 1)];
    }

    /// Block containing matrix index i (1-based).
    int block_of(int i) const {
        int upper = 0;
        for (int a = 1; a <= block_count(); ++a) {
            upper += k(a);
            if (i <= upper) return a;
        }
        throw InvalidElementError("matrix index " + std::to_string(i) + " exceeds n");
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(blocks_[i]);
        }
        return s;
    }

    friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;

private:
    std::vector<int> blocks_;
    int n_ = 0;
};

/// e_ab with a < b. The opposite orientation is carried as a sign by SignedElement.
struct BasisElement {
    int a = 1;
    int b = 2;

    friend auto operator<=>(const BasisElement&, const BasisElement&) = default;
};

inline BasisElement make_element(int a, int b, int n) {
    if (a < 1 || b < 1 || a > n || b > n || a >= b)
        throw InvalidElementError("e_" + std::to_string(a) + "," + std::to_string(b) +
                                  " is not a normalized basis element of so(" + std::to_string(n) + ")");
    return {a, b};
}

/// sign * e_ab; sign == 0 is the zero vector.
struct SignedElement {
    int sign = 0;
    BasisElement element{};

    bool is_zero() const { return sign == 0; }
    friend bool operator==(const SignedElement& x, const SignedElement& y) {
        if (x.sign == 0 || y.sign == 0) return x.sign == y.sign;
        return x.sign == y.sign && x.element == y.element;
    }
};

/// +e_pq normalized to a < b; e_pp is zero.
inline SignedElement oriented(int p, int q, int sign = 1) {
    if (p == q || sign == 0) return {};
    if (p < q) return {sign, {p, q}};
    return {-sign, {q, p}};
}

/// -B(e, e) = (n - 2) * (-tr(e e)) = 2(n - 2).
inline Rational killing_norm(const BlockDecomposition& decomp, const BasisElement& e) {
    make_element(e.a, e.b, decomp.n());
    return Rational(2 * (decomp.n() - 2));
}

/// [e_ab, e_cd] = d_bc e_ad + d_ad e_bc - d_bd e_ac - d_ac e_bd.
inline SignedElement bracket(const BasisElement& x, const BasisElement& y) {
    if (x.a < 1 || x.a >= x.b || y.a < 1 || y.a >= y.b)
        throw InvalidElementError("bracket of non-normalized basis elements");
    if (x == y) return {};
    const int a = x.a, b = x.b, c = y.a, d = y.b;
    if (b == c) return oriented(a, d, +1);
    if (a == d) return oriented(b, c, +1);
    if (b == d) return oriented(a, c, -1);
    if (a == c) return oriented(b, d, -1);
    return {};
}

/// Isotropy-module label: Diag(a) is so(k_a) for a non-isotropy block, OffDiag(a, b) is m_ab.
struct ModuleLabel {
    enum class Kind { Diag, OffDiag };

    Kind kind = Kind::Diag;
    int a = 1;
    int b = 0;

    static ModuleLabel diag(int a) { return {Kind::Diag, a, 0}; }
    static ModuleLabel off_diag(int a, int b) {
        if (a == b) throw DomainError("off-diagonal module needs distinct blocks");
        return a < b ? ModuleLabel{Kind::OffDiag, a, b} : ModuleLabel{Kind::OffDiag, b, a};
    }

    bool is_diag() const { return kind == Kind::Diag; }

    /// "1", "2", "12", "13", "23".
    std::string name() const {
        return is_diag() ? std::to_string(a) : std::to_string(a) + std::to_string(b);
    }

    /// Metric coefficient name, e.g. "x12".
    std::string coefficient_name() const { return "x" + name(); }

    static ModuleLabel parse(const std::string& s) {
        std::string t = s;
        if (!t.empty() && (t[0] == 'x' || t[0] == 'r')) t.erase(0, 1);
        if (t.size() == 1 && t[0] >= '1' && t[0] <= '9') return diag(t[0] - '0');
        if (t.size() == 2 && t[0] >= '1' && t[1] >= '1' && t[0] <= '9' && t[1] <= '9')
            return off_diag(t[0] - '0', t[1] - '0');
        throw DomainError("unrecognized module label '" + s + "'");
    }

    friend auto operator<=>(const ModuleLabel&, const ModuleLabel&) = default;
};

/// Module containing e; nullopt when e lies in the isotropy algebra (both indices in the last block).
inline std::optional<ModuleLabel> module_of(const BlockDecomposition& decomp, const BasisElement& e) {
    make_element(e.a, e.b, decomp.n());
    const int p = decomp.block_of(e.a);
    const int q = decomp.block_of(e.b);
    if (p == q) {
        if (p == decomp.block_count()) return std::nullopt;
        return ModuleLabel::diag(p);
    }
    return ModuleLabel::off_diag(p, q);
}

/// Ratio B_so(k) = alpha * B_so(n)|so(k) for the standard embedding: (k - 2) / (n - 2).
inline Rational killing_ratio(int k, int n) {
    if (k < 3)
        throw UndefinedRatioError("so(" + std::to_string(k) + ") is abelian; Killing ratio undefined");
    if (k > n) throw DomainError("so(k) does not embed in so(n) for k > n");
    return make_rational(k - 2, n - 2);
}

/// Every normalized basis element of so(n), ordered (1,2), (1,3), ..., (n-1,n).
inline std::vector<BasisElement> so_basis(int n) {
    std::vector<BasisElement> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) out.push_back({a, b});
    return out;
}

}  // namespace stiefel
