#pragma once

// Finite racks and quandles as operation tables over elements 0..n-1, with
// table[a][b] = a^b.

#include "rackext/error.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rackext {

using Elem = std::uint32_t;
using Table = std::vector<std::vector<long long>>;
using Permutation = std::vector<Elem>;

class FinRack {
public:
    std::size_t size() const noexcept { return n_; }
    /// a^b
    Elem op(Elem a, Elem b) const { return table_[a * n_ + b]; }
    /// a^{b̄}: the unique c with c^b = a.
    Elem inv_op(Elem a, Elem b) const { return inv_[a * n_ + b]; }

    /// The bijection π_b : a ↦ a^b.
    Permutation translation(Elem b) const;
    Table table() const;

    friend bool operator==(const FinRack& x, const FinRack& y) { return x.n_ == y.n_ && x.table_ == y.table_; }

private:
    friend Checked<FinRack> validate_rack(const Table& table);
    std::size_t n_ = 0;
    std::vector<Elem> table_;
    std::vector<Elem> inv_;
};

/// Checks shape and range (throws MalformedInput), then (R1) and (R2).
/// Violations: AxiomR1Violation{b}, AxiomR2Violation{a,b,c}.
Checked<FinRack> validate_rack(const Table& table);

/// Convenience for known-good tables; throws PreconditionFailed on a violation.
FinRack make_rack(const Table& table);

/// nullopt when the rack is a quandle, otherwise the first a with a^a != a.
std::optional<Elem> quandle_witness(const FinRack& r);
inline bool is_quandle(const FinRack& r) { return !quandle_witness(r).has_value(); }

/// nullopt when f(a^b) = f(a)^{f(b)} for all a, b; otherwise the first failing pair.
std::optional<std::pair<Elem, Elem>> homomorphism_witness(const std::vector<Elem>& f, const FinRack& src,
                                                          const FinRack& dst);
inline bool check_homomorphism(const std::vector<Elem>& f, const FinRack& src, const FinRack& dst) {
    return !homomorphism_witness(f, src, dst).has_value();
}

/// Orbit partition, blocks sorted internally and by least element.
std::vector<std::vector<Elem>> orbits(const FinRack& r);
/// orbit_index[x] = position of x's block in orbits(r).
std::vector<std::size_t> orbit_index(const FinRack& r);

struct OperatorGroup {
    /// elements[0] is the identity.
    std::vector<Permutation> elements;
    /// words[i] lists generators y1..yk with elements[i] = π_{yk} ∘ ... ∘ π_{y1},
    /// i.e. a ↦ (...(a^{y1})...)^{yk}.
    std::vector<std::vector<Elem>> words;
};

inline constexpr std::size_t kDefaultOperatorGroupCap = 1'000'000;

/// Breadth-first closure of {π_x}. Throws CapExceeded past `cap` elements.
OperatorGroup operator_group(const FinRack& r, std::size_t cap = kDefaultOperatorGroupCap);

class FinGroup {
public:
    /// Validates closure, associativity, identity and inverses; throws
    /// MalformedInput on failure.
    static FinGroup from_table(const Table& mult);
    static FinGroup cyclic(std::size_t n);
    static FinGroup symmetric(std::size_t degree);

    std::size_t size() const noexcept { return n_; }
    Elem mul(Elem a, Elem b) const { return mult_[a * n_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    Elem identity() const noexcept { return identity_; }
    Table table() const;

private:
    std::size_t n_ = 0;
    std::vector<Elem> mult_;
    std::vector<Elem> inv_;
    Elem identity_ = 0;
};

/// g^h = h^{-1} g h.
FinRack conj_rack(const FinGroup& g);

struct Letter {
    Elem generator;
    int sign;  // +1 or -1
    friend bool operator==(const Letter&, const Letter&) = default;
};

using SignedWord = std::vector<Letter>;

/// Parses whitespace-separated tokens "y" or "y^-1". Throws MalformedInput.
SignedWord parse_word(const std::string& text, std::size_t rack_size);
std::string format_word(const SignedWord& w);

/// Terminal element x^w, applying letters left to right.
Elem act(const FinRack& r, Elem x, const SignedWord& w);

struct Presentation {
    std::size_t generators = 0;
    std::vector<SignedWord> relations;
};

/// One generator per element, relation x_b^{-1} x_a x_b x_{a^b}^{-1} per ordered pair (a, b).
Presentation associated_group_presentation(const FinRack& r);

// Standard small racks.
FinRack trivial_rack(std::size_t n);
FinRack cyclic_rack(std::size_t n);
/// x^y = 2y - x mod n.
FinRack dihedral_quandle(std::size_t n);

/// Relabel elements: result has p[a]^p[b] = p[a^b].
FinRack relabel(const FinRack& r, const Permutation& p);

}  // namespace rackext
