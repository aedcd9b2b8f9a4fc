#pragma once

// Exact linear algebra over finitely generated abelian groups.
//
// A group is stored as a list of moduli, one per cyclic generator: modulus 0
// is an infinite cyclic factor, modulus m >= 2 is Z/m. Homomorphisms are
// integer matrices acting on column coordinate vectors, so the composite g∘f
// has matrix G·F.

#include "rackext/matrix.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace rackext {

class FgAbGroup {
public:
    /// The trivial group.
    FgAbGroup() = default;
    /// Throws MalformedInput for a negative modulus or a modulus of 1.
    explicit FgAbGroup(IntVector moduli);
    FgAbGroup(std::initializer_list<long long> moduli);

    static FgAbGroup free(std::size_t rank);
    static FgAbGroup cyclic(const Int& modulus);
    static FgAbGroup direct_sum(std::span<const FgAbGroup> parts);

    std::size_t rank() const noexcept { return moduli_.size(); }
    const IntVector& moduli() const noexcept { return moduli_; }
    const Int& modulus(std::size_t i) const { return moduli_[i]; }

    bool is_finite() const;
    bool is_trivial() const noexcept { return moduli_.empty(); }
    std::size_t free_rank() const;
    /// Product of the moduli, or nullopt when a free factor is present.
    std::optional<Int> order() const;

    /// Reduce coordinates into canonical representatives.
    IntVector reduce(IntVector coords) const;
    IntVector zero() const { return IntVector(moduli_.size()); }
    bool is_zero(const IntVector& coords) const;
    bool contains(const IntVector& coords) const;

    IntVector add(const IntVector& a, const IntVector& b) const;
    IntVector sub(const IntVector& a, const IntVector& b) const;
    IntVector neg(const IntVector& a) const;

    /// diag(moduli): the relation matrix presenting this group as Z^rank / image.
    IntMatrix relation_matrix() const { return IntMatrix::diagonal(moduli_); }

    /// All elements of a finite group in lexicographic order of coordinates
    /// (first coordinate most significant). Throws CapExceeded if the group is
    /// infinite or larger than cap.
    std::vector<IntVector> elements(std::size_t cap = 1'000'000) const;

    friend bool operator==(const FgAbGroup&, const FgAbGroup&) = default;

private:
    IntVector moduli_;
};

/// An element of a finitely generated abelian group in canonical coordinates.
struct AbElement {
    FgAbGroup group;
    IntVector coords;

    AbElement(FgAbGroup g, IntVector c) : group(std::move(g)), coords(group.reduce(std::move(c))) {}
    friend bool operator==(const AbElement&, const AbElement&) = default;
};

class AbHom {
public:
    /// matrix has shape (target.rank) x (source.rank). Entries are reduced
    /// modulo the target moduli. Throws MalformedInput on a shape mismatch or
    /// if the map is not well defined on the torsion of the source.
    AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix);

    static AbHom identity(const FgAbGroup& g);
    static AbHom zero(const FgAbGroup& source, const FgAbGroup& target);
    static AbHom scalar(const FgAbGroup& g, const Int& k);

    const FgAbGroup& source() const noexcept { return source_; }
    const FgAbGroup& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    IntVector operator()(const IntVector& coords) const;

    /// this ∘ inner
    AbHom after(const AbHom& inner) const;
    AbHom operator+(const AbHom& other) const;
    AbHom operator-(const AbHom& other) const;
    AbHom operator-() const;

    /// Inverse of an isomorphism. Throws PreconditionFailed otherwise.
    AbHom inverse() const;

    friend bool operator==(const AbHom&, const AbHom&) = default;

private:
    FgAbGroup source_;
    FgAbGroup target_;
    IntMatrix matrix_;
};

/// u · input · v = d with u, v unimodular and d diagonal with d1 | d2 | ...
/// (all non-negative; zeros last). u_inv and v_inv are the exact inverses.
struct SnfResult {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    IntMatrix u_inv;
    IntMatrix v_inv;

    /// Diagonal entries d(i,i) for i < min(rows, cols).
    IntVector diagonal() const;
    std::size_t rank() const;
};

SnfResult snf(const IntMatrix& m);

/// Basis of the integer kernel {x in Z^cols : m x = 0}.
std::vector<IntVector> integer_kernel(const IntMatrix& m);

/// A subgroup of `ambient` given by generators.
struct Subgroup {
    FgAbGroup ambient;
    std::vector<IntVector> generators;

    /// Order of the subgroup when the ambient group is finite.
    std::optional<Int> order() const;
    bool contains(const IntVector& element) const;
};

Subgroup hom_kernel(const AbHom& f);
Subgroup hom_image(const AbHom& f);

struct Quotient {
    /// Canonical invariant-factor form: torsion d1 | d2 | ... (each >= 2),
    /// then one 0 per free factor.
    FgAbGroup group;
    /// Sends elements of the original group to quotient coordinates.
    AbHom projection;
    /// lifts[i] is an element of the original group mapping to generator i.
    std::vector<IntVector> lifts;
};

Quotient quotient_group(const FgAbGroup& g, std::span<const IntVector> relations);

/// Some a with f(a) = target, or nullopt when target is not in the image.
std::optional<IntVector> solve_linear(const AbHom& f, const IntVector& target);

bool hom_is_iso(const AbHom& f);

/// Torsion invariant factors and free rank of a canonical group.
struct InvariantFactors {
    std::size_t free_rank = 0;
    IntVector torsion;
    friend bool operator==(const InvariantFactors&, const InvariantFactors&) = default;
};

InvariantFactors invariant_factors(const FgAbGroup& canonical);

}  // namespace rackext
