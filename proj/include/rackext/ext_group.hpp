#pragma once

// Classifying groups of abelian extensions:
//   Ext(X, A)   = Z(X, A) / B(X, A)
//   Ext_Q(X, A) = Z_Q(X, A) / B(X, A)
// computed inside the ambient group ⊕_{(x,y)} A_{x^y}.

#include "rackext/extension.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rackext {

struct ExtOrders {
    Int cocycles;
    Int coboundaries;
    Int ext;
};

struct ExtResult {
    Flavor flavor = Flavor::Rack;
    std::size_t free_rank = 0;
    /// d1 | d2 | ..., each >= 2.
    IntVector torsion;
    /// One representative cocycle per invariant factor: torsion factors in
    /// order, then the free generators.
    std::vector<FactorSet> cocycle_basis;
    /// Present when every fiber is finite.
    std::optional<ExtOrders> orders;
};

/// Kernel of cocycle_map(m, flavor) inside factor_set_space(m).
Subgroup cocycle_group(const RackModule& m, Flavor flavor);
/// Image of coboundary_map(m); the same for both flavors.
Subgroup coboundary_group(const RackModule& m);

/// Throws PreconditionFailed("FlavorMismatch") for the quandle flavor unless the
/// module is quandle-flavored over a quandle.
ExtResult ext_group(const RackModule& m, Flavor flavor);

struct BruteForceCounts {
    std::uint64_t cocycles = 0;
    std::uint64_t coboundaries = 0;
    std::uint64_t ext = 0;
};

inline constexpr std::uint64_t kDefaultBruteForceCap = 10'000'000;

/// Enumerates every factor set and every cochain. Throws CapExceeded when a
/// fiber is infinite or either space exceeds cap. `jobs` splits the factor-set
/// range across threads; the counts do not depend on it.
BruteForceCounts brute_force_ext_order(const RackModule& m, Flavor flavor, std::uint64_t cap = kDefaultBruteForceCap,
                                       unsigned jobs = 1);

/// Number of factor sets ∏_{(x,y)} |A_{x^y}|, or nullopt if infinite.
std::optional<Int> factor_set_count(const RackModule& m);

}  // namespace rackext
