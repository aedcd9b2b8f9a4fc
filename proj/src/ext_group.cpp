#include "rackext/ext_group.hpp"

#include <stdexcept>

namespace rackext {

Subgroup cocycle_group(const RackModule& m, Flavor flavor) { return hom_kernel(cocycle_map(m, flavor)); }

Subgroup coboundary_group(const RackModule& m) { return hom_image(coboundary_map(m)); }

ExtResult ext_group(const RackModule& m, Flavor flavor) {
    if (flavor == Flavor::Quandle && (m.flavor() != Flavor::Quandle || !is_quandle(m.base())))
        throw PreconditionFailed("FlavorMismatch", "Ext_Q needs a quandle module over a quandle");

    const Subgroup z = cocycle_group(m, flavor);
    const Subgroup b = coboundary_group(m);
    const FgAbGroup& ambient = z.ambient;

    // Present Z abstractly as Z^p / (relations among its generators), then
    // add the coboundaries rewritten in terms of those generators.
    const std::size_t p = z.generators.size();
    IntMatrix gens(ambient.rank(), p);
    for (std::size_t c = 0; c < p; ++c)
        for (std::size_t r = 0; r < ambient.rank(); ++r) gens(r, c) = z.generators[c][r];
    const AbHom include(FgAbGroup::free(p), ambient, gens);

    std::vector<IntVector> relations = hom_kernel(include).generators;
    for (const auto& bg : b.generators) {
        auto pre = solve_linear(include, bg);
        if (!pre) throw std::logic_error("coboundary outside the cocycle group");
        relations.push_back(std::move(*pre));
    }
    const Quotient q = quotient_group(FgAbGroup::free(p), relations);

    ExtResult out;
    out.flavor = flavor;
    const auto inv = invariant_factors(q.group);
    out.free_rank = inv.free_rank;
    out.torsion = inv.torsion;
    for (const auto& lift : q.lifts) out.cocycle_basis.push_back(unflatten_factor_set(m, include(lift)));
    if (ambient.is_finite()) {
        const Int zo = *z.order();
        const Int bo = *b.order();
        out.orders = ExtOrders{zo, bo, *q.group.order()};
    }
    return out;
}

std::optional<Int> factor_set_count(const RackModule& m) { return factor_set_space(m).order(); }

}  // namespace rackext
