#include "rackext/catalog.hpp"

#include <algorithm>

namespace rackext {

namespace {

// Disjoint union of the 3-element dihedral quandle with a fixed point that
// acts trivially and is acted on trivially: two orbits {0,1,2}, {3}.
FinRack dihedral3_plus_point() {
    Table t(4, std::vector<long long>(4));
    for (long long a = 0; a < 4; ++a)
        for (long long b = 0; b < 4; ++b) t[a][b] = (a < 3 && b < 3) ? (2 * b - a + 3) % 3 : a;
    return make_rack(t);
}

// C3 with A = Z5, φ ≡ ×2, ψ ≡ ×4.
RackModule andruskiewitsch_grana_c3(const FinRack& c3) {
    const FgAbGroup z5{5};
    ModuleData d{c3, std::vector<FgAbGroup>(3, z5), {}, {}, Flavor::Rack};
    d.phi.assign(9, AbHom::scalar(z5, 2));
    d.psi.assign(9, AbHom::scalar(z5, 4));
    return validate_module(std::move(d)).value();
}

std::vector<CatalogRack> build_racks() {
    return {
        {"point", trivial_rack(1)},
        {"trivial2", trivial_rack(2)},
        {"trivial3", trivial_rack(3)},
        {"c3", cyclic_rack(3)},
        {"r3", dihedral_quandle(3)},
        {"conj_z2", conj_rack(FinGroup::cyclic(2))},
        {"conj_s3", conj_rack(FinGroup::symmetric(3))},
        {"r3_plus_point", dihedral3_plus_point()},
    };
}

std::vector<CatalogModule> build_modules() {
    auto rack = [](const char* name) { return *find_catalog_rack(name); };
    const FgAbGroup z2{2}, z3{3}, z5{5};
    std::vector<CatalogModule> out;
    auto add = [&](const char* name, const char* rack_name, RackModule m) {
        out.push_back(CatalogModule{name, rack_name, std::move(m)});
    };
    add("point_z2", "point", make_trivial_module(rack("point"), z2));
    add("point_z5", "point", make_trivial_module(rack("point"), z5));
    add("trivial2_z2", "trivial2", make_trivial_module(rack("trivial2"), z2));
    add("trivial3_z2", "trivial3", make_trivial_module(rack("trivial3"), z2));
    add("c3_z2", "c3", make_trivial_module(rack("c3"), z2));
    add("c3_z5", "c3", make_trivial_module(rack("c3"), z5));
    add("c3_z5_andr_grana", "c3", andruskiewitsch_grana_c3(rack("c3")));
    add("c3_z5_asx", "c3", make_asx_module(rack("c3"), z5, std::vector<AbHom>(3, AbHom::scalar(z5, 2)), false));
    add("r3_z2", "r3", make_trivial_module(rack("r3"), z2));
    add("r3_z3", "r3", make_trivial_module(rack("r3"), z3));
    add("r3_d2", "r3", make_dihedral_module(rack("r3"), {2}));
    add("r3_d3", "r3", make_dihedral_module(rack("r3"), {3}));
    add("r3_dinf", "r3", make_dihedral_module(rack("r3"), {0}));
    add("r3_alex_1_plus_t_z3", "r3", make_alexander_module(rack("r3"), {{3, {1, 1}}}));
    add("r3_alex_t_minus_1_z5", "r3", make_alexander_module(rack("r3"), {{5, {-1, 1}}}));
    add("r3_alex_1_t_t2_z2", "r3", make_alexander_module(rack("r3"), {{2, {1, 1, 1}}}));
    add("trivial2_dihedral_3_6", "trivial2", make_dihedral_module(rack("trivial2"), {3, 6}));
    add("r3_plus_point_dihedral_3_6", "r3_plus_point", make_dihedral_module(rack("r3_plus_point"), {3, 6}));
    add("conj_z2_z2", "conj_z2", make_trivial_module(rack("conj_z2"), z2));
    add("conj_s3_z2", "conj_s3", make_trivial_module(rack("conj_s3"), z2));
    return out;
}

}  // namespace

const std::vector<CatalogRack>& catalog_racks() {
    static const std::vector<CatalogRack> racks = build_racks();
    return racks;
}

const std::vector<CatalogModule>& load_bundled_catalog() {
    static const std::vector<CatalogModule> modules = build_modules();
    return modules;
}

std::optional<FinRack> find_catalog_rack(const std::string& name) {
    const auto& racks = catalog_racks();
    const auto it = std::find_if(racks.begin(), racks.end(), [&](const CatalogRack& r) { return r.name == name; });
    if (it == racks.end()) return std::nullopt;
    return it->rack;
}

std::optional<RackModule> find_catalog_module(const std::string& name) {
    const auto& mods = load_bundled_catalog();
    const auto it = std::find_if(mods.begin(), mods.end(), [&](const CatalogModule& m) { return m.name == name; });
    if (it == mods.end()) return std::nullopt;
    return it->module;
}

std::vector<Flavor> applicable_flavors(const RackModule& m) {
    std::vector<Flavor> out{Flavor::Rack};
    if (m.flavor() == Flavor::Quandle && is_quandle(m.base())) out.push_back(Flavor::Quandle);
    return out;
}

}  // namespace rackext
