#pragma once

// JSON file formats. Racks are {"size": n, "table": [[...]]} with
// table[a][b] = a^b; groups are {"size": n, "mult": [[...]]}. Pair-indexed
// maps use keys "x,y" in decimal.

#include "rackext/ext_group.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace rackext::io {

using json = nlohmann::json;

/// Resolves string references to racks and modules: "catalog:NAME" names a
/// bundled fixture, anything else is a path relative to base_dir.
struct Resolver {
    std::filesystem::path base_dir = ".";

    FinRack rack(const json& ref) const;
    ModuleData module_data(const json& ref) const;
};

json read_file(const std::filesystem::path& path);

json int_to_json(const Int& v);
Int int_from_json(const json& j);

json rack_to_json(const FinRack& r);
/// Returns the validation outcome; throws MalformedInput on format errors.
Checked<FinRack> rack_from_json(const json& j);
Table table_from_json(const json& j);

json group_to_json(const FinGroup& g);
FinGroup group_from_json(const json& j);

json module_to_json(const RackModule& m);
/// Explicit form {"rack","flavor","groups","phi","psi"} or a constructor
/// shorthand {"kind": "trivial"|"dihedral"|"alexander"|"asx", ...}.
ModuleData module_data_from_json(const json& j, const Resolver& resolver);
/// Throws PreconditionFailed when the data violates a module axiom.
RackModule module_from_json(const json& j, const Resolver& resolver);

json factor_set_to_json(const RackModule& m, const FactorSet& s);
/// Reads {"sigma": {"x,y": [...]}}; an optional "module" key is accepted and ignored.
FactorSet factor_set_from_json(const json& j, const RackModule& m);

json cochain_to_json(const Cochain& u);
/// Reads {"s": {"x": [...]}}.
Cochain section_from_json(const json& j, const RackModule& m);

json dynamical_to_json(const DynamicalCocycle& d);
/// Reads {"rack": <ref>?, "s_size": k, "alpha": {"x,y": [[...]]}}; `base` is
/// used when "rack" is absent.
DynamicalCocycle dynamical_from_json(const json& j, const Resolver& resolver, const FinRack* base);

json ext_result_to_json(const RackModule& m, const ExtResult& r);

json violation_to_json(const Violation& v);

json matrix_to_json(const IntMatrix& m);

}  // namespace rackext::io
