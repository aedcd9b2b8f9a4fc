#pragma once

// Bundled fixtures: small racks and modules used by the tests and reachable
// from files as "catalog:NAME".

#include "rackext/module.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rackext {

struct CatalogRack {
    std::string name;
    FinRack rack;
};

struct CatalogModule {
    std::string name;
    std::string rack_name;
    RackModule module;
};

const std::vector<CatalogRack>& catalog_racks();
const std::vector<CatalogModule>& load_bundled_catalog();

std::optional<FinRack> find_catalog_rack(const std::string& name);
std::optional<RackModule> find_catalog_module(const std::string& name);

/// The flavors Ext can be computed for: always Rack, plus Quandle for a
/// quandle-flavored module over a quandle.
std::vector<Flavor> applicable_flavors(const RackModule& m);

}  // namespace rackext
