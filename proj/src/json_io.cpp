#include "rackext/json_io.hpp"

#include "rackext/catalog.hpp"

#include <fstream>
#include <limits>
#include <set>

namespace rackext::io {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw MalformedInput(what);
}

void require_keys(const json& j, const std::set<std::string>& required, const std::set<std::string>& optional,
                  const std::string& what) {
    require(j.is_object(), what + " must be a JSON object");
    for (const auto& k : required) require(j.contains(k), what + " is missing key \"" + k + "\"");
    for (auto it = j.begin(); it != j.end(); ++it)
        require(required.contains(it.key()) || optional.contains(it.key()),
                what + " has unexpected key \"" + it.key() + "\"");
}

std::size_t size_from_json(const json& j, const std::string& what) {
    require(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0),
            what + " must be a non-negative integer");
    return j.get<std::size_t>();
}

long long small_from_json(const json& j, const std::string& what) {
    require(j.is_number_integer(), what + " must be an integer");
    return j.get<long long>();
}

IntVector vector_from_json(const json& j, const std::string& what) {
    require(j.is_array(), what + " must be an array");
    IntVector out;
    for (const auto& v : j) out.push_back(int_from_json(v));
    return out;
}

json vector_to_json(const IntVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(int_to_json(x));
    return out;
}

IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& what) {
    require(j.is_array(), what + " must be an array of rows");
    require(j.size() == rows, what + " must have " + std::to_string(rows) + " rows");
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        require(j[r].is_array() && j[r].size() == cols, what + " row " + std::to_string(r) + " must have " +
                                                            std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = int_from_json(j[r][c]);
    }
    return m;
}

std::string pair_key(std::size_t a, std::size_t b) { return std::to_string(a) + "," + std::to_string(b); }

// Pair-keyed object: exactly the keys "a,b" for a, b < n.
void require_pair_keys(const json& j, std::size_t n, const std::string& what) {
    require(j.is_object(), what + " must be an object keyed by \"x,y\"");
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) require(j.contains(pair_key(a, b)), what + " is missing key \"" + pair_key(a, b) + "\"");
    require(j.size() == n * n, what + " has keys that are not element pairs");
}

AbHom hom_from_json(const json& j, const FgAbGroup& src, const FgAbGroup& dst, const std::string& what) {
    try {
        return AbHom(src, dst, matrix_from_json(j, dst.rank(), src.rank(), what));
    } catch (const MalformedInput& e) {
        throw MalformedInput(what + ": " + e.what());
    }
}

Flavor default_flavor(const FinRack& r) { return is_quandle(r) ? Flavor::Quandle : Flavor::Rack; }

std::vector<AbHom> homs_from_list(const json& j, const FgAbGroup& a, std::size_t n, const std::string& what) {
    require(j.is_array() && j.size() == n, what + " must list one matrix per rack element");
    std::vector<AbHom> out;
    for (std::size_t x = 0; x < n; ++x) out.push_back(hom_from_json(j[x], a, a, what + "[" + std::to_string(x) + "]"));
    return out;
}

}  // namespace

json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw MalformedInput(path.string() + ": " + e.what());
    }
}

json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
        require(s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos,
                "integer string \"" + s + "\" is not a decimal integer");
        return Int(s);
    }
    throw MalformedInput("expected an integer");
}

// ---------------------------------------------------------------- racks

Table table_from_json(const json& j) {
    require_keys(j, {"size", "table"}, {}, "rack");
    const std::size_t n = size_from_json(j["size"], "rack size");
    require(n > 0, "rack size must be positive");
    const json& t = j["table"];
    require(t.is_array() && t.size() == n, "rack table must have size rows");
    Table out(n);
    for (std::size_t a = 0; a < n; ++a) {
        require(t[a].is_array() && t[a].size() == n, "rack table row " + std::to_string(a) + " must have size entries");
        for (std::size_t b = 0; b < n; ++b) out[a].push_back(small_from_json(t[a][b], "rack table entry"));
    }
    return out;
}

json rack_to_json(const FinRack& r) { return json{{"size", r.size()}, {"table", r.table()}}; }

Checked<FinRack> rack_from_json(const json& j) { return validate_rack(table_from_json(j)); }

json group_to_json(const FinGroup& g) { return json{{"size", g.size()}, {"mult", g.table()}}; }

FinGroup group_from_json(const json& j) {
    require_keys(j, {"size", "mult"}, {}, "group");
    const std::size_t n = size_from_json(j["size"], "group size");
    const json& t = j["mult"];
    require(t.is_array() && t.size() == n, "group table must have size rows");
    Table out(n);
    for (std::size_t a = 0; a < n; ++a) {
        require(t[a].is_array() && t[a].size() == n, "group table row must have size entries");
        for (std::size_t b = 0; b < n; ++b) out[a].push_back(small_from_json(t[a][b], "group table entry"));
    }
    return FinGroup::from_table(out);
}

// ---------------------------------------------------------------- resolver

FinRack Resolver::rack(const json& ref) const {
    if (ref.is_object()) return rack_from_json(ref).value();
    require(ref.is_string(), "rack reference must be an object or a string");
    const auto s = ref.get<std::string>();
    if (s.rfind("catalog:", 0) == 0) {
        auto r = find_catalog_rack(s.substr(8));
        require(r.has_value(), "unknown catalog rack \"" + s.substr(8) + "\"");
        return *r;
    }
    const auto path = base_dir / s;
    auto checked = rack_from_json(read_file(path));
    if (!checked) throw MalformedInput(path.string() + " is not a rack: " + checked.violation().describe());
    return std::move(checked).value();
}

ModuleData Resolver::module_data(const json& ref) const {
    if (ref.is_object()) return module_data_from_json(ref, *this);
    require(ref.is_string(), "module reference must be an object or a string");
    const auto s = ref.get<std::string>();
    if (s.rfind("catalog:", 0) == 0) {
        auto m = find_catalog_module(s.substr(8));
        require(m.has_value(), "unknown catalog module \"" + s.substr(8) + "\"");
        return m->data();
    }
    const auto path = base_dir / s;
    Resolver nested{path.parent_path()};
    return module_data_from_json(read_file(path), nested);
}

// ---------------------------------------------------------------- modules

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r)));
    return rows;
}

json module_to_json(const RackModule& m) {
    const std::size_t n = m.size();
    json groups = json::array();
    for (Elem x = 0; x < n; ++x) groups.push_back(vector_to_json(m.group(x).moduli()));
    json phi = json::object(), psi = json::object();
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            phi[pair_key(x, y)] = matrix_to_json(m.phi(x, y).matrix());
            psi[pair_key(y, x)] = matrix_to_json(m.psi(y, x).matrix());
        }
    return json{{"rack", rack_to_json(m.base())}, {"flavor", to_string(m.flavor())}, {"groups", groups},
                {"phi", phi}, {"psi", psi}};
}

ModuleData module_data_from_json(const json& j, const Resolver& resolver) {
    require(j.is_object(), "module must be a JSON object");
    if (j.contains("kind")) {
        require(j["kind"].is_string(), "module kind must be a string");
        const auto kind = j["kind"].get<std::string>();
        std::optional<RackModule> built;
        if (kind == "trivial") {
            require_keys(j, {"kind", "rack", "group"}, {"flavor"}, "trivial module");
            const FinRack r = resolver.rack(j["rack"]);
            built = make_trivial_module(r, FgAbGroup(vector_from_json(j["group"], "group")), Flavor::Rack);
        } else if (kind == "dihedral") {
            require_keys(j, {"kind", "rack", "moduli"}, {"flavor"}, "dihedral module");
            built = make_dihedral_module(resolver.rack(j["rack"]), vector_from_json(j["moduli"], "moduli"));
        } else if (kind == "alexander") {
            require_keys(j, {"kind", "rack", "orbits"}, {"flavor"}, "alexander module");
            require(j["orbits"].is_array(), "alexander orbits must be an array");
            std::vector<AlexanderOrbit> orbits;
            for (const auto& o : j["orbits"]) {
                require_keys(o, {"n", "h"}, {}, "alexander orbit");
                orbits.push_back({int_from_json(o["n"]), vector_from_json(o["h"], "h")});
            }
            built = make_alexander_module(resolver.rack(j["rack"]), orbits);
        } else if (kind == "asx") {
            require_keys(j, {"kind", "rack", "group", "action"}, {"flavor", "quandle_variant"}, "asx module");
            const FinRack r = resolver.rack(j["rack"]);
            const FgAbGroup a(vector_from_json(j["group"], "group"));
            const bool variant = j.value("quandle_variant", false);
            built = make_asx_module(r, a, homs_from_list(j["action"], a, r.size(), "action"), variant);
        } else {
            throw MalformedInput("unknown module kind \"" + kind + "\"");
        }
        ModuleData d = built->data();
        d.flavor = j.contains("flavor") ? parse_flavor(j["flavor"].get<std::string>())
                   : kind == "asx"      ? built->flavor()
                                        : default_flavor(d.base);
        return d;
    }

    require_keys(j, {"rack", "flavor", "groups", "phi", "psi"}, {}, "module");
    ModuleData d;
    d.base = resolver.rack(j["rack"]);
    const std::size_t n = d.base.size();
    require(j["flavor"].is_string(), "module flavor must be a string");
    d.flavor = parse_flavor(j["flavor"].get<std::string>());
    require(j["groups"].is_array() && j["groups"].size() == n, "module groups must list one group per element");
    for (const auto& g : j["groups"]) d.groups.emplace_back(vector_from_json(g, "group moduli"));
    require_pair_keys(j["phi"], n, "phi");
    require_pair_keys(j["psi"], n, "psi");
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
            d.phi.push_back(hom_from_json(j["phi"][pair_key(x, y)], d.groups[x], d.groups[d.base.op(x, y)],
                                          "phi " + pair_key(x, y)));
    for (Elem y = 0; y < n; ++y)
        for (Elem x = 0; x < n; ++x)
            d.psi.push_back(hom_from_json(j["psi"][pair_key(y, x)], d.groups[y], d.groups[d.base.op(x, y)],
                                          "psi " + pair_key(y, x)));
    return d;
}

RackModule module_from_json(const json& j, const Resolver& resolver) {
    auto checked = validate_module(module_data_from_json(j, resolver));
    if (!checked) throw PreconditionFailed("InvalidModule", checked.violation().describe());
    return std::move(checked).value();
}

// ---------------------------------------------------------------- factor sets

json factor_set_to_json(const RackModule& m, const FactorSet& s) {
    const std::size_t n = m.size();
    json sigma = json::object();
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) sigma[pair_key(x, y)] = vector_to_json(s.at(n, x, y));
    return json{{"sigma", sigma}};
}

FactorSet factor_set_from_json(const json& j, const RackModule& m) {
    require_keys(j, {"sigma"}, {"module"}, "factor set");
    const std::size_t n = m.size();
    require_pair_keys(j["sigma"], n, "sigma");
    std::vector<IntVector> values;
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            auto v = vector_from_json(j["sigma"][pair_key(x, y)], "sigma " + pair_key(x, y));
            require(v.size() == m.group(m.base().op(x, y)).rank(),
                    "sigma " + pair_key(x, y) + " must have the rank of A_{x^y}");
            values.push_back(std::move(v));
        }
    return make_factor_set(m, std::move(values));
}

json cochain_to_json(const Cochain& u) {
    json out = json::object();
    for (std::size_t x = 0; x < u.size(); ++x) out[std::to_string(x)] = vector_to_json(u[x]);
    return out;
}

Cochain section_from_json(const json& j, const RackModule& m) {
    require_keys(j, {"s"}, {}, "section");
    const json& s = j["s"];
    require(s.is_object() && s.size() == m.size(), "section must assign coordinates to every element");
    std::vector<IntVector> values;
    for (Elem x = 0; x < m.size(); ++x) {
        const auto key = std::to_string(x);
        require(s.contains(key), "section is missing element " + key);
        auto v = vector_from_json(s[key], "section value");
        require(v.size() == m.group(x).rank(), "section value " + key + " must have the rank of A_x");
        values.push_back(std::move(v));
    }
    return make_cochain(m, std::move(values));
}

// ---------------------------------------------------------------- dynamical

json dynamical_to_json(const DynamicalCocycle& d) {
    const std::size_t n = d.base.size(), k = d.s_size;
    json alpha = json::object();
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            json rows = json::array();
            for (std::size_t s = 0; s < k; ++s) {
                json row = json::array();
                for (std::size_t t = 0; t < k; ++t) row.push_back(d.at(x, y, s, t));
                rows.push_back(row);
            }
            alpha[pair_key(x, y)] = rows;
        }
    return json{{"rack", rack_to_json(d.base)}, {"s_size", k}, {"alpha", alpha}};
}

DynamicalCocycle dynamical_from_json(const json& j, const Resolver& resolver, const FinRack* base) {
    require_keys(j, {"s_size", "alpha"}, {"rack"}, "dynamical cocycle");
    DynamicalCocycle d;
    if (j.contains("rack")) {
        d.base = resolver.rack(j["rack"]);
        require(base == nullptr || *base == d.base, "dynamical cocycle rack differs from the given base rack");
    } else {
        require(base != nullptr, "dynamical cocycle needs a base rack");
        d.base = *base;
    }
    d.s_size = size_from_json(j["s_size"], "s_size");
    require(d.s_size > 0, "s_size must be positive");
    const std::size_t n = d.base.size(), k = d.s_size;
    require_pair_keys(j["alpha"], n, "alpha");
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) {
            const json& rows = j["alpha"][pair_key(x, y)];
            require(rows.is_array() && rows.size() == k, "alpha " + pair_key(x, y) + " must have s_size rows");
            std::vector<std::size_t> tab;
            for (const auto& row : rows) {
                require(row.is_array() && row.size() == k, "alpha rows must have s_size entries");
                for (const auto& v : row) {
                    const std::size_t val = size_from_json(v, "alpha entry");
                    require(val < k, "alpha entry outside the fiber set");
                    tab.push_back(val);
                }
            }
            d.alpha.push_back(std::move(tab));
        }
    return d;
}

// ---------------------------------------------------------------- results

json ext_result_to_json(const RackModule& m, const ExtResult& r) {
    json reps = json::array();
    for (const auto& s : r.cocycle_basis) reps.push_back(factor_set_to_json(m, s));
    json out{{"flavor", to_string(r.flavor)},
             {"free_rank", r.free_rank},
             {"torsion", vector_to_json(r.torsion)},
             {"representatives", reps}};
    if (r.orders)
        out["orders"] = json{{"B", int_to_json(r.orders->coboundaries)},
                             {"Ext", int_to_json(r.orders->ext)},
                             {"Z", int_to_json(r.orders->cocycles)}};
    else
        out["orders"] = nullptr;
    return out;
}

json violation_to_json(const Violation& v) {
    return json{{"kind", v.kind}, {"witness", v.witness}, {"detail", v.detail}};
}

}  // namespace rackext::io
