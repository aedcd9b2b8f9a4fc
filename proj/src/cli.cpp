#include "rackext/cli.hpp"

#include "rackext/catalog.hpp"
#include "rackext/json_io.hpp"

#include "CLI11.hpp"

#include <functional>
#include <sstream>

namespace rackext::cli {

namespace {

using io::json;

// A validated-false outcome: the JSON body is still printed, exit code 1.
struct Outcome {
    json body;
    int code = kOk;
};

bool is_catalog_ref(const std::string& s) { return s.rfind("catalog:", 0) == 0; }

io::Resolver resolver_for(const std::string& path) {
    return io::Resolver{std::filesystem::path(path).parent_path().empty() ? std::filesystem::path(".")
                                                                           : std::filesystem::path(path).parent_path()};
}

FinRack load_rack_json(const json& j, const std::string& context) {
    auto checked = io::rack_from_json(j);
    if (!checked)
        throw PreconditionFailed(checked.violation().kind, context + " is not a rack: " + checked.violation().describe());
    return std::move(checked).value();
}

FinRack load_rack(const std::string& ref) {
    if (is_catalog_ref(ref)) return io::Resolver{}.rack(json(ref));
    return load_rack_json(io::read_file(ref), ref);
}

ModuleData load_module_data(const std::string& ref) {
    if (is_catalog_ref(ref)) return io::Resolver{}.module_data(json(ref));
    return io::module_data_from_json(io::read_file(ref), resolver_for(ref));
}

RackModule load_module(const std::string& ref) {
    auto checked = validate_module(load_module_data(ref));
    if (!checked)
        throw PreconditionFailed(checked.violation().kind, ref + " is not a valid module: " + checked.violation().describe());
    return std::move(checked).value();
}

FactorSet load_factor_set(const std::string& path, const RackModule& m) {
    return io::factor_set_from_json(io::read_file(path), m);
}

json orbits_json(const FinRack& r) { return json(orbits(r)); }

json word_json(const SignedWord& w) {
    json out = json::array();
    for (const auto& l : w) out.push_back(json{{"generator", l.generator}, {"sign", l.sign}});
    return out;
}

Outcome cmd_check_rack(const std::string& file) {
    auto checked = io::rack_from_json(io::read_file(file));
    if (!checked) return {json{{"rack", false}, {"violation", io::violation_to_json(checked.violation())}}, kFalse};
    const FinRack& r = checked.value();
    return {json{{"rack", true}, {"quandle", is_quandle(r)}, {"orbits", orbits_json(r)}}, kOk};
}

Outcome cmd_check_quandle(const std::string& file) {
    auto checked = io::rack_from_json(io::read_file(file));
    if (!checked)
        return {json{{"rack", false}, {"quandle", false}, {"violation", io::violation_to_json(checked.violation())}},
                kFalse};
    if (auto w = quandle_witness(checked.value())) {
        const Violation v{"IdempotenceViolation", {*w}, "a^a != a"};
        return {json{{"rack", true}, {"quandle", false}, {"violation", io::violation_to_json(v)}}, kFalse};
    }
    return {json{{"rack", true}, {"quandle", true}}, kOk};
}

Outcome cmd_opgroup(const std::string& file) {
    const auto g = operator_group(load_rack(file));
    json elems = json::array();
    for (std::size_t i = 0; i < g.elements.size(); ++i)
        elems.push_back(json{{"permutation", g.elements[i]}, {"word", g.words[i]}});
    return {json{{"order", g.elements.size()}, {"elements", elems}}, kOk};
}

Outcome cmd_asgroup(const std::string& file) {
    const auto p = associated_group_presentation(load_rack(file));
    json rels = json::array();
    for (const auto& w : p.relations) rels.push_back(format_word(w));
    return {json{{"generators", p.generators}, {"relations", rels}}, kOk};
}

Outcome cmd_conj(const std::string& file) {
    const FinRack r = conj_rack(io::group_from_json(io::read_file(file)));
    return {io::rack_to_json(r), kOk};
}

Outcome cmd_module_check(const std::string& file) {
    auto checked = validate_module(load_module_data(file));
    if (!checked) return {json{{"valid", false}, {"violation", io::violation_to_json(checked.violation())}}, kFalse};
    const RackModule& m = checked.value();
    return {json{{"valid", true}, {"flavor", to_string(m.flavor())}, {"homogeneous", [&] {
                     for (Elem x = 1; x < m.size(); ++x)
                         if (!(m.group(x) == m.group(0))) return false;
                     return true;
                 }()}},
            kOk};
}

json parse_int_list(const std::string& text, const std::string& what) {
    json out = json::array();
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw MalformedInput(what + " has an empty entry");
        out.push_back(io::int_to_json(io::int_from_json(json(tok))));
    }
    if (out.empty()) throw MalformedInput(what + " is empty");
    return out;
}

struct MakeOptions {
    std::string kind, rack, group, moduli, action, flavor;
    std::vector<std::string> orbits;
    bool quandle_variant = false;
};

Outcome cmd_module_make(const MakeOptions& o) {
    if (o.rack.empty()) throw MalformedInput("module make needs --rack");
    const json rack = is_catalog_ref(o.rack) ? json(o.rack) : io::rack_to_json(load_rack(o.rack));
    json request{{"kind", o.kind}, {"rack", rack}};
    auto need = [&](const std::string& value, const char* flag) {
        if (value.empty()) throw MalformedInput("--kind " + o.kind + " needs " + flag);
    };
    if (o.kind == "trivial") {
        need(o.group, "--group");
        request["group"] = parse_int_list(o.group, "--group");
    } else if (o.kind == "dihedral") {
        need(o.moduli, "--moduli");
        request["moduli"] = parse_int_list(o.moduli, "--moduli");
    } else if (o.kind == "alexander") {
        if (o.orbits.empty()) throw MalformedInput("--kind alexander needs --orbit N:h0,h1,...");
        json orbits = json::array();
        for (const auto& s : o.orbits) {
            const auto colon = s.find(':');
            if (colon == std::string::npos) throw MalformedInput("--orbit must look like N:h0,h1,...");
            orbits.push_back(json{{"n", io::int_to_json(io::int_from_json(json(s.substr(0, colon))))},
                                  {"h", parse_int_list(s.substr(colon + 1), "--orbit coefficients")}});
        }
        request["orbits"] = orbits;
    } else if (o.kind == "asx") {
        need(o.group, "--group");
        need(o.action, "--action");
        request["group"] = parse_int_list(o.group, "--group");
        request["action"] = io::read_file(o.action);
        request["quandle_variant"] = o.quandle_variant;
    } else {
        throw MalformedInput("unknown --kind \"" + o.kind + "\"");
    }
    if (!o.flavor.empty()) request["flavor"] = o.flavor;
    return {io::module_to_json(io::module_from_json(request, io::Resolver{})), kOk};
}

Outcome cmd_semidirect(const std::string& module_file) {
    return {io::rack_to_json(semidirect_product(load_module(module_file)).rack()), kOk};
}

Outcome cmd_extend(const std::string& module_file, const std::string& sigma_file) {
    const RackModule m = load_module(module_file);
    auto e = extension_from_factor_set(m, load_factor_set(sigma_file, m));
    if (!e) return {json{{"rack", false}, {"violation", io::violation_to_json(e.violation())}}, kFalse};
    return {io::rack_to_json(e.value().rack()), kOk};
}

Outcome cmd_cocycle_check(const std::string& module_file, const std::string& sigma_file, bool quandle) {
    const RackModule m = load_module(module_file);
    const FactorSet s = load_factor_set(sigma_file, m);
    std::optional<Violation> v;
    if (quandle) {
        v = quandle_factor_violation(m, s);
    } else if (auto w = cocycle_violation(m, s)) {
        v = Violation{"CocycleViolation", {(*w)[0], (*w)[1], (*w)[2]}, "cocycle identity fails"};
    }
    if (v) return {json{{"cocycle", false}, {"violation", io::violation_to_json(*v)}}, kFalse};
    return {json{{"cocycle", true}}, kOk};
}

Outcome cmd_equivalent(const std::string& module_file, const std::string& a, const std::string& b) {
    const RackModule m = load_module(module_file);
    const auto u = are_equivalent(m, load_factor_set(a, m), load_factor_set(b, m));
    if (!u) return {json{{"equivalent", false}}, kFalse};
    return {json{{"equivalent", true}, {"upsilon", io::cochain_to_json(*u)}}, kOk};
}

Outcome cmd_split(const std::string& module_file, const std::string& sigma_file) {
    const RackModule m = load_module(module_file);
    const FactorSet s = load_factor_set(sigma_file, m);
    if (auto w = cocycle_violation(m, s))
        throw PreconditionFailed("CocycleViolation", "factor set fails the cocycle identity at (" +
                                                         std::to_string((*w)[0]) + "," + std::to_string((*w)[1]) +
                                                         "," + std::to_string((*w)[2]) + ")");
    const auto u = is_split(m, s);
    if (!u) return {json{{"split", false}}, kFalse};
    return {json{{"split", true}, {"upsilon", io::cochain_to_json(*u)}}, kOk};
}

// The rack file is either a plain rack (elements in the canonical pair order
// of the module) or {"rack": ..., "labels": [{"x": x, "a": [...]}, ...]}.
Outcome cmd_extract(const std::string& module_file, const std::string& rack_file, const std::string& section_file) {
    const RackModule m = load_module(module_file);
    const json j = io::read_file(rack_file);
    FinRack rack;
    std::vector<FiberLabel> labels;
    if (j.is_object() && j.contains("labels")) {
        if (j.size() != 2 || !j.contains("rack")) throw MalformedInput("labeled rack needs exactly \"rack\" and \"labels\"");
        rack = load_rack_json(j["rack"], rack_file);
        if (!j["labels"].is_array()) throw MalformedInput("labels must be an array");
        for (const auto& l : j["labels"]) {
            if (!l.is_object() || l.size() != 2 || !l.contains("x") || !l.contains("a"))
                throw MalformedInput("each label needs exactly \"x\" and \"a\"");
            IntVector coords;
            for (const auto& c : l["a"]) coords.push_back(io::int_from_json(c));
            labels.push_back({l["x"].get<Elem>(), coords});
        }
    } else {
        rack = load_rack_json(j, rack_file);
        labels = extension_table(m, zero_factor_set(m), rack.size()).labels;
    }
    auto e = make_extension(m, std::move(rack), std::move(labels));
    if (!e) return {json{{"extension", false}, {"violation", io::violation_to_json(e.violation())}}, kFalse};
    const Cochain section = io::section_from_json(io::read_file(section_file), m);
    return {io::factor_set_to_json(m, extract_factor_set(m, e.value(), section)), kOk};
}

Outcome cmd_dynamical(const std::string& rack_file, const std::string& alpha_file) {
    const FinRack base = load_rack(rack_file);
    const DynamicalCocycle d = io::dynamical_from_json(io::read_file(alpha_file), resolver_for(alpha_file), &base);
    auto r = dynamical_extension(d);
    if (!r) return {json{{"rack", false}, {"violation", io::violation_to_json(r.violation())}}, kFalse};
    return {io::rack_to_json(r.value()), kOk};
}

struct ExtOptions {
    bool quandle = false, brute_force = false;
    unsigned jobs = 1;
    std::uint64_t cap = kDefaultBruteForceCap;
};

Outcome cmd_ext(const std::string& module_file, const ExtOptions& o) {
    const RackModule m = load_module(module_file);
    const Flavor flavor = o.quandle ? Flavor::Quandle : Flavor::Rack;
    const ExtResult r = ext_group(m, flavor);
    json body = io::ext_result_to_json(m, r);
    int code = kOk;
    if (o.brute_force) {
        const auto bf = brute_force_ext_order(m, flavor, o.cap, o.jobs);
        const bool agree = r.orders && r.orders->cocycles == bf.cocycles && r.orders->coboundaries == bf.coboundaries &&
                           r.orders->ext == bf.ext;
        body["brute_force"] = json{{"Z", bf.cocycles}, {"B", bf.coboundaries}, {"Ext", bf.ext}, {"agrees", agree}};
        if (!agree) code = kFalse;
    }
    return {body, code};
}

Outcome cmd_word_action(const std::string& module_file, Elem from, const std::string& word) {
    const RackModule m = load_module(module_file);
    if (from >= m.size()) throw MalformedInput("--from is not an element of the rack");
    const SignedWord w = parse_word(word, m.size());
    const WordAction a = word_action(m, from, w);
    return {json{{"from", from}, {"word", word_json(w)}, {"terminal", a.terminal}, {"matrix", io::matrix_to_json(a.map.matrix())}},
            kOk};
}

Outcome cmd_catalog(const std::string& rack_name, const std::string& module_name) {
    if (!rack_name.empty()) {
        auto r = find_catalog_rack(rack_name);
        if (!r) throw MalformedInput("unknown catalog rack \"" + rack_name + "\"");
        return {io::rack_to_json(*r), kOk};
    }
    if (!module_name.empty()) {
        auto m = find_catalog_module(module_name);
        if (!m) throw MalformedInput("unknown catalog module \"" + module_name + "\"");
        return {io::module_to_json(*m), kOk};
    }
    json racks = json::array(), modules = json::array();
    for (const auto& r : catalog_racks()) racks.push_back(json{{"name", r.name}, {"size", r.rack.size()}});
    for (const auto& m : load_bundled_catalog())
        modules.push_back(json{{"name", m.name}, {"rack", m.rack_name}, {"flavor", to_string(m.module.flavor())}});
    return {json{{"racks", racks}, {"modules", modules}}, kOk};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite racks, rack modules and their abelian extensions"};
    app.name("rackext");
    app.require_subcommand(1);

    std::function<Outcome()> action;
    std::string file, file2, file3;

    auto one_file = [&](const char* verb, const char* desc, Outcome (*fn)(const std::string&)) {
        auto* sub = app.add_subcommand(verb, desc);
        sub->add_option("FILE", file)->required();
        sub->callback([&, fn] { action = [&, fn] { return fn(file); }; });
    };
    one_file("check-rack", "Validate a rack table", cmd_check_rack);
    one_file("check-quandle", "Check the quandle axiom", cmd_check_quandle);
    one_file("opgroup", "Enumerate the operator group", cmd_opgroup);
    one_file("asgroup", "Presentation of the associated group", cmd_asgroup);
    one_file("conj", "Conjugation rack of a group table", cmd_conj);
    one_file("semidirect", "Semidirect product A x| X", cmd_semidirect);
    {
        auto* sub = app.add_subcommand("orbits", "Orbit partition of a rack");
        sub->add_option("FILE", file)->required();
        sub->callback([&] { action = [&] { return Outcome{json{{"orbits", orbits_json(load_rack(file))}}, kOk}; }; });
    }

    auto* module = app.add_subcommand("module", "Module operations");
    module->require_subcommand(1);
    {
        auto* check = module->add_subcommand("check", "Validate a module file");
        check->add_option("FILE", file)->required();
        check->callback([&] { action = [&] { return cmd_module_check(file); }; });
    }
    MakeOptions make;
    {
        auto* sub = module->add_subcommand("make", "Build a module from a constructor");
        sub->add_option("--kind", make.kind, "trivial|dihedral|alexander|asx")
            ->required()
            ->check(CLI::IsMember({"trivial", "dihedral", "alexander", "asx"}));
        sub->add_option("--rack", make.rack, "Rack file or catalog:NAME")->required();
        sub->add_option("--group", make.group, "Fiber moduli, comma separated (0 for Z)");
        sub->add_option("--moduli", make.moduli, "Per-orbit moduli for the dihedral kind");
        sub->add_option("--orbit", make.orbits, "Per-orbit N:h0,h1,... for the alexander kind");
        sub->add_option("--action", make.action, "JSON file listing one matrix per element");
        sub->add_flag("--quandle-variant", make.quandle_variant, "Use psi = Id - phi");
        sub->add_option("--flavor", make.flavor)->check(CLI::IsMember({"rack", "quandle"}));
        sub->callback([&] { action = [&] { return cmd_module_make(make); }; });
    }

    {
        auto* sub = app.add_subcommand("extend", "Build E[A, sigma]");
        sub->add_option("MODULEFILE", file)->required();
        sub->add_option("SIGMAFILE", file2)->required();
        sub->callback([&] { action = [&] { return cmd_extend(file, file2); }; });
    }
    bool quandle = false;
    {
        auto* sub = app.add_subcommand("cocycle-check", "Check the cocycle identity");
        sub->add_option("MODULEFILE", file)->required();
        sub->add_option("SIGMAFILE", file2)->required();
        sub->add_flag("--quandle", quandle, "Also require sigma_{x,x} = 0");
        sub->callback([&] { action = [&] { return cmd_cocycle_check(file, file2, quandle); }; });
    }
    {
        auto* sub = app.add_subcommand("equivalent", "Decide cohomologous factor sets");
        sub->add_option("MODULEFILE", file)->required();
        sub->add_option("SIGMA1", file2)->required();
        sub->add_option("SIGMA2", file3)->required();
        sub->callback([&] { action = [&] { return cmd_equivalent(file, file2, file3); }; });
    }
    {
        auto* sub = app.add_subcommand("split", "Decide whether a cocycle is a coboundary");
        sub->add_option("MODULEFILE", file)->required();
        sub->add_option("SIGMAFILE", file2)->required();
        sub->callback([&] { action = [&] { return cmd_split(file, file2); }; });
    }
    {
        auto* sub = app.add_subcommand("extract", "Factor set of an extension relative to a section");
        sub->add_option("MODULEFILE", file)->required();
        sub->add_option("RACKFILE", file2)->required();
        sub->add_option("SECTIONFILE", file3)->required();
        sub->callback([&] { action = [&] { return cmd_extract(file, file2, file3); }; });
    }
    {
        auto* sub = app.add_subcommand("dynamical", "Extension by a dynamical cocycle");
        sub->add_option("RACKFILE", file)->required();
        sub->add_option("ALPHAFILE", file2)->required();
        sub->callback([&] { action = [&] { return cmd_dynamical(file, file2); }; });
    }
    ExtOptions ext;
    {
        auto* sub = app.add_subcommand("ext", "Classifying group of abelian extensions");
        sub->add_option("MODULEFILE", file)->required();
        sub->add_flag("--quandle", ext.quandle, "Quandle extensions");
        sub->add_flag("--brute-force", ext.brute_force, "Cross-check orders by enumeration");
        sub->add_option("--jobs", ext.jobs, "Threads for enumeration")->check(CLI::Range(1u, 256u));
        sub->add_option("--cap", ext.cap, "Largest enumerated space");
        sub->callback([&] { action = [&] { return cmd_ext(file, ext); }; });
    }
    Elem from = 0;
    std::string word;
    {
        auto* sub = app.add_subcommand("word-action", "Map A_x -> A_{x^w} of a signed word");
        sub->add_option("MODULEFILE", file)->required();
        sub->add_option("--from", from)->required();
        sub->add_option("--word", word)->required();
        sub->callback([&] { action = [&] { return cmd_word_action(file, from, word); }; });
    }
    std::string cat_rack, cat_module;
    {
        auto* sub = app.add_subcommand("catalog", "List or export bundled fixtures");
        auto* r = sub->add_option("--rack", cat_rack, "Print the named rack");
        sub->add_option("--module", cat_module, "Print the named module")->excludes(r);
        sub->callback([&] { action = [&] { return cmd_catalog(cat_rack, cat_module); }; });
    }

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kMalformed;
    }

    try {
        const Outcome o = action();
        out << o.body.dump(2) << "\n";
        return o.code;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kCapExceeded;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kMalformed;
    } catch (const json::exception& e) {
        err << "error: malformed JSON: " << e.what() << "\n";
        return kMalformed;
    }
}

}  // namespace rackext::cli
