#include "doctest.h"
#include "oracles.hpp"

#include "rackext/module.hpp"

using namespace rackext;

namespace {

ModuleData andr_grana_data() {
    const FgAbGroup z5{5};
    ModuleData d{cyclic_rack(3), std::vector<FgAbGroup>(3, z5), {}, {}, Flavor::Rack};
    d.phi.assign(9, AbHom::scalar(z5, 2));
    d.psi.assign(9, AbHom::scalar(z5, 4));
    return d;
}

SignedWord random_word(std::mt19937_64& rng, std::size_t n, std::size_t max_len) {
    SignedWord w;
    const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
    for (std::size_t i = 0; i < len; ++i)
        w.push_back({static_cast<Elem>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)),
                     std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1});
    return w;
}

}  // namespace

TEST_CASE("the C3 module with phi = 2 and psi = 4 validates") {
    auto m = validate_module(andr_grana_data());
    REQUIRE(m.ok());
    CHECK(m.value() == oracle::module("c3_z5_andr_grana"));
    // ψ compatibility at any triple: 2·4 + 4·4 = 24 ≡ 4.
    CHECK((2 * 4 + 4 * 4) % 5 == 4);
}

TEST_CASE("module violations carry witnesses") {
    ModuleData d = andr_grana_data();
    d.phi[4] = AbHom::scalar(FgAbGroup{5}, 0);
    auto r = validate_module(d);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violation().kind == "PhiNotIso");
    CHECK(r.violation().witness == std::vector<std::size_t>{1, 1});

    d = andr_grana_data();
    d.psi[0] = AbHom::scalar(FgAbGroup{5}, 3);
    r = validate_module(d);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violation().witness.size() == 3);

    d = andr_grana_data();
    d.flavor = Flavor::Quandle;
    r = validate_module(d);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violation().kind == "FlavorMismatch");

    ModuleData q = oracle::module("r3_d3").data();
    for (auto& p : q.psi) p = AbHom::scalar(FgAbGroup{3}, 1);
    r = validate_module(q);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violation().kind == "Eq1Violation");

    ModuleData shape = andr_grana_data();
    shape.phi.pop_back();
    CHECK_THROWS_AS(validate_module(shape), MalformedInput);
    shape = andr_grana_data();
    shape.phi[0] = AbHom::scalar(FgAbGroup{2}, 1);
    CHECK_THROWS_AS(validate_module(shape), MalformedInput);
}

TEST_CASE("the quandle condition is enforced for the quandle flavor") {
    // Over R3 with A = Z5, φ = ×2, ψ = 0: the rack identities hold but 2 + 0 ≢ 1.
    const FgAbGroup z5{5};
    ModuleData d{dihedral_quandle(3), std::vector<FgAbGroup>(3, z5), {}, {}, Flavor::Quandle};
    d.phi.assign(9, AbHom::scalar(z5, 2));
    d.psi.assign(9, AbHom::zero(z5, z5));
    auto r = validate_module(d);
    REQUIRE_FALSE(r.ok());
    CHECK(r.violation().kind == "Eq2Violation");
    d.flavor = Flavor::Rack;
    CHECK(validate_module(d).ok());
}

TEST_CASE("trivial modules") {
    const RackModule m = make_trivial_module(cyclic_rack(3), FgAbGroup{2});
    CHECK(m.flavor() == Flavor::Rack);
    for (Elem x = 0; x < 3; ++x)
        for (Elem y = 0; y < 3; ++y) {
            CHECK(m.phi(x, y) == AbHom::identity(FgAbGroup{2}));
            CHECK(m.psi(y, x).matrix().is_zero());
        }
    CHECK(make_trivial_module(dihedral_quandle(3), FgAbGroup{3}).flavor() == Flavor::Quandle);
    CHECK(make_trivial_module(trivial_rack(2), FgAbGroup{}).group(0).is_trivial());
    CHECK_THROWS_AS(make_trivial_module(cyclic_rack(3), FgAbGroup{2}, Flavor::Quandle), PreconditionFailed);
}

TEST_CASE("quandle modules also validate as rack modules") {
    for (const auto& c : load_bundled_catalog()) {
        if (c.module.flavor() != Flavor::Quandle) continue;
        CHECK(validate_module([&] {
                  ModuleData d = c.module.data();
                  d.flavor = Flavor::Rack;
                  return d;
              }())
                  .ok());
        CHECK(c.module.as_rack_module().flavor() == Flavor::Rack);
    }
}

TEST_CASE("As X modules") {
    const FgAbGroup z5{5};
    const std::vector<AbHom> ident(3, AbHom::identity(z5));
    CHECK(make_asx_module(cyclic_rack(3), z5, ident, false) == make_trivial_module(cyclic_rack(3), z5, Flavor::Rack));

    const std::vector<AbHom> two(3, AbHom::scalar(z5, 2));
    const RackModule rack_variant = make_asx_module(cyclic_rack(3), z5, two, false);
    CHECK(rack_variant.phi(0, 1) == AbHom::scalar(z5, 2));
    CHECK(rack_variant.psi(1, 0).matrix().is_zero());

    const RackModule q = make_asx_module(dihedral_quandle(3), z5, two, true);
    CHECK(q.flavor() == Flavor::Quandle);
    CHECK(q.psi(1, 0) == AbHom::scalar(z5, 4));

    // Over C3 the quandle variant recovers the C3 module with ψ = 4.
    const RackModule c3q = make_asx_module(cyclic_rack(3), z5, two, true);
    CHECK(c3q.data().phi == oracle::module("c3_z5_andr_grana").data().phi);
    CHECK(c3q.data().psi == oracle::module("c3_z5_andr_grana").data().psi);
    CHECK(c3q.flavor() == Flavor::Rack);
}

TEST_CASE("As X modules with non-constant actions") {
    // Over Conj(Z2) = trivial rack on 2 elements, any two commuting
    // automorphisms are compatible.
    const FgAbGroup z2z2{2, 2};
    const AbHom swap(z2z2, z2z2, IntMatrix{{0, 1}, {1, 0}});
    const RackModule m = make_asx_module(trivial_rack(2), z2z2, {AbHom::identity(z2z2), swap}, false);
    CHECK(m.phi(0, 1) == swap);
    CHECK(m.phi(1, 0) == AbHom::identity(z2z2));

    // Over R3 the action must satisfy ρ_{x^y} ρ_y = ρ_y ρ_x.
    const FgAbGroup z7{7};
    CHECK_THROWS_AS(make_asx_module(dihedral_quandle(3), z7,
                                    {AbHom::scalar(z7, 1), AbHom::scalar(z7, 2), AbHom::scalar(z7, 3)}, false),
                    PreconditionFailed);
    const FgAbGroup z2{2};
    CHECK_THROWS_AS(make_asx_module(trivial_rack(2), z2, {AbHom::identity(z2), AbHom::scalar(z2, 0)}, false),
                    PreconditionFailed);
}

TEST_CASE("Alexander and dihedral modules") {
    const FinRack r3 = dihedral_quandle(3);
    const RackModule d3 = make_alexander_module(r3, {{3, {1, 1}}});
    CHECK(d3.phi(0, 1) == AbHom::scalar(FgAbGroup{3}, -1));
    CHECK(d3.psi(1, 0) == AbHom::scalar(FgAbGroup{3}, 2));
    CHECK(d3 == make_dihedral_module(r3, {3}));
    CHECK(d3.flavor() == Flavor::Quandle);

    const RackModule t = make_alexander_module(r3, {{7, {-1, 1}}});
    CHECK(t.data().phi == make_trivial_module(r3, FgAbGroup{7}).data().phi);
    CHECK(t.data().psi == make_trivial_module(r3, FgAbGroup{7}).data().psi);

    const RackModule dinf = make_dihedral_module(r3, {0});
    CHECK(dinf.group(0) == FgAbGroup{0});
    CHECK(dinf.phi(2, 0) == AbHom::scalar(FgAbGroup{0}, -1));

    const RackModule d2 = make_dihedral_module(r3, {2});
    CHECK(d2.data().phi == make_trivial_module(r3, FgAbGroup{2}).data().phi);
    CHECK(d2.data().psi == make_trivial_module(r3, FgAbGroup{2}).data().psi);

    CHECK(make_alexander_module(cyclic_rack(3), {{5, {1, 1}}}).flavor() == Flavor::Rack);

    const RackModule deg2 = make_alexander_module(r3, {{2, {1, 1, 1}}});
    CHECK(deg2.group(0) == FgAbGroup{2, 2});
    CHECK(deg2.phi(0, 0).matrix() == IntMatrix{{0, 1}, {1, 1}});
    CHECK(companion_matrix({1, 3, 1}, 0) == IntMatrix{{0, -1}, {1, -3}});
}

TEST_CASE("Alexander preconditions") {
    const FinRack r3 = dihedral_quandle(3);
    CHECK_THROWS_AS(make_alexander_module(r3, {{6, {2, 1}}}), PreconditionFailed);
    CHECK_THROWS_AS(make_alexander_module(r3, {{0, {1, 2}}}), PreconditionFailed);
    CHECK_THROWS_AS(make_alexander_module(r3, {{5, {1}}}), MalformedInput);
    CHECK_THROWS_AS(make_alexander_module(r3, {{5, {1, 1}}, {5, {1, 1}}}), MalformedInput);
    try {
        make_alexander_module(r3, {{6, {2, 1}}});
    } catch (const PreconditionFailed& e) {
        CHECK(e.kind() == "NonInvertibleT");
    }
}

TEST_CASE("heterogeneous dihedral modules") {
    const RackModule m = make_dihedral_module(trivial_rack(2), {3, 6});
    CHECK(m.group(0) == FgAbGroup{3});
    CHECK(m.group(1) == FgAbGroup{6});
    CHECK(m.psi(1, 0) == AbHom(FgAbGroup{6}, FgAbGroup{3}, IntMatrix{{2}}));
    CHECK(validate_module(m.data()).ok());
    CHECK(validate_module(oracle::module("r3_plus_point_dihedral_3_6").data()).ok());

    // ×2 : Z3 → Z5 is not a homomorphism, so moduli (3, 5) cannot form a module.
    try {
        make_dihedral_module(trivial_rack(2), {3, 5});
        FAIL("moduli (3, 5) were accepted");
    } catch (const PreconditionFailed& e) {
        CHECK(e.kind() == "IncompatibleOrbitData");
    }
}

TEST_CASE("every catalog module validates") {
    for (const auto& c : load_bundled_catalog()) {
        INFO(c.name);
        CHECK(validate_module(c.module.data()).ok());
    }
}

TEST_CASE("word actions") {
    const RackModule& m = oracle::module("c3_z5_andr_grana");
    const WordAction empty = word_action(m, 1, {});
    CHECK(empty.map == AbHom::identity(FgAbGroup{5}));
    CHECK(empty.terminal == 1);
    for (Elem x = 0; x < 3; ++x)
        for (Elem y = 0; y < 3; ++y) {
            const WordAction a = word_action(m, x, {{y, 1}, {y, -1}});
            CHECK(a.map == AbHom::identity(FgAbGroup{5}));
            CHECK(a.terminal == x);
            const WordAction b = word_action(m, x, {{y, -1}, {y, 1}});
            CHECK(b.map == AbHom::identity(FgAbGroup{5}));
            CHECK(b.terminal == x);
        }
    const WordAction two = word_action(m, 0, parse_word("1 2", 3));
    CHECK(two.terminal == 2);
    CHECK(two.map == AbHom::scalar(FgAbGroup{5}, 4));
}

TEST_CASE("word actions respect the As X relation") {
    std::mt19937_64 rng(41);
    for (const char* name : {"c3_z5_andr_grana", "r3_d3", "r3_alex_1_t_t2_z2", "r3_plus_point_dihedral_3_6",
                             "conj_s3_z2", "trivial2_dihedral_3_6"}) {
        const RackModule& m = oracle::module(name);
        const FinRack& r = m.base();
        for (int trial = 0; trial < 200; ++trial) {
            const SignedWord pre = random_word(rng, r.size(), 4), post = random_word(rng, r.size(), 4);
            const Elem x = static_cast<Elem>(std::uniform_int_distribution<std::size_t>(0, r.size() - 1)(rng));
            const Elem y = static_cast<Elem>(std::uniform_int_distribution<std::size_t>(0, r.size() - 1)(rng));
            const Elem z = static_cast<Elem>(std::uniform_int_distribution<std::size_t>(0, r.size() - 1)(rng));
            SignedWord lhs = pre, rhs = pre;
            lhs.insert(lhs.end(), {{y, 1}, {z, 1}});
            rhs.insert(rhs.end(), {{z, 1}, {r.op(y, z), 1}});
            lhs.insert(lhs.end(), post.begin(), post.end());
            rhs.insert(rhs.end(), post.begin(), post.end());
            const WordAction a = word_action(m, x, lhs), b = word_action(m, x, rhs);
            CHECK(a.map == b.map);
            CHECK(a.terminal == b.terminal);
            CHECK(a.terminal == act(r, x, lhs));
        }
    }
}

TEST_CASE("phi along cycles") {
    auto cycle_composite = [](const RackModule& m, Elem x, Elem y) {
        Elem s = x;
        AbHom acc = AbHom::identity(m.group(x));
        do {
            acc = m.phi(s, y).after(acc);
            s = m.base().op(s, y);
        } while (s != x);
        return acc;
    };
    for (const auto& c : load_bundled_catalog()) {
        const RackModule& m = c.module;
        const RackModule triv = make_trivial_module(m.base(), FgAbGroup{3});
        for (Elem x = 0; x < m.size(); ++x)
            for (Elem y = 0; y < m.size(); ++y) {
                CHECK(hom_is_iso(cycle_composite(m, x, y)));
                CHECK(cycle_composite(triv, x, y) == AbHom::identity(FgAbGroup{3}));
            }
    }
}

TEST_CASE("module maps") {
    const RackModule& m = oracle::module("c3_z5_andr_grana");
    const FgAbGroup z5{5};
    CHECK(check_module_map({m, m, std::vector<AbHom>(3, AbHom::identity(z5))}));
    CHECK(check_module_map({m, m, std::vector<AbHom>(3, AbHom::zero(z5, z5))}));
    CHECK(check_module_map({m, m, std::vector<AbHom>(3, AbHom::scalar(z5, 3))}));

    const RackModule& asx = oracle::module("c3_z5_asx");
    const auto v = module_map_violation({m, asx, std::vector<AbHom>(3, AbHom::identity(z5))});
    REQUIRE(v.has_value());
    CHECK(v->kind == "PsiNaturality");

    const RackModule triv = make_trivial_module(cyclic_rack(3), z5);
    const auto w = module_map_violation({m, triv, std::vector<AbHom>(3, AbHom::identity(z5))});
    REQUIRE(w.has_value());
    CHECK(w->kind == "PhiNaturality");
}

TEST_CASE("flavor strings") {
    CHECK(parse_flavor("rack") == Flavor::Rack);
    CHECK(to_string(Flavor::Quandle) == "quandle");
    CHECK_THROWS_AS(parse_flavor("Rack"), MalformedInput);
}
