#include "doctest.h"
#include "oracles.hpp"

#include "rackext/abelian.hpp"

using namespace rackext;

namespace {

bool divisibility_chain(const IntVector& d) {
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        if (d[i] == 0) {
            if (d[i + 1] != 0) return false;
        } else if (d[i + 1] % d[i] != 0) {
            return false;
        }
    }
    return true;
}

void check_snf(const IntMatrix& m) {
    const SnfResult r = snf(m);
    CHECK(r.u * m * r.v == r.d);
    CHECK(r.u * r.u_inv == IntMatrix::identity(m.rows()));
    CHECK(r.v * r.v_inv == IntMatrix::identity(m.cols()));
    CHECK(abs(determinant(r.u)) == 1);
    CHECK(abs(determinant(r.v)) == 1);
    for (std::size_t i = 0; i < r.d.rows(); ++i)
        for (std::size_t j = 0; j < r.d.cols(); ++j)
            if (i != j) CHECK(r.d(i, j) == 0);
    const IntVector d = r.diagonal();
    for (const auto& x : d) CHECK(x >= 0);
    CHECK(divisibility_chain(d));
}

}  // namespace

TEST_CASE("snf of small matrices") {
    CHECK(snf(IntMatrix::identity(2)).diagonal() == IntVector{1, 1});
    CHECK(snf(IntMatrix{{2, 0}, {0, 4}}).diagonal() == IntVector{2, 4});
    CHECK(snf(IntMatrix{{2, 4}, {6, 8}}).diagonal() == IntVector{2, 4});
    CHECK(snf(IntMatrix{{4, 0}, {0, 6}}).diagonal() == IntVector{2, 12});
    CHECK(snf(IntMatrix(2, 3)).diagonal() == IntVector{0, 0});
    CHECK(snf(IntMatrix(0, 3)).diagonal().empty());
    check_snf(IntMatrix{{2, 4}, {6, 8}});
    check_snf(IntMatrix(3, 2));
}

TEST_CASE("snf invariants on random matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        const std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        check_snf(oracle::random_matrix(rng, rows, cols, 20));
    }
}

TEST_CASE("snf does not overflow on large entries") {
    IntMatrix m(2, 2);
    m(0, 0) = Int("123456789012345678901234567890");
    m(0, 1) = 7;
    m(1, 0) = 3;
    m(1, 1) = Int("-98765432109876543210");
    check_snf(m);
}

TEST_CASE("group construction") {
    CHECK_THROWS_AS(FgAbGroup({1}), MalformedInput);
    CHECK_THROWS_AS(FgAbGroup({-3}), MalformedInput);
    const FgAbGroup g{2, 0, 3};
    CHECK(g.rank() == 3);
    CHECK(g.free_rank() == 1);
    CHECK_FALSE(g.is_finite());
    CHECK_FALSE(g.order().has_value());
    CHECK(g.reduce({5, -7, -1}) == IntVector{1, -7, 2});
    CHECK(FgAbGroup{2, 3}.elements().size() == 6);
    CHECK(FgAbGroup{2, 3}.elements()[1] == IntVector{0, 1});
    CHECK_THROWS_AS(FgAbGroup{0}.elements(), CapExceeded);
    const AbElement e(FgAbGroup{5}, {12});
    CHECK(e.coords == IntVector{2});
}

TEST_CASE("hom well-definedness") {
    CHECK_THROWS_AS(AbHom(FgAbGroup{3}, FgAbGroup{5}, IntMatrix{{2}}), MalformedInput);
    CHECK_THROWS_AS(AbHom(FgAbGroup{0}, FgAbGroup{2, 2}, IntMatrix{{1}}), MalformedInput);
    CHECK_NOTHROW(AbHom(FgAbGroup{2}, FgAbGroup{4}, IntMatrix{{2}}));
    CHECK_NOTHROW(AbHom(FgAbGroup{0}, FgAbGroup{7}, IntMatrix{{3}}));
    const AbHom f(FgAbGroup{6}, FgAbGroup{6}, IntMatrix{{13}});
    CHECK(f.matrix()(0, 0) == 1);
}

TEST_CASE("hom composition follows column-vector convention") {
    const FgAbGroup z7{7};
    const AbHom two = AbHom::scalar(z7, 2), three = AbHom::scalar(z7, 3);
    CHECK(two.after(three) == AbHom::scalar(z7, 6));
    const FgAbGroup z2z3{2, 3};
    const AbHom swapish(FgAbGroup{6}, z2z3, IntMatrix{{1}, {1}});
    const AbHom back(z2z3, FgAbGroup{6}, IntMatrix{{3, 4}});
    CHECK(back.after(swapish) == AbHom::identity(FgAbGroup{6}));
    CHECK((two + three) == AbHom::scalar(z7, 5));
    CHECK((-two) == AbHom::scalar(z7, 5));
}

TEST_CASE("kernels") {
    const FgAbGroup z5{5}, z4{4};
    CHECK(*hom_kernel(AbHom::zero(z5, z5)).order() == 5);
    CHECK(*hom_kernel(AbHom::scalar(z5, 2)).order() == 1);
    const Subgroup k = hom_kernel(AbHom::scalar(z4, 2));
    CHECK(*k.order() == 2);
    CHECK(k.contains({2}));
    CHECK_FALSE(k.contains({1}));
    const Subgroup kz = hom_kernel(AbHom(FgAbGroup{0, 0}, FgAbGroup{0}, IntMatrix{{2, 3}}));
    REQUIRE(kz.generators.size() == 1);
    CHECK(kz.contains({3, -2}));
    CHECK_FALSE(kz.contains({1, 0}));
}

TEST_CASE("kernel and image orders agree with enumeration") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        const FgAbGroup s = oracle::random_finite_group(rng, 64);
        const FgAbGroup t = oracle::random_finite_group(rng, 64);
        const AbHom f = oracle::random_hom(rng, s, t);
        const auto [k, i] = oracle::kernel_image_orders(f);
        CHECK(*hom_kernel(f).order() == k);
        CHECK(*hom_image(f).order() == i);
        CHECK(Int(k) * Int(i) == *s.order());
        for (const auto& g : hom_kernel(f).generators) CHECK(t.is_zero(f(g)));
    }
}

TEST_CASE("quotient examples") {
    const std::vector<IntVector> rels{{2, 0}, {0, 4}};
    const Quotient q = quotient_group(FgAbGroup::free(2), rels);
    CHECK(q.group == FgAbGroup{2, 4});

    const FgAbGroup g{3, 0};
    const Quotient same = quotient_group(g, {});
    CHECK(invariant_factors(same.group) == InvariantFactors{1, {3}});

    const std::vector<IntVector> one{{1}};
    CHECK(quotient_group(FgAbGroup{5}, one).group.is_trivial());

    const std::vector<IntVector> mixed{{1, 1}};
    CHECK(quotient_group(FgAbGroup{2, 3}, mixed).group.is_trivial());
    const std::vector<IntVector> z2sq{};
    CHECK(quotient_group(FgAbGroup{2, 2}, z2sq).group == FgAbGroup{2, 2});
}

TEST_CASE("quotient projection and lifts") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const FgAbGroup g = oracle::random_finite_group(rng, 64);
        std::vector<IntVector> rels;
        const int count = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int i = 0; i < count; ++i) rels.push_back(oracle::random_element(rng, g));
        const Quotient q = quotient_group(g, rels);

        std::vector<oracle::Vec> gens;
        for (const auto& r : rels) gens.push_back(oracle::small(r));
        const auto sub = oracle::generated_order(oracle::small_moduli(g), gens);
        CHECK(*q.group.order() * Int(sub) == *g.order());

        for (const auto& r : rels) CHECK(q.group.is_zero(q.projection(r)));
        for (std::size_t i = 0; i < q.lifts.size(); ++i) {
            IntVector unit(q.group.rank());
            unit[i] = 1;
            CHECK(q.projection(q.lifts[i]) == q.group.reduce(unit));
        }
        for (const auto& m : q.group.moduli()) CHECK(m != 1);
        CHECK(divisibility_chain(invariant_factors(q.group).torsion));
    }
}

TEST_CASE("solve_linear") {
    const FgAbGroup z5{5}, z4{4};
    CHECK(*solve_linear(AbHom::identity(z5), {3}) == IntVector{3});
    CHECK_FALSE(solve_linear(AbHom::scalar(z4, 2), {1}).has_value());
    CHECK(solve_linear(AbHom::zero(z5, z5), {0}).has_value());
    const AbHom f(FgAbGroup{0, 0}, FgAbGroup{0}, IntMatrix{{4, 6}});
    CHECK(solve_linear(f, {2}).has_value());
    CHECK_FALSE(solve_linear(f, {3}).has_value());
}

TEST_CASE("solve_linear agrees with enumeration") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 150; ++trial) {
        const FgAbGroup s = oracle::random_finite_group(rng, 64);
        const FgAbGroup t = oracle::random_finite_group(rng, 64);
        const AbHom f = oracle::random_hom(rng, s, t);
        const IntVector target = oracle::random_element(rng, t);
        const auto sol = solve_linear(f, target);
        CHECK(sol.has_value() == oracle::has_preimage(f, oracle::small(target)));
        if (sol) CHECK(f(*sol) == target);
    }
}

TEST_CASE("isomorphism detection") {
    CHECK(hom_is_iso(AbHom::scalar(FgAbGroup{5}, 2)));
    CHECK_FALSE(hom_is_iso(AbHom::scalar(FgAbGroup{4}, 2)));
    CHECK(hom_is_iso(AbHom::identity(FgAbGroup{2, 0, 9})));
    CHECK(hom_is_iso(AbHom(FgAbGroup{6}, FgAbGroup{2, 3}, IntMatrix{{1}, {1}})));
    CHECK_FALSE(hom_is_iso(AbHom(FgAbGroup{0}, FgAbGroup{0}, IntMatrix{{2}})));
    const AbHom f(FgAbGroup{0, 0}, FgAbGroup{0, 0}, IntMatrix{{2, 1}, {1, 1}});
    REQUIRE(hom_is_iso(f));
    CHECK(f.inverse().after(f) == AbHom::identity(FgAbGroup{0, 0}));
    CHECK_THROWS_AS(AbHom::scalar(FgAbGroup{4}, 2).inverse(), PreconditionFailed);
}

TEST_CASE("integer kernel spans the full lattice kernel") {
    const IntMatrix m{{1, 2, 3}, {4, 5, 6}};
    const auto basis = integer_kernel(m);
    REQUIRE(basis.size() == 1);
    CHECK(m * basis[0] == IntVector{0, 0});
    const IntVector& b = basis[0];
    CHECK(((b == IntVector{1, -2, 1}) || (b == IntVector{-1, 2, -1})));
}
