#include "doctest.h"
#include "support.hpp"

#include "pervcalc/linalg.hpp"

using namespace pervcalc;
using testing::random_integer_matrix;

namespace {

const Ring Z = Ring::integers();
const Ring Q = Ring::rationals();
const Ring F5 = Ring::prime_field(5);

Module random_z_module(SplitMix64& rng, std::size_t max_gens)
{
    static const long orders[] = {0, 0, 0, 2, 3, 4, 6, 8, 9};
    std::size_t n = rng.below(max_gens + 1);
    Matrix diag(n, n);
    for (std::size_t i = 0; i < n; ++i)
        diag(i, i) = Scalar(orders[rng.below(std::size(orders))]);
    return canonical_decomposition(Z, diag);
}

Module random_module(SplitMix64& rng, const Ring& ring, std::size_t max_gens)
{
    if (ring.is_field())
        return Module::free(ring, rng.below(max_gens + 1));
    return random_z_module(rng, max_gens);
}

// Entries chosen so every torsion generator lands on an element it kills.
ModuleMap random_map(SplitMix64& rng, const Module& dom, const Module& cod)
{
    const Ring& ring = dom.ring();
    Matrix m(cod.generators(), dom.generators());
    for (std::size_t i = 0; i < cod.generators(); ++i)
        for (std::size_t j = 0; j < dom.generators(); ++j) {
            if (ring.kind() == Ring::Kind::PrimeField) {
                m(i, j) = Scalar(rng.range(0, 4));
                continue;
            }
            if (ring.is_field()) {
                m(i, j) = Scalar(rng.range(-3, 3), rng.range(1, 2));
                continue;
            }
            Integer d = dom.order(j), e = cod.order(i);
            if (d == 0) {
                m(i, j) = Scalar(rng.range(-3, 3));
            } else if (e != 0) {
                Integer step = e / gcd(d, e);
                m(i, j) = Scalar(step * rng.range(0, 5));
            }
        }
    return ModuleMap(dom, cod, m);
}

Matrix diag3(long a, long b, long c) { return Matrix{{a, 0, 0}, {0, b, 0}, {0, 0, c}}; }

bool is_unit_det(const Matrix& m)
{
    Scalar d = determinant(m);
    return d == 1 || d == -1;
}

}  // namespace

TEST_CASE("ring tags and scalar normalization")
{
    CHECK(Ring::parse("q") == Q);
    CHECK(Ring::parse("z") == Z);
    CHECK(Ring::parse("fp:5") == F5);
    CHECK_THROWS_AS(Ring::parse("fp:4"), InputError);
    CHECK_THROWS_AS(Ring::parse("r"), InputError);
    CHECK(to_string(parse_scalar("2/4")) == "1/2");
    CHECK(to_string(parse_scalar("-6/3")) == "-2");
    CHECK_THROWS_AS(parse_scalar("1/0"), InputError);
    CHECK_THROWS_AS(parse_scalar("1.5"), InputError);
    CHECK(F5.reduce(parse_scalar("1/2")) == 3);
    CHECK(F5.reduce(Scalar(-1)) == 4);
    CHECK_THROWS_AS(F5.reduce(parse_scalar("1/5")), InputError);
    CHECK_THROWS_AS(Z.reduce(parse_scalar("1/2")), InputError);
    auto [q, r] = Z.divmod(Scalar(7), Scalar(-3));
    CHECK(q * -3 + r == 7);
    CHECK(r >= 0);
    CHECK(r < 3);
}

TEST_CASE("smith normal form: worked examples")
{
    auto id = smith_normal_form(Matrix::identity(2));
    CHECK(id.invariant_factors() == std::vector<Scalar>{1, 1});

    auto zero = smith_normal_form(Matrix{{0}});
    CHECK(zero.rank == 0);
    CHECK(zero.diagonal == Matrix{{0}});

    // determinant-divisor oracle: D_1 = gcd of entries = 2, D_2 = |det| = 8
    Matrix a{{2, 4}, {6, 8}};
    CHECK(testing::determinantal_divisor(a, 1) == 2);
    CHECK(testing::determinantal_divisor(a, 2) == 8);
    auto snf = smith_normal_form(a);
    CHECK(snf.diagonal == Matrix{{2, 0}, {0, 4}});
    CHECK(snf.left * a * snf.right == snf.diagonal);

    auto empty = smith_normal_form(Matrix(0, 3));
    CHECK(empty.rank == 0);
    CHECK(empty.right == Matrix::identity(3));
    auto empty2 = smith_normal_form(Matrix(2, 0));
    CHECK(empty2.left == Matrix::identity(2));

    CHECK_THROWS_AS(smith_normal_form(Matrix{{1}} + Scalar(1, 2) * Matrix{{1}}), InputError);
}

TEST_CASE("smith normal form: reconstruction and minors oracle over Z")
{
    SplitMix64 rng(20240611);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t rows = rng.below(5), cols = rng.below(5);
        Matrix a = random_integer_matrix(rng, rows, cols, rng.chance(1, 2) ? 3 : 20);
        auto snf = smith_normal_form(a);
        REQUIRE(snf.left * a * snf.right == snf.diagonal);
        REQUIRE(snf.left * snf.left_inverse == Matrix::identity(rows));
        REQUIRE(is_unit_det(snf.left));
        REQUIRE(is_unit_det(snf.right));
        std::vector<Integer> expected = testing::invariant_factors_by_minors(a);
        REQUIRE(expected.size() == snf.rank);
        for (std::size_t i = 0; i < snf.rank; ++i)
            REQUIRE(snf.diagonal(i, i) == Scalar(expected[i]));
    }
}

TEST_CASE("smith normal form over fields")
{
    SplitMix64 rng(7);
    for (const Ring& ring : {Q, F5}) {
        for (int trial = 0; trial < 100; ++trial) {
            std::size_t rows = rng.below(6), cols = rng.below(6);
            Matrix a = reduce(ring, random_integer_matrix(rng, rows, cols, 2));
            auto snf = smith_normal_form(ring, a);
            REQUIRE(reduce(ring, snf.left * a * snf.right) == snf.diagonal);
            for (std::size_t i = 0; i < snf.rank; ++i)
                REQUIRE(snf.diagonal(i, i) == 1);
            REQUIRE(snf.rank == testing::rank_by_minors(ring, a));
        }
    }
}

TEST_CASE("canonical decomposition")
{
    CHECK(canonical_decomposition(Q, Matrix{{1}, {2}, {3}}) == Module::free(Q, 2));
    auto m = canonical_decomposition(Z, diag3(2, 4, 0));
    CHECK(m.free_rank() == 1);
    CHECK(m.invariant_factors() == std::vector<Integer>{2, 4});
    CHECK(canonical_decomposition(Z, Matrix(2, 1)) == Module::free(Z, 2));
    CHECK(canonical_decomposition(Z, Matrix(2, 0)) == Module::free(Z, 2));
    CHECK(canonical_decomposition(Z, Matrix{{2, 0}, {0, 3}}) == Module::integer(0, {6}));
    CHECK(canonical_decomposition(m) == m);
    CHECK_THROWS_AS(canonical_decomposition(Z, Scalar(1, 2) * Matrix{{1}}), InputError);
    CHECK_THROWS_AS(canonical_decomposition(Presentation{Z, 3, Matrix(2, 1)}), InputError);
    CHECK_THROWS_AS(Module::integer(1, {4, 2}), InputError);
    CHECK_THROWS_AS(Module::integer(0, {1}), InputError);

    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        auto mod = random_z_module(rng, 5);
        REQUIRE(canonical_decomposition(mod) == mod);
    }
}

TEST_CASE("map factorization: worked examples")
{
    ModuleMap twice(Module::free(Z, 1), Module::free(Z, 1), Matrix{{2}});
    auto f = map_factorization(twice);
    CHECK(f.kernel().is_zero());
    CHECK(f.image() == Module::free(Z, 1));
    CHECK(f.cokernel() == Module::integer(0, {2}));

    ModuleMap diagonal(Module::free(Q, 1), Module::free(Q, 2), Matrix{{1}, {1}});
    auto g = map_factorization(diagonal);
    CHECK(g.kernel().is_zero());
    CHECK(g.image() == Module::free(Q, 1));
    CHECK(g.cokernel() == Module::free(Q, 1));

    auto h = map_factorization(ModuleMap::zero(Module::free(Z, 2), Module::free(Z, 1)));
    CHECK(h.kernel() == Module::free(Z, 2));
    CHECK(h.image().is_zero());
    CHECK(h.cokernel() == Module::free(Z, 1));

    CHECK_THROWS_AS(ModuleMap(Module::free(Z, 1), Module::free(Q, 1), Matrix{{1}}), InputError);
    CHECK_THROWS_AS(ModuleMap(Module::free(Z, 1), Module::free(Z, 2), Matrix{{1}}), InputError);
}

TEST_CASE("map factorization: torsion bookkeeping")
{
    // Z/4 -> Z/2, 1 -> 1 : kernel Z/2, image Z/2, cokernel 0
    ModuleMap p(Module::integer(0, {4}), Module::integer(0, {2}), Matrix{{1}});
    CHECK(p.is_well_defined());
    auto f = map_factorization(p);
    CHECK(f.kernel() == Module::integer(0, {2}));
    CHECK(f.image() == Module::integer(0, {2}));
    CHECK(f.cokernel().is_zero());
    CHECK(f.kernel_inclusion.matrix() == Matrix{{2}});

    // Z/2 -> Z/4, 1 -> 2
    ModuleMap i(Module::integer(0, {2}), Module::integer(0, {4}), Matrix{{2}});
    CHECK(i.is_well_defined());
    CHECK(map_factorization(i).cokernel() == Module::integer(0, {2}));
    CHECK_FALSE(ModuleMap(Module::integer(0, {2}), Module::integer(0, {4}), Matrix{{1}}).is_well_defined());
    CHECK_FALSE(ModuleMap(Module::integer(0, {2}), Module::free(Z, 1), Matrix{{1}}).is_well_defined());

    // entries reduce modulo the codomain torsion
    ModuleMap r(Module::free(Z, 1), Module::integer(0, {3}), Matrix{{7}});
    CHECK(r.matrix() == Matrix{{1}});
}

TEST_CASE("map factorization: contracts on random maps")
{
    SplitMix64 rng(31337);
    for (const Ring& ring : {Z, Q, F5}) {
        for (int trial = 0; trial < 150; ++trial) {
            Module dom = random_module(rng, ring, 4);
            Module cod = random_module(rng, ring, 4);
            ModuleMap f = random_map(rng, dom, cod);
            REQUIRE(f.is_well_defined());
            auto fac = map_factorization(f);
            INFO(ring.tag() << " f=" << to_string(f.matrix()) << " dom=" << dom.to_string() << " cod=" << cod.to_string()
                 << " epi=" << to_string(fac.coimage.matrix()) << " mono=" << to_string(fac.image_inclusion.matrix()));
            REQUIRE(compose(fac.coimage, fac.image_inclusion) == f);
            REQUIRE(compose(fac.kernel_inclusion, fac.coimage).is_zero());
            REQUIRE(compose(f, fac.cokernel_projection).is_zero());
            for (const auto* m : {&fac.kernel_inclusion, &fac.coimage, &fac.image_inclusion, &fac.cokernel_projection})
                REQUIRE(m->is_well_defined());

            const Module& k = fac.kernel();
            const Module& im = fac.image();
            const Module& c = fac.cokernel();
            std::vector<ModuleMap> first{ModuleMap::zero(Module::zero(ring), k), fac.kernel_inclusion, fac.coimage,
                                         ModuleMap::zero(im, Module::zero(ring))};
            std::vector<ModuleMap> second{ModuleMap::zero(Module::zero(ring), im), fac.image_inclusion,
                                          fac.cokernel_projection, ModuleMap::zero(c, Module::zero(ring))};
            for (bool ok : exactness_check(first))
                REQUIRE(ok);
            for (bool ok : exactness_check(second))
                REQUIRE(ok);
            if (ring.is_field())
                REQUIRE(k.dimension() + im.dimension() == dom.dimension());
        }
    }
}

TEST_CASE("module ordering: worked examples")
{
    auto z2 = Module::integer(0, {2});
    auto z4 = Module::integer(0, {4});
    CHECK(module_leq(Module::zero(Z), Module::integer(2, {3, 6})));
    CHECK(module_leq(z2, Module::integer(1, {2})));
    CHECK_FALSE(module_leq(z4, Module::integer(0, {2, 2})));
    CHECK(testing::is_direct_summand_brute_force({2}, {2, 2}));
    CHECK_FALSE(testing::is_direct_summand_brute_force({4}, {2, 2}));
    CHECK(module_leq(Module::free(Q, 2), Module::free(Q, 3)));
    CHECK_FALSE(module_leq(Module::free(Q, 3), Module::free(Q, 2)));
    CHECK_THROWS_AS(module_leq(Module::free(Q, 1), Module::free(Z, 1)), InputError);
    // Z/6 = Z/2 + Z/3
    CHECK(module_leq(Module::integer(0, {3}), Module::integer(0, {6})));
    CHECK(module_leq(Module::integer(0, {2}), Module::integer(0, {6})));
    CHECK_FALSE(module_leq(Module::integer(0, {4}), Module::integer(0, {6})));
}

TEST_CASE("module ordering agrees with brute-force summand search")
{
    SplitMix64 rng(5);
    static const long orders[] = {2, 3, 4, 6, 8};
    auto draw = [&](std::size_t max_count, long max_size) {
        std::vector<long> o;
        long size = 1;
        std::size_t count = rng.below(max_count + 1);
        for (std::size_t i = 0; i < count; ++i) {
            long n = orders[rng.below(std::size(orders))];
            if (size * n > max_size)
                break;
            o.push_back(n);
            size *= n;
        }
        return o;
    };
    auto as_module = [](const std::vector<long>& o) {
        Matrix d(o.size(), o.size());
        for (std::size_t i = 0; i < o.size(); ++i)
            d(i, i) = Scalar(o[i]);
        return canonical_decomposition(Z, d);
    };
    for (int trial = 0; trial < 60; ++trial) {
        auto m = draw(2, 16);
        auto n = draw(2, 32);
        INFO("trial " << trial);
        REQUIRE(module_leq(as_module(m), as_module(n)) == testing::is_direct_summand_brute_force(m, n));
    }
}

TEST_CASE("module ordering is a partial order with cancellation")
{
    SplitMix64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        auto a = random_z_module(rng, 4), b = random_z_module(rng, 4), c = random_z_module(rng, 4);
        REQUIRE(module_leq(a, a));
        auto ab = direct_sum({a, b}).sum;
        REQUIRE(module_leq(a, ab));
        REQUIRE(module_leq(b, ab));
        if (module_leq(a, b) && module_leq(b, c))
            REQUIRE(module_leq(a, c));
        if (module_leq(a, b) && module_leq(b, a))
            REQUIRE(a == b);
        // a + b = a forces b = 0
        REQUIRE((ab == a) == b.is_zero());
    }
}

TEST_CASE("direct sums re-canonicalize")
{
    auto s = direct_sum({Module::integer(0, {2}), Module::integer(0, {3})});
    CHECK(s.sum == Module::integer(0, {6}));
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(compose(s.injections[k], s.projections[k]) == ModuleMap::identity(s.projections[k].codomain()));
        CHECK(compose(s.injections[k], s.projections[1 - k]).is_zero());
    }
    auto f = direct_sum({Module::free(Q, 1), Module::free(Q, 2)});
    CHECK(f.sum == Module::free(Q, 3));
    CHECK(f.injections[1].matrix() == Matrix{{0, 0}, {1, 0}, {0, 1}});
}

TEST_CASE("exactness check")
{
    auto zz = Module::free(Z, 1);
    auto z2 = Module::integer(0, {2});
    std::vector<ModuleMap> seq{ModuleMap::zero(Module::zero(Z), zz), ModuleMap(zz, zz, Matrix{{2}}),
                               ModuleMap(zz, z2, Matrix{{1}}), ModuleMap::zero(z2, Module::zero(Z))};
    CHECK(exactness_check(seq) == std::vector<bool>{true, true, true});

    auto q = Module::free(Q, 1), q2 = Module::free(Q, 2);
    std::vector<ModuleMap> bad{ModuleMap::zero(Module::zero(Q), q), ModuleMap(q, q2, Matrix{{1}, {1}}),
                               ModuleMap(q2, q, Matrix{{1, 1}}), ModuleMap::zero(q, Module::zero(Q))};
    auto verdict = exactness_check(bad);
    CHECK(verdict[1] == false);
    CHECK(std::find(verdict.begin(), verdict.end(), false) != verdict.end());

    // same dimensions, different submodules
    std::vector<ModuleMap> skew{ModuleMap(q, q2, Matrix{{1}, {0}}), ModuleMap(q2, q, Matrix{{1, 0}})};
    CHECK(exactness_check(skew) == std::vector<bool>{false});

    std::vector<ModuleMap> broken{ModuleMap(q, q2, Matrix{{1}, {0}}), ModuleMap(q, q, Matrix{{1}})};
    CHECK_THROWS_AS(exactness_check(broken), InputError);
}

TEST_CASE("eigen kernels")
{
    CHECK(eigen_kernel(ModuleMap::identity(Module::free(Q, 3)), Scalar(1)) == Module::free(Q, 3));
    ModuleMap d(Module::free(Q, 2), Module::free(Q, 2), Matrix{{2, 0}, {0, 3}});
    CHECK(eigen_kernel(d, Scalar(2)) == Module::free(Q, 1));
    CHECK(eigen_kernel(d, Scalar(5)).is_zero());
    CHECK_THROWS_AS(eigen_kernel(ModuleMap::identity(Module::free(Z, 1)), Scalar(1)), UnsupportedRingError);
    CHECK_THROWS_AS(eigen_kernel(ModuleMap::zero(Module::free(Q, 1), Module::free(Q, 2)), Scalar(1)), InputError);
}

TEST_CASE("eigen kernel is nonzero exactly at roots of the characteristic polynomial")
{
    SplitMix64 rng(77);
    for (const Ring& ring : {Q, F5}) {
        for (int trial = 0; trial < 100; ++trial) {
            auto m = Module::free(ring, rng.below(5));
            auto f = random_map(rng, m, m);
            for (long lambda = -2; lambda <= 4; ++lambda) {
                Scalar l = ring.reduce(Scalar(lambda));
                REQUIRE(eigen_kernel(f, l).is_zero() == (characteristic_polynomial_at(f, l) != 0));
            }
        }
    }
}

TEST_CASE("hom constraint solving")
{
    auto q = Module::free(Q, 1);
    auto zero = Module::zero(Q);

    // x o 0 = 0 leaves x free
    auto free_x = solve_hom_constraints({{q, q}}, {{q, 1, {{0, Matrix::identity(1), Matrix{{0}}}}}});
    CHECK(free_x.module == Module::free(Q, 1));

    // b o c = 0 with c surjective forces b = 0
    auto forced = solve_hom_constraints({{q, q}}, {{q, 1, {{0, Matrix::identity(1), Matrix{{1}}}}}});
    CHECK(forced.module.is_zero());

    // Hom from (0, 0; Q) to (Q, Q; Q, c = (1, -1), v = 0): unknowns a1, a2 : 0 -> Q and b : Q -> Q
    std::vector<HomUnknown> unknowns{{zero, q}, {zero, q}, {q, q}};
    std::vector<HomEquation> eqs;
    for (std::size_t i = 0; i < 2; ++i) {
        Scalar sign = i == 0 ? 1 : -1;
        // b c_i - c'_i a_i = 0 on Psi_i (no columns) and a_i v_i - v'_i b = 0 into Psi'_i
        eqs.push_back({q, 0, {{2, Matrix::identity(1), Matrix(1, 0)}, {i, Matrix{{-1}} * Matrix::scalar(1, sign), Matrix(0, 0)}}});
        eqs.push_back({q, 1, {{i, Matrix::identity(1), Matrix(0, 1)}, {2, Matrix{{0}}, Matrix::identity(1)}}});
    }
    auto hom = solve_hom_constraints(unknowns, eqs);
    CHECK(hom.module == Module::free(Q, 1));
    REQUIRE(hom.generators.size() == 1);
    CHECK_FALSE(hom.generators[0][2].is_zero());

    // group-valued homs
    auto z4 = Module::integer(0, {4}), z6 = Module::integer(0, {6});
    auto h46 = solve_hom_constraints({{z4, z6}}, {});
    CHECK(h46.module == Module::integer(0, {2}));
    CHECK(h46.generators[0][0].is_well_defined());
    CHECK(solve_hom_constraints({{Module::free(Z, 1), Module::integer(0, {3})}}, {}).module == Module::integer(0, {3}));
    CHECK(solve_hom_constraints({{Module::integer(0, {2}), Module::free(Z, 1)}}, {}).module.is_zero());
    CHECK(solve_hom_constraints({{Module::free(Z, 2), Module::free(Z, 1)}}, {}).module == Module::free(Z, 2));

    CHECK_THROWS_AS(solve_hom_constraints({{q, q}}, {{q, 1, {{0, Matrix::identity(2), Matrix{{1}}}}}}), InputError);
}
