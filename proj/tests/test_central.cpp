#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "koszul/classical.hpp"
#include "koszul/eisenbud.hpp"
#include "koszul/product.hpp"

using namespace koszul;
namespace la = koszul::linalg;

namespace {

CxPtr<ZZ> z_point() {
    return concentrated(Ring<ZZ>::integers(), 0, Term<ZZ>{1, nullptr});
}

CentralElement<ZZ> zscalar(long long v) {
    ZZ z;
    return scalar_element(Ring<ZZ>::integers(), std::to_string(v), z.from_int(v));
}

std::vector<BigInt> nontrivial_invariants(const HomologyZ& h) {
    std::vector<BigInt> out;
    for (const auto& d : h.invariants)
        if (d != 1) out.push_back(d);
    return out;
}

} // namespace

TEST_CASE("scalar actions") {
    auto M = z_point();
    auto two = act(zscalar(2), M);
    CHECK(two.comp(0)(0, 0) == 2);
    auto zero = act(zscalar(0), M);
    CHECK(map_is_zero(zero));
}

TEST_CASE("koszul(Z, [2]) is the length-one complex with H^0 = Z/2") {
    auto M = z_point();
    auto T = koszul_tower(M, {zscalar(2)});
    CHECK(T.top()->lo == -1);
    CHECK(T.top()->hi == 0);
    auto inv = nontrivial_invariants(homology_z(T.top(), 0));
    REQUIRE(inv.size() == 1);
    CHECK(inv[0] == 2);
    // composite is the desuspended projection, a chain map by construction
    CHECK(chain_map_identity_holds(T.composite));
}

TEST_CASE("koszul(Z, [2,2]) matches the classical Koszul oracle") {
    auto M = z_point();
    auto T = koszul_tower(M, {zscalar(2), zscalar(2)});
    auto oracle = classical_koszul_integers({2, 2});
    for (int n = -2; n <= 0; ++n) {
        auto ht = homology_z(T.top(), n);
        auto ho = homology_z(oracle, n);
        CHECK(nontrivial_invariants(ht) == nontrivial_invariants(ho));
    }
    auto i0 = nontrivial_invariants(homology_z(T.top(), 0));
    auto i1 = nontrivial_invariants(homology_z(T.top(), -1));
    REQUIRE(i0.size() == 1);
    CHECK(i0[0] == 2);
    REQUIRE(i1.size() == 1);
    CHECK(i1[0] == 2);
}

TEST_CASE("koszul over the dual numbers: A//x has H^0 = H^{-1} = k") {
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {2});
    auto ring = Ring<Fp>::quotient(alg);
    auto A = concentrated(ring, 0, Term<Fp>{1, nullptr});
    auto x = algebra_scalar_element(ring, "x", aelt_monomial(*alg, {1}, alg->f.one()));
    auto T = koszul_tower(A, {x});
    CHECK(homology_k(T.top(), 0).dim == 1);
    CHECK(homology_k(T.top(), -1).dim == 1);
}

TEST_CASE("scalars are productive") {
    auto M = z_point();
    auto v = productivity_check(zscalar(2), M);
    CHECK(v.productive);
    REQUIRE(v.witness.has_value());

    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {2});
    auto ring = Ring<Fp>::quotient(alg);
    auto A = concentrated(ring, 0, Term<Fp>{1, nullptr});
    auto x = algebra_scalar_element(ring, "x", aelt_monomial(*alg, {1}, alg->f.one()));
    CHECK(productivity_check(x, A).productive);
}

TEST_CASE("product of productive scalars is productive (random pairs)") {
    std::mt19937_64 rng(321);
    std::uniform_int_distribution<long long> d(2, 9);
    for (int trial = 0; trial < 8; ++trial) {
        auto M = z_point();
        long long a = d(rng), b = d(rng);
        CHECK(productivity_check(zscalar(a * b), M).productive);
    }
}

TEST_CASE("product triangle for x = y = 2 on Z") {
    auto M = z_point();
    auto pt = product_triangle(zscalar(2), zscalar(2), M);
    CHECK(pt.triangle.verify());
    CHECK(pt.all_compatible());
    auto inv = nontrivial_invariants(homology_z(pt.kos_xy, 0));
    REQUIRE(inv.size() == 1);
    CHECK(inv[0] == 4);
}

TEST_CASE("product triangle unit cases") {
    auto M = z_point();
    {
        auto pt = product_triangle(zscalar(3), zscalar(1), M); // y unit
        CHECK(is_contractible(pt.kos_y));
        auto eq = homotopy_inverse(pt.triangle.v); // M//xy ~ Sigma^{|y|} M//x
        CHECK(eq.has_value());
    }
    {
        auto pt = product_triangle(zscalar(1), zscalar(3), M); // x unit
        CHECK(is_contractible(pt.kos_x));
        auto eq = homotopy_inverse(pt.triangle.u); // M//y ~ M//xy
        CHECK(eq.has_value());
    }
}

TEST_CASE("koszul commutation isomorphism over Z and the dual numbers") {
    {
        auto M = z_point();
        auto x = zscalar(2), y = zscalar(3);
        auto Txy = koszul_tower(M, {x, y});
        auto Tyx = koszul_tower(M, {y, x});
        auto c = koszul_commutation(x, y, Txy, Tyx);
        CHECK(homotopy_inverse(c.iso).has_value());
        CHECK(c.composite_square);
        CHECK(c.inclusion_square);
    }
    {
        auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {2});
        auto ring = Ring<Fp>::quotient(alg);
        auto A = concentrated(ring, 0, Term<Fp>{1, nullptr});
        auto x = algebra_scalar_element(ring, "x", aelt_monomial(*alg, {1}, alg->f.one()));
        auto one = algebra_scalar_element(ring, "1", aelt_monomial(*alg, {0}, alg->f.one()));
        auto Txy = koszul_tower(A, {x, one});
        auto Tyx = koszul_tower(A, {one, x});
        auto c = koszul_commutation(x, one, Txy, Tyx);
        CHECK(homotopy_inverse(c.iso).has_value());
        CHECK(c.composite_square);
        CHECK(c.inclusion_square);
    }
}

TEST_CASE("functoriality: induced square commutes strictly for scalars") {
    auto M = z_point();
    auto N = cone(act(zscalar(4), M)).cone;
    std::vector<Mat<BigInt>> comps;
    for (int n = M->lo; n <= M->hi; ++n) {
        Mat<BigInt> m(N->kdim(n), M->kdim(n));
        if (n == 0) m(0, 0) = 1;
        comps.push_back(std::move(m));
    }
    auto fmap = make_chain_map(M, N, 0, std::move(comps));
    auto x = zscalar(2);
    auto TM = koszul_tower(M, {x});
    auto TN = koszul_tower(N, {x});
    auto induced = koszul_induced_map(x, fmap, TM, TN);
    // square with the defining inclusions commutes strictly
    auto lhs = compose(induced, TM.defining[0].v);
    auto rhs = compose(TN.defining[0].v, action_deg0_shifted(fmap, 0));
    CHECK(map_is_zero(map_sub(lhs, rhs)));
}

TEST_CASE("minimal resolution of k over the dual numbers is periodic") {
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {2});
    auto ring = Ring<Fp>::quotient(alg);
    auto res = minimal_resolution(ring, residue_field_module(alg), 6);
    CHECK(res.P->lo == -6);
    CHECK(resolution_is_quasi_iso_on_window(res));
    CHECK(res.periodic);
    CHECK(res.period == 1);
}

TEST_CASE("minimal resolution of k over F2[x]/(x^3) has period 2") {
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {3});
    auto ring = Ring<Fp>::quotient(alg);
    auto res = minimal_resolution(ring, residue_field_module(alg), 6);
    CHECK(resolution_is_quasi_iso_on_window(res));
    CHECK(res.periodic);
    CHECK(res.period == 2);
}

TEST_CASE("resolution of a free module is the module itself") {
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {2});
    auto ring = Ring<Fp>::quotient(alg);
    auto reg = regular_representation(alg);
    auto res = minimal_resolution(ring, reg, 5);
    CHECK(res.exact_all);
    CHECK(res.P->lo == 0);
    CHECK(res.P->term(0).rank == 1);
}

TEST_CASE("resolution of a generic module by kernel chasing") {
    // M = k (+) A over the dual numbers: resolution ranks 2, 1, 1, ...
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {2});
    auto ring = Ring<Fp>::quotient(alg);
    auto m = std::make_shared<ModulePres<Fp>>();
    m->alg = alg;
    m->dim = 3;
    Mat<std::uint64_t> op(3, 3);
    op(2, 1) = 1; // x sends the second basis vector to the third; kills the first
    m->ops = {op};
    REQUIRE(m->validate().pass);
    auto res = minimal_resolution(ring, std::shared_ptr<const ModulePres<Fp>>(m), 5);
    CHECK(resolution_is_quasi_iso_on_window(res));
    CHECK(res.P->term(0).rank == 2);
    CHECK(res.P->term(-1).rank == 1);
}

TEST_CASE("eisenbud operator over F2[x]/(x^2): degree-2 shift identity") {
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {2});
    auto ring = Ring<Fp>::quotient(alg);
    auto ext = ext_of_k(ring, 8);
    for (int n = 0; n <= 8; ++n) CHECK(ext.dims[static_cast<std::size_t>(n)] == 1);
    REQUIRE(ext.chis.size() == 1);
    for (int n = 0; n + 2 <= 8; ++n) {
        const auto& m = ext.chi_action[0][static_cast<std::size_t>(n)];
        REQUIRE(m.rows == 1);
        REQUIRE(m.cols == 1);
        CHECK(m(0, 0) == 1); // isomorphism in every window degree
    }
    CHECK_THROWS_AS(eisenbud_operator(ring, 2, ext.res), input_error);
    CHECK_THROWS_AS(eisenbud_operator(ring, 0, ext.res), input_error);
}

TEST_CASE("eisenbud operators over F3[x,y]/(x^2,y^2) commute on Ext") {
    auto alg = Algebra<Fp>::create(Fp(3), {"x", "y"}, {2, 2});
    auto ring = Ring<Fp>::quotient(alg);
    auto ext = ext_of_k(ring, 8);
    // Ext(k,k) = k[chi1,chi2] (x) Lambda(e1,e2): dims 1,2,3,...
    for (int n = 0; n <= 8; ++n) CHECK(ext.dims[static_cast<std::size_t>(n)] == n + 1);
    REQUIRE(ext.chis.size() == 2);
    Fp f3(3);
    for (int n = 0; n + 4 <= 8; ++n) {
        auto ab = la::mul(f3, ext.chi_action[0][static_cast<std::size_t>(n + 2)],
                          ext.chi_action[1][static_cast<std::size_t>(n)]);
        auto ba = la::mul(f3, ext.chi_action[1][static_cast<std::size_t>(n + 2)],
                          ext.chi_action[0][static_cast<std::size_t>(n)]);
        CHECK(ab == ba);
    }
}

TEST_CASE("Ext(k,k) dimensions match the polynomial-times-exterior count") {
    // over F2[x,y]/(x^2, y^2) the graded dimension of k[chi1,chi2] (x) Lambda(e1,e2)
    // in degree n is n+1
    auto alg = Algebra<Fp>::create(Fp(2), {"x", "y"}, {2, 2});
    auto ring = Ring<Fp>::quotient(alg);
    auto ext = ext_of_k(ring, 6);
    for (int n = 0; n <= 6; ++n) CHECK(ext.dims[static_cast<std::size_t>(n)] == n + 1);
}
