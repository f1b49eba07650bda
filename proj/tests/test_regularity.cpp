#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "koszul/regularity_iso.hpp"

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

// Z/m as the cone of multiplication by m on [Z]
CxPtr<ZZ> zmod(long long m) {
    return cone(act(zscalar(m), z_point())).cone;
}

} // namespace

TEST_CASE("zero maps are ghost for every test object") {
    auto M = z_point();
    auto C = zmod(3);
    auto f = zero_map(M, M);
    WindowPolicy p;
    CHECK(ghost_check(f, C, p).ghost);
    CHECK(ghost_check(f, z_point(), p).ghost);
}

TEST_CASE("the connecting map of Z//2 is Z-ghost but not Z/2-ghost") {
    auto M = z_point();
    auto T = koszul_tower(M, {zscalar(2)});
    WindowPolicy p;
    p.kind = ProofKind::PerfectSource;
    CHECK(ghost_check(T.connecting[0], z_point(), p).ghost);
    auto c2 = zmod(2);
    auto cert = ghost_check(T.connecting[0], c2, p);
    CHECK_FALSE(cert.ghost);
}

TEST_CASE("ghost witnesses re-verify by multiplication") {
    auto M = z_point();
    auto T = koszul_tower(M, {zscalar(2)});
    WindowPolicy p;
    auto cert = ghost_check(T.connecting[0], z_point(), p);
    REQUIRE(cert.ghost);
    ZZ z;
    auto HX = hom_complex(z_point(), shift(T.stages[1], -1));
    auto HY = hom_complex(z_point(), M);
    auto post = hom_induced_post(HX, HY, T.connecting[0]);
    for (const auto& e : cert.entries) {
        if (e.classes == 0) continue;
        auto img = la::mul(z, post.comp(e.n), e.gen_cycles);
        CHECK(img == e.images);
        auto d = HY.cx->dmat(e.n - 1);
        CHECK(la::mul(z, d, e.preimages) == e.images);
    }
}

TEST_CASE("regular element: the section 5 example over Z") {
    // C = Z/3, M = Sigma^{-1}(Z//3) (+) Z//2 (so H^1 = Z/3, H^0 = Z/2), x = 2
    auto C = zmod(3);
    auto M = direct_sum(shift(zmod(3), -1), zmod(2)).sum;
    WindowPolicy p;
    p.kind = ProofKind::PerfectSource;
    auto v = is_regular_element(zscalar(2), C, M, p);
    CHECK(v.regular);
    // H_C(M//2) = 0 while M//2 is not contractible
    auto T = koszul_tower(M, {zscalar(2)});
    auto H = hom_complex(C, T.top());
    for (int n = H.lo(); n <= H.hi(); ++n) CHECK(homology_z(H.cx, n).is_zero_module());
    CHECK_FALSE(is_contractible(T.top()));
}

TEST_CASE("regular element: the section 7.3 example") {
    WindowPolicy p;
    p.kind = ProofKind::PerfectSource;
    CHECK(is_regular_element(zscalar(2), z_point(), z_point(), p).regular);
    CHECK_FALSE(is_regular_element(zscalar(2), z_point(), zmod(2), p).regular);
}

TEST_CASE("units are regular") {
    WindowPolicy p;
    auto v = is_regular_element(zscalar(1), z_point(), z_point(), p);
    CHECK(v.regular);
}

TEST_CASE("power cross-check: routes (2),(3) match route (1)") {
    WindowPolicy p;
    CHECK(regular_element_power_crosscheck(zscalar(2), z_point(), z_point(), p, 3));
    CHECK(regular_element_power_crosscheck(zscalar(2), z_point(), zmod(2), p, 3));
    CHECK(regular_element_power_crosscheck(zscalar(3), zmod(3), z_point(), p, 3));
}

TEST_CASE("regular sequences over Z") {
    WindowPolicy p;
    // (2, 2) on Z fails at step 2
    auto rep = is_regular_sequence({zscalar(2), zscalar(2)}, z_point(), z_point(), p);
    CHECK(rep.verdict == RegularityVerdict::NotRegular);
    CHECK(rep.failed_step == 2);
    // (2, 3) on Z is regular
    auto rep2 = is_regular_sequence({zscalar(2), zscalar(3)}, z_point(), z_point(), p);
    CHECK(rep2.verdict == RegularityVerdict::Regular);
    CHECK(rep2.composite_nonzero);
    // the empty sequence is regular on a nonzero object
    auto rep3 = is_regular_sequence({}, z_point(), z_point(), p);
    CHECK(rep3.verdict == RegularityVerdict::Regular);
    // and only weakly regular on the zero object
    auto rep4 = is_regular_sequence({}, z_point(), zero_complex(Ring<ZZ>::integers()), p);
    CHECK(rep4.verdict == RegularityVerdict::WeaklyRegular);
}

TEST_CASE("nonzero ladder examples") {
    // M = [Z], x = 2: all statements false
    auto L1 = nonzero_equivalence_suite<ZZ>({zscalar(2)}, z_point(), 3);
    CHECK_FALSE(L1.map_zero_1);
    CHECK_FALSE(L1.obj_zero_all);
    CHECK(L1.implications_hold);
    // M = Z/2, x = 3 acts invertibly: all statements true
    auto L2 = nonzero_equivalence_suite<ZZ>({zscalar(3)}, zmod(2), 3);
    CHECK(L2.map_zero_1);
    CHECK(L2.obj_zero_1);
    CHECK(L2.obj_zero_all);
    CHECK(L2.implications_hold);
    // M = 0: everything true
    auto L3 = nonzero_equivalence_suite<ZZ>({zscalar(2)}, zero_complex(Ring<ZZ>::integers()), 2);
    CHECK(L3.obj_zero_all);
    CHECK(L3.implications_hold);
    // t = 2 mixed instance keeps the implication diagram intact
    auto L4 = nonzero_equivalence_suite<ZZ>({zscalar(2), zscalar(3)}, zmod(2), 2);
    CHECK(L4.implications_hold);
}

TEST_CASE("induced isomorphisms over Z: all three sides are Z/2") {
    WindowPolicy p;
    auto rep = verify_iso_hom_koszul<ZZ>({zscalar(2)}, z_point(), z_point(), p);
    CHECK(rep.weakly_regular);
    CHECK(rep.left_vs_middle == IsoVerdict::Isomorphic);
    CHECK(rep.middle_vs_right == IsoVerdict::Isomorphic);
    auto inv0 = rep.middle.zinv.at(0);
    REQUIRE(inv0.size() == 1);
    CHECK(inv0[0] == 2);
}

TEST_CASE("mm_regular over Z") {
    WindowPolicy p;
    auto rep = mm_regular_check<ZZ>({zscalar(2)}, z_point(), p);
    CHECK(rep.route_sequence);
    CHECK(rep.route_classical);
    CHECK(rep.route_ghost);
    CHECK(rep.route_coghost);
    CHECK(rep.agree());
    // the zero object: vacuously weakly regular, never regular
    auto rep0 = mm_regular_check<ZZ>({zscalar(2)}, zero_complex(Ring<ZZ>::integers()), p);
    CHECK_FALSE(rep0.route_sequence);
    CHECK(rep0.agree());
}

TEST_CASE("truncation ghost lemma on classical Koszul complexes") {
    // Kos(2, 3; Z): regular sequence, H^{-i} = 0 for i >= 1
    auto K = classical_koszul_integers({2, 3});
    auto rep = vanishing_kos_hom_check(Ring<ZZ>::integers(), K, 1, 2);
    CHECK(rep.homology_vanishes);
    CHECK(rep.equivalent());
    // Kos(2, 2; Z): H^{-1} != 0
    auto K2 = classical_koszul_integers({2, 2});
    auto rep2 = vanishing_kos_hom_check(Ring<ZZ>::integers(), K2, 1, 2);
    CHECK_FALSE(rep2.homology_vanishes);
    CHECK(rep2.equivalent());
    // but i >= 2 vanishing holds for (2, 2)
    auto rep3 = vanishing_kos_hom_check(Ring<ZZ>::integers(), K2, 2, 2);
    CHECK(rep3.homology_vanishes);
    CHECK(rep3.equivalent());
}

TEST_CASE("random truncation ghost equivalences over Z and F2[x]/(x^3)") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> ent(0, 6);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<long long> xs{ent(rng), ent(rng)};
        auto K = classical_koszul_integers(xs);
        for (int s = 1; s <= 2; ++s) {
            auto rep = vanishing_kos_hom_check(Ring<ZZ>::integers(), K, s, 2);
            CHECK(rep.equivalent());
        }
    }
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {3});
    auto ring = Ring<Fp>::quotient(alg);
    std::uniform_int_distribution<int> exp(0, 2);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<AElt<Fp>> xs;
        for (int j = 0; j < 2; ++j) xs.push_back(aelt_monomial(*alg, {exp(rng)}, alg->f.one()));
        auto K = classical_koszul_scalars(ring, Term<Fp>{1, nullptr}, xs);
        for (int s = 1; s <= 2; ++s) {
            auto rep = vanishing_kos_hom_check(ring, K, s, 2);
            CHECK(rep.equivalent());
        }
    }
}

TEST_CASE("random cross-checks: routes agree over Z and F2[x]/(x^3)") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long long> ent(-6, 6);
    WindowPolicy p;
    p.kind = ProofKind::PerfectSource;
    for (int trial = 0; trial < 25; ++trial) {
        long long v = ent(rng);
        auto M = trial % 2 == 0 ? z_point() : zmod(2 + (trial % 5));
        // is_regular_element throws on route disagreement, which is the check
        auto verdict = is_regular_element(zscalar(v), z_point(), M, p);
        (void)verdict;
        CHECK(regular_element_power_crosscheck(zscalar(v), z_point(), M, p, 3));
    }
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {3});
    auto ring = Ring<Fp>::quotient(alg);
    auto A = concentrated(ring, 0, Term<Fp>{1, nullptr});
    std::uniform_int_distribution<int> exp(0, 2);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = algebra_scalar_element(ring, "s", aelt_monomial(*alg, {exp(rng)}, alg->f.one()));
        auto verdict = is_regular_element(x, A, A, p);
        (void)verdict;
        CHECK(regular_element_power_crosscheck(x, A, A, p, 3));
    }
}

TEST_CASE("product lemma: weak regularity is preserved under products") {
    WindowPolicy p;
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long long> ent(2, 5);
    for (int trial = 0; trial < 6; ++trial) {
        long long a = ent(rng), b = ent(rng), c = ent(rng);
        // (a, c) and (b, c) weakly regular on Z => (ab, c) weakly regular
        auto r1 = is_regular_sequence({zscalar(a), zscalar(c)}, z_point(), z_point(), p);
        auto r2 = is_regular_sequence({zscalar(b), zscalar(c)}, z_point(), z_point(), p);
        if (r1.weakly_regular && r2.weakly_regular) {
            auto r3 = is_regular_sequence({zscalar(a * b), zscalar(c)}, z_point(), z_point(), p);
            CHECK(r3.weakly_regular);
        }
    }
}

TEST_CASE("reg_seq_equiv at desk scale: y regular on M//x iff on M//x^n") {
    WindowPolicy p;
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long long> ent(2, 5);
    for (int trial = 0; trial < 6; ++trial) {
        long long x = ent(rng), y = ent(rng);
        auto base = is_regular_element(zscalar(x), z_point(), z_point(), p);
        if (!base.regular) continue;
        std::optional<bool> first;
        for (int n = 1; n <= 3; ++n) {
            long long xn = 1;
            for (int k = 0; k < n; ++k) xn *= x;
            auto T = koszul_tower(z_point(), {zscalar(xn)});
            auto v = is_regular_element(zscalar(y), z_point(), T.top(), p);
            if (!first)
                first = v.regular;
            else
                CHECK(*first == v.regular);
        }
    }
}

TEST_CASE("appendix counterexample over the dual numbers") {
    auto alg = Algebra<Fp>::create(Fp(2), {"x"}, {2});
    auto ring = Ring<Fp>::quotient(alg);
    auto rr = regular_representation(alg);
    auto make_interval = [&](int m, int n) { // the indecomposable with A in degrees -n..-m
        std::vector<Term<Fp>> terms;
        std::vector<Mat<std::uint64_t>> diffs;
        for (int i = 0; i <= n - m; ++i) terms.push_back(Term<Fp>{1, nullptr});
        for (int i = 0; i < n - m; ++i) diffs.push_back(rr->ops[0]);
        return make_complex(ring, -n, std::move(terms), std::move(diffs));
    };
    const int nn = 2;
    auto C = make_interval(nn, nn);     // A_n^n
    auto M = make_interval(nn - 1, nn); // A_{n-1}^n
    // eta acts by multiplication by x in the top degree of length-0 and
    // length-1 intervals, and by zero otherwise
    auto eta_on = [&](const CxPtr<Fp>& X, int top) {
        std::vector<Mat<std::uint64_t>> comps;
        for (int d = X->lo; d <= X->hi; ++d)
            comps.push_back(d == top ? rr->ops[0] : Mat<std::uint64_t>(X->kdim(d), X->kdim(d)));
        return make_chain_map(X, X, 0, std::move(comps));
    };
    std::map<std::uint64_t, ChainMap<Fp>> table;
    table.emplace(C->uid, eta_on(C, -nn));
    table.emplace(M->uid, eta_on(M, -(nn - 1)));
    auto eta = operator_element<Fp>("eta", 0, std::move(table));

    // kos(A_n^n, eta) is A_n^{n+1} on the nose
    auto TC = koszul_tower(C, {eta});
    CHECK(same_shape(*TC.top(), *make_interval(nn, nn + 1)));

    // kos(A_{n-1}^n, eta) ~ A_{n-1}^{n+1} (+) A_n^n via an explicit comparison
    auto TM = koszul_tower(M, {eta});
    auto S = direct_sum(make_interval(nn - 1, nn + 1), make_interval(nn, nn)).sum;
    {
        Fp f2(2);
        std::vector<Mat<std::uint64_t>> comps;
        for (int d = TM.top()->lo; d <= TM.top()->hi; ++d) {
            Mat<std::uint64_t> m(S->kdim(d), TM.top()->kdim(d));
            if (d == -(nn + 1)) {
                set_block(m, 0, 0, la::identity(f2, 2));
            } else if (d == -nn) {
                // cone term = Y-part (+) X-part; sum = long (+) short
                set_block(m, 0, 0, la::identity(f2, 2));
                set_block(m, 0, 2, la::identity(f2, 2));
                set_block(m, 2, 2, la::identity(f2, 2));
            } else if (d == -(nn - 1)) {
                set_block(m, 0, 0, la::identity(f2, 2));
            }
            comps.push_back(std::move(m));
        }
        auto phi = make_chain_map(TM.top(), S, 0, std::move(comps));
        CHECK(homotopy_inverse(phi).has_value());
    }

    // the two Hom modules have dimension 2 but different x-actions
    WindowPolicy p;
    auto rep = verify_iso_hom_koszul<Fp>({eta}, C, M, p);
    CHECK(rep.left_vs_right == IsoVerdict::NotIsomorphic);
}
