#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "koszul/linalg.hpp"
#include "koszul/linalg_serial.hpp"

using namespace koszul;
namespace la = koszul::linalg;

namespace {

template <class F>
Mat<la::Elt<F>> random_mat(const F& f, std::mt19937_64& rng, int maxdim = 8, int maxent = 9) {
    std::uniform_int_distribution<int> dim(0, maxdim);
    std::uniform_int_distribution<long long> ent(-maxent, maxent);
    int r = dim(rng), c = dim(rng);
    Mat<la::Elt<F>> m(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m(i, j) = f.from_int(ent(rng));
    return m;
}

template <class F>
void check_backend_properties(const F& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_mat(f, rng);
        int rk = la::rank(f, a);
        auto k = la::kernel_basis(f, a);
        CHECK(rk + k.cols == a.cols);
        if (k.cols > 0) CHECK(la::is_zero(f, la::mul(f, a, k)));
        if constexpr (F::is_field) {
            // kernel columns linearly independent
            CHECK(la::rank(f, k) == k.cols);
        }
        // solve for a random rhs in the column space must verify by multiplication
        if (a.cols > 0) {
            Mat<la::Elt<F>> x0(a.cols, 1);
            std::uniform_int_distribution<long long> ent(-4, 4);
            for (int i = 0; i < a.cols; ++i) x0(i, 0) = f.from_int(ent(rng));
            auto b = la::mul(f, a, x0);
            auto res = la::solve(f, a, b);
            REQUIRE(res.ok());
            CHECK(la::mul(f, a, *res.x) == b);
        }
        // infeasible case must come with a valid dual certificate
        {
            Mat<la::Elt<F>> b(a.rows, 1);
            for (int i = 0; i < a.rows; ++i) b(i, 0) = f.from_int((i * 7 + 3) % 11 - 5);
            auto res = la::solve(f, a, b);
            if (!res.ok()) {
                std::vector<la::Elt<F>> bv(b.a.begin(), b.a.end());
                CHECK(la::check_dual(f, a, bv, res.dual));
            }
        }
    }
}

} // namespace

TEST_CASE("solve: identity and diagonal cases") {
    ZZ z;
    auto I = la::identity(z, 3);
    auto b = la::make(z, 3, 1, {1, 2, 3});
    auto r = la::solve(z, I, b);
    REQUIRE(r.ok());
    CHECK(*r.x == b);

    auto two = la::make(z, 1, 1, {2});
    auto one = la::make(z, 1, 1, {1});
    CHECK_FALSE(la::solve(z, two, one).ok());

    auto d = la::make(z, 2, 2, {2, 0, 0, 3});
    auto rhs = la::make(z, 2, 1, {4, 9});
    auto s = la::solve(z, d, rhs);
    REQUIRE(s.ok());
    CHECK(*s.x == la::make(z, 2, 1, {2, 3}));
    CHECK(la::mul(z, d, *s.x) == rhs);
}

TEST_CASE("solve: dimension mismatch is an input error") {
    ZZ z;
    auto a = la::make(z, 2, 2, {1, 0, 0, 1});
    auto b = la::make(z, 3, 1, {1, 1, 1});
    CHECK_THROWS_AS((void)la::solve(z, a, b), input_error);
}

TEST_CASE("kernel_basis examples") {
    Fp f2(2);
    Mat<std::uint64_t> zero22(2, 2);
    auto k = la::kernel_basis(f2, zero22);
    CHECK(k == la::identity(f2, 2));

    auto a = la::make(f2, 1, 2, {1, 1});
    auto k2 = la::kernel_basis(f2, a);
    REQUIRE(k2.cols == 1);
    CHECK(k2(0, 0) == 1);
    CHECK(k2(1, 0) == 1);

    ZZ z;
    auto m = la::make(z, 1, 1, {2});
    CHECK(la::kernel_basis(z, m).cols == 0);
}

TEST_CASE("smith_form examples") {
    ZZ z;
    auto a = la::make(z, 2, 2, {2, 0, 0, 3});
    auto s = la::smith_form(a);
    REQUIRE(s.d.size() == 2);
    CHECK(s.d[0] == 1);
    CHECK(s.d[1] == 6);
    CHECK(abs(la::det_bareiss(s.U)) == 1);
    CHECK(abs(la::det_bareiss(s.V)) == 1);

    auto id = la::identity(z, 4);
    auto si = la::smith_form(id);
    for (auto& dv : si.d) CHECK(dv == 1);

    auto zz1 = la::make(z, 1, 1, {0});
    auto sz = la::smith_form(zz1);
    REQUIRE(sz.d.size() == 1);
    CHECK(sz.d[0] == 0);
}

TEST_CASE("random matrix properties per backend") {
    check_backend_properties(Fp(2), 11);
    check_backend_properties(Fp(3), 12);
    check_backend_properties(Fp(5), 13);
    check_backend_properties(QQ{}, 14);
    check_backend_properties(ZZ{}, 15);
}

TEST_CASE("smith form invariants on random integer matrices") {
    ZZ z;
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_mat(z, rng);
        auto s = la::smith_form(a);
        auto lhs = la::mul(z, la::mul(z, s.U, a), s.V);
        CHECK(lhs == s.diagonal());
        for (std::size_t i = 0; i + 1 < s.d.size(); ++i) {
            if (s.d[i] == 0)
                CHECK(s.d[i + 1] == 0);
            else
                CHECK(s.d[i + 1] % s.d[i] == 0);
        }
        CHECK(abs(la::det_bareiss(s.U)) == 1);
        CHECK(abs(la::det_bareiss(s.V)) == 1);
    }
}

TEST_CASE("parallel and serial kernels agree") {
    std::mt19937_64 rng(2024);
    Fp f5(5);
    QQ q;
    ZZ z;
    for (int trial = 0; trial < 120; ++trial) {
        auto a5 = random_mat(f5, rng);
        auto b5 = random_mat(f5, rng);
        if (a5.cols == b5.rows) CHECK(la::mul(f5, a5, b5) == la::serial::mul(f5, a5, b5));
        CHECK(la::rank(f5, a5) == la::serial::rank(f5, a5));
        CHECK(la::rref(f5, a5).R == la::serial::rref(f5, a5).R);

        auto aq = random_mat(q, rng, 6, 5);
        CHECK(la::rank(q, aq) == la::serial::rank(q, aq));

        auto az = random_mat(z, rng, 6, 9);
        auto sp = la::smith_form(az);
        auto ss = la::serial::smith_form(az);
        CHECK(sp.d == ss.d); // invariant factors are canonical
        // kernels span the same lattice
        auto kp = la::kernel_basis(z, az);
        auto ks = la::serial::kernel_basis(z, az);
        CHECK(kp.cols == ks.cols);
        if (kp.cols > 0) {
            CHECK(la::solve(z, kp, ks).ok());
            CHECK(la::solve(z, ks, kp).ok());
        }
        // solvability must agree
        auto bz = random_mat(z, rng, 6, 9);
        if (bz.rows == az.rows && bz.cols >= 1) {
            auto b1 = column(bz, 0);
            auto r1 = la::solve(z, az, b1);
            auto r2 = la::serial::solve(z, az, b1);
            CHECK(r1.ok() == r2.has_value());
            if (r1.ok()) CHECK(la::mul(z, az, *r2) == b1);
        }
    }
}

TEST_CASE("prime field context rejects bad moduli") {
    CHECK_THROWS_AS(Fp(4), input_error);
    CHECK_THROWS_AS(Fp(1), input_error);
    CHECK_NOTHROW(Fp(2));
    CHECK_NOTHROW(Fp(97));
    Fp f7(7);
    for (std::uint64_t a = 1; a < 7; ++a) CHECK(f7.mul(a, f7.inv(a)) == 1);
    for (std::uint64_t a = 0; a < 7; ++a) CHECK(f7.add(a, f7.neg(a)) == 0);
}
