// Timing comparison of the OpenMP kernels against the serial reference.
// Run:  bench_linalg [size]

#include <chrono>
#include <cstdio>
#include <random>

#include "koszul/linalg.hpp"
#include "koszul/linalg_serial.hpp"

using namespace koszul;
namespace la = koszul::linalg;

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

Mat<std::uint64_t> random_fp(const Fp& f, int n, int m, std::mt19937_64& rng) {
    Mat<std::uint64_t> a(n, m);
    std::uniform_int_distribution<std::uint64_t> d(0, f.p - 1);
    for (auto& e : a.a) e = d(rng);
    return a;
}

Mat<BigInt> random_zz(int n, int m, std::mt19937_64& rng) {
    Mat<BigInt> a(n, m);
    std::uniform_int_distribution<long long> d(-9, 9);
    for (auto& e : a.a) e = d(rng);
    return a;
}

} // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 512;
    std::mt19937_64 rng(42);
    Fp f(32003);

    std::printf("threads: %d\n", hardware_threads());
    std::printf("%-28s %10s %10s %8s\n", "kernel", "serial ms", "omp ms", "speedup");
    std::fflush(stdout);

    {
        auto a = random_fp(f, n, n, rng);
        auto b = random_fp(f, n, n, rng);
        Mat<std::uint64_t> r1, r2;
        double ts = time_ms([&] { r1 = la::serial::mul(f, a, b); });
        double tp = time_ms([&] { r2 = la::mul(f, a, b); });
        std::printf("%-28s %10.1f %10.1f %8.2f %s\n", "mul F_p", ts, tp, ts / tp,
                    r1 == r2 ? "" : "MISMATCH");
        std::fflush(stdout);
    }
    {
        auto a = random_fp(f, n, n, rng);
        int r1 = 0, r2 = 0;
        double ts = time_ms([&] { r1 = la::serial::rank(f, a); });
        double tp = time_ms([&] { r2 = la::rank(f, a); });
        std::printf("%-28s %10.1f %10.1f %8.2f %s\n", "rref F_p", ts, tp, ts / tp,
                    r1 == r2 ? "" : "MISMATCH");
        std::fflush(stdout);
    }
    {
        // Bezout-pivot reference suffers entry explosion past desk scale;
        // keep the comparison honest at the size the engine actually uses.
        int m = 12;
        auto a = random_zz(m, m, rng);
        la::SmithForm s1, s2;
        double ts = time_ms([&] { s1 = la::serial::smith_form(a); });
        double tp = time_ms([&] { s2 = la::smith_form(a); });
        std::printf("%-28s %10.1f %10.1f %8.2f %s\n", "smith Z", ts, tp, ts / tp,
                    s1.d == s2.d ? "" : "MISMATCH");
    }
    return 0;
}
