#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <variant>

#include "koszul/common.hpp"

namespace koszul {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Prime field F_p.  Elements are canonical representatives in [0, p).
// The modulus is carried by the context, NTL-style, not by the element.
struct Fp {
    std::uint64_t p = 2;
    using Elt = std::uint64_t;
    static constexpr bool is_field = true;
    static constexpr bool is_integers = false;

    Fp() = default;
    explicit Fp(std::uint64_t prime) : p(prime) {
        if (prime >= (1ull << 31))
            throw input_error("prime field modulus must be < 2^31");
        if (!is_prime_u64(prime))
            throw input_error("modulus " + std::to_string(prime) + " is not prime");
    }

    Elt zero() const { return 0; }
    Elt one() const { return 1 % p; }
    Elt from_int(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return static_cast<Elt>(r);
    }
    Elt add(Elt a, Elt b) const {
        Elt s = a + b;
        return s >= p ? s - p : s;
    }
    Elt sub(Elt a, Elt b) const { return a >= b ? a - b : a + p - b; }
    Elt neg(Elt a) const { return a == 0 ? 0 : p - a; }
    Elt mul(Elt a, Elt b) const { return (a * b) % p; }
    Elt inv(Elt a) const {
        if (a == 0) throw input_error("division by zero in F_p");
        // extended Euclid
        std::int64_t t = 0, newt = 1;
        std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a);
        while (newr != 0) {
            std::int64_t q = r / newr;
            std::int64_t tmp = t - q * newt;
            t = newt; newt = tmp;
            tmp = r - q * newr;
            r = newr; newr = tmp;
        }
        if (t < 0) t += static_cast<std::int64_t>(p);
        return static_cast<Elt>(t);
    }
    Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
    bool is_zero(Elt a) const { return a == 0; }
    bool is_unit(Elt a) const { return a != 0; }
    std::string str(Elt a) const { return std::to_string(a); }
    std::string name() const { return "F" + std::to_string(p); }
};

// The rational field.
struct QQ {
    using Elt = BigRat;
    static constexpr bool is_field = true;
    static constexpr bool is_integers = false;

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    Elt from_int(long long v) const { return v; }
    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    Elt inv(const Elt& a) const {
        if (a == 0) throw input_error("division by zero in Q");
        return 1 / a;
    }
    Elt div(const Elt& a, const Elt& b) const { return a / inv_guard(b); }
    bool is_zero(const Elt& a) const { return a == 0; }
    bool is_unit(const Elt& a) const { return a != 0; }
    std::string str(const Elt& a) const { return a.str(); }
    std::string name() const { return "Q"; }

private:
    const Elt& inv_guard(const Elt& b) const {
        if (b == 0) throw input_error("division by zero in Q");
        return b;
    }
};

// The ring of integers with arbitrary-precision arithmetic.
struct ZZ {
    using Elt = BigInt;
    static constexpr bool is_field = false;
    static constexpr bool is_integers = true;

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    Elt from_int(long long v) const { return v; }
    Elt add(const Elt& a, const Elt& b) const { return a + b; }
    Elt sub(const Elt& a, const Elt& b) const { return a - b; }
    Elt neg(const Elt& a) const { return -a; }
    Elt mul(const Elt& a, const Elt& b) const { return a * b; }
    bool is_zero(const Elt& a) const { return a == 0; }
    bool is_unit(const Elt& a) const { return a == 1 || a == -1; }
    bool divides(const Elt& a, const Elt& b) const { return a != 0 && b % a == 0; }
    Elt exact_div(const Elt& a, const Elt& b) const { return a / b; }
    std::string str(const Elt& a) const { return a.str(); }
    std::string name() const { return "Z"; }
};

using Backend = std::variant<Fp, QQ, ZZ>;

inline std::string backend_name(const Backend& b) {
    return std::visit([](const auto& f) { return f.name(); }, b);
}

// Accepts "Z", "Q", "F<p>".
inline Backend parse_backend(const std::string& s) {
    if (s == "Z") return ZZ{};
    if (s == "Q") return QQ{};
    if (s.size() >= 2 && s[0] == 'F') {
        std::uint64_t p = std::stoull(s.substr(1));
        return Fp(p);
    }
    throw input_error("unknown coefficient backend '" + s + "'");
}

} // namespace koszul
