#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace weyl {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const BigInt& v) { return v.convert_to<double>(); }
inline double to_double(const Rational& v) { return v.convert_to<double>(); }

// Parses "p/q" or a bare integer into an exact rational.
Rational parse_rational(const std::string& text);

// floor of a rational, valid for negatives as well.
inline BigInt rational_floor(const Rational& v) {
    BigInt num = numerator(v), den = denominator(v);
    BigInt q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

// Exact floor(x * mult) with x taken at its exact binary-double value.
inline BigInt floor_scaled(double x, const BigInt& mult) {
    if (!std::isfinite(x)) throw std::invalid_argument("floor_scaled: non-finite input");
    return rational_floor(Rational(x) * Rational(mult));
}

inline long long checked_ll(const BigInt& v, const char* what) {
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN))
        throw std::overflow_error(std::string(what) + ": value exceeds 64-bit range");
    return v.convert_to<long long>();
}

inline BigInt binomial(long long n, long long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline BigInt bigint_pow(const BigInt& base, int exp) {
    BigInt r = 1, b = base;
    for (int e = exp; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

// floor(sqrt(v)) for v >= 0; exact.
inline long long isqrt_ll(long long v) {
    if (v < 0) throw std::invalid_argument("isqrt_ll: negative input");
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && static_cast<__int128>(r) * r > v) --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Compensated (Neumaier) accumulator; deterministic for a fixed add order.
struct NeumaierSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Deterministic 64-bit mixer (splitmix64); used wherever seeded values
// must be identical across platforms and standard-library versions.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform double in [0, 1) from a 64-bit word.
inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace weyl
