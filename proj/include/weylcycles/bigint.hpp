#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylcycles {

using Int = boost::multiprecision::cpp_int;

/// Binomial coefficient with the conventions used throughout:
/// C(a,b) = 0 if b < 0 or a < b, C(a,0) = 1 for a >= 0.
/// Negative a with b >= 0 also yields 0 (never needed with b > a).
inline Int binomial(const Int& a, long b) {
    if (b < 0) return 0;
    if (a < b) return 0;
    Int num = 1;
    Int den = 1;
    for (long i = 0; i < b; ++i) {
        num *= a - i;
        den *= i + 1;
    }
    return num / den;
}

inline Int binomial(long a, long b) { return binomial(Int(a), b); }

/// Polynomial binomial a(a-1)...(a-b+1)/b!, defined for any integer a
/// (including negative). Agrees with binomial() for a >= 0 and vanishes only
/// for 0 <= a < b; for a < 0 it equals (-1)^b C(b-a-1, b).
inline Int binomial_poly(const Int& a, long b) {
    if (b < 0) return 0;
    Int num = 1;
    Int den = 1;
    for (long i = 0; i < b; ++i) {
        num *= a - i;
        den *= i + 1;
    }
    return num / den;
}

inline long to_long(const Int& v) {
    if (v > std::numeric_limits<long long>::max() ||
        v < std::numeric_limits<long long>::min())
        throw std::overflow_error("integer too large for native conversion: " + v.str());
    return static_cast<long>(v.convert_to<long long>());
}

inline Int vec_gcd(const std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = boost::multiprecision::gcd(g, x);
    return g;
}

/// Divide out the content so the vector is primitive; the zero vector is
/// returned unchanged. The leading-sign is not normalized (rays keep their
/// direction).
inline std::vector<Int> make_primitive(std::vector<Int> v) {
    Int g = vec_gcd(v);
    if (g > 1)
        for (Int& x : v) x /= g;
    return v;
}

inline Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Int r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

/// FNV-1a over a byte string; used for catalog version hashes.
inline std::uint64_t fnv1a(const std::string& data, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace weylcycles
