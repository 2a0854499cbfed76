#pragma once

#include <cstdint>
#include <string>

#include "seqtopo/rational.hpp"

namespace seqtopo {

/// Runtime selector for the coefficient field of a homology computation.
enum class FieldTag { GF2, Q };

inline std::string field_name(FieldTag f) { return f == FieldTag::GF2 ? "gf2" : "q"; }

/// The two-element field. Arithmetic is xor/and; every nonzero element is
/// its own inverse.
struct GF2 {
    std::uint8_t v{0};

    GF2() = default;
    explicit GF2(long x) : v(static_cast<std::uint8_t>(((x % 2) + 2) % 2)) {}

    friend GF2 operator+(GF2 a, GF2 b) { return GF2(a.v ^ b.v); }
    friend GF2 operator-(GF2 a, GF2 b) { return GF2(a.v ^ b.v); }
    friend GF2 operator*(GF2 a, GF2 b) { return GF2(a.v & b.v); }
    GF2 operator-() const { return *this; }
    GF2& operator+=(GF2 o) { v ^= o.v; return *this; }
    GF2& operator-=(GF2 o) { v ^= o.v; return *this; }
    friend bool operator==(GF2 a, GF2 b) { return a.v == b.v; }
    friend bool operator!=(GF2 a, GF2 b) { return a.v != b.v; }

private:
    explicit GF2(int x) : v(static_cast<std::uint8_t>(x & 1)) {}
};

namespace fld {

template <class T> inline T from_int(long x);
template <> inline GF2 from_int<GF2>(long x) { return GF2(x); }
template <> inline Rational from_int<Rational>(long x) { return Rational(x); }

inline bool is_zero(const GF2& x) { return x.v == 0; }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline GF2 inverse(const GF2& x) {
    if (x.v == 0) throw std::domain_error("inverse of zero in GF2");
    return x;
}
inline Rational inverse(const Rational& x) {
    if (sgn(x) == 0) throw std::domain_error("inverse of zero rational");
    return Rational(1) / x;
}

inline std::string str(const GF2& x) { return x.v ? "1" : "0"; }
inline std::string str(const Rational& x) { return to_string(x); }

}  // namespace fld

}  // namespace seqtopo
