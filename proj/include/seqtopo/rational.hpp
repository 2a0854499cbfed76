#pragma once

#include <gmpxx.h>

#include <compare>
#include <stdexcept>
#include <string>

namespace seqtopo {

/// Exact rational scalar. All homology ranks and filtration values are kept
/// exact; doubles appear only at the spectral boundary.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// "3", "-5/4" style exact formatting (used by the CSV formats).
inline std::string to_string(const Rational& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "3", "-5/4" or "inf"-free decimal-less forms emitted by to_string.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

/// A rational extended with +infinity. +inf compares greater than every
/// finite value, and averaging with any +inf term yields +inf.
class ExtendedValue {
public:
    ExtendedValue() : value_(0), finite_(true) {}
    ExtendedValue(Rational v) : value_(std::move(v)), finite_(true) {}
    ExtendedValue(long v) : value_(v), finite_(true) {}

    static ExtendedValue infinity() {
        ExtendedValue e;
        e.finite_ = false;
        return e;
    }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    const Rational& value() const {
        if (!finite_) throw std::logic_error("value() on +inf");
        return value_;
    }

    friend bool operator==(const ExtendedValue& a, const ExtendedValue& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtendedValue& a, const ExtendedValue& b) { return !(a == b); }
    friend bool operator<(const ExtendedValue& a, const ExtendedValue& b) {
        if (!a.finite_) return false;           // inf < x never
        if (!b.finite_) return true;            // finite < inf
        return a.value_ < b.value_;
    }
    friend bool operator>(const ExtendedValue& a, const ExtendedValue& b) { return b < a; }
    friend bool operator<=(const ExtendedValue& a, const ExtendedValue& b) { return !(b < a); }
    friend bool operator>=(const ExtendedValue& a, const ExtendedValue& b) { return !(a < b); }

    friend ExtendedValue operator+(const ExtendedValue& a, const ExtendedValue& b) {
        if (!a.finite_ || !b.finite_) return infinity();
        return ExtendedValue(a.value_ + b.value_);
    }

    ExtendedValue operator/(long d) const {
        if (!finite_) return infinity();
        return ExtendedValue(value_ / make_rational(d));
    }

    friend ExtendedValue max(const ExtendedValue& a, const ExtendedValue& b) {
        return a < b ? b : a;
    }

    std::string str() const { return finite_ ? to_string(value_) : "inf"; }

private:
    Rational value_;
    bool finite_;
};

inline ExtendedValue extended_from_string(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "Inf") return ExtendedValue::infinity();
    return ExtendedValue(rational_from_string(s));
}

}  // namespace seqtopo
