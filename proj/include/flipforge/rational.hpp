#pragma once

/*
  flipforge/rational.hpp

  Minimal exact rational arithmetic for spine coordinates. Vertices sit
  at integer positions and transition points at midpoints between their
  spine neighbors, so numerators and denominators stay small; comparisons
  cross-multiply in 128-bit to be safe.
*/

#include <cstdint>
#include <numeric>
#include <string>

#include "flipforge/triangulation.hpp"  // flip_error

namespace flipforge {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw flip_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
    }
};

inline Rational midpoint(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, 2 * a.den * b.den);
}

inline std::string to_string(const Rational& r) {
    return r.den == 1 ? std::to_string(r.num)
                      : std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace flipforge
