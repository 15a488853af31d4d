#ifndef SYMDYN_QUADEXT_HPP
#define SYMDYN_QUADEXT_HPP

// Exact degree-2 extensions of the rationals, used for chart normalizations:
//   Q(sqrt3)  — generator w with w^2 = 3        (real planar figure charts)
//   Q(omega)  — generator w with w^2 = -1 - w   (primitive cube root of unity)
//
// An element is a + b*w with rational a, b. For w^2 = S + T*w the conjugate is
// conj(a + b*w) = a + b*T - b*w and the norm N = a^2 + a*b*T - b^2*S is a
// rational scalar, which makes division exact.

#include "symdyn/rational.hpp"

#include <complex>
#include <ostream>
#include <string>

namespace symdyn {

struct Sqrt3Tag {
    static Rational S() { return Rational(3); }
    static Rational T() { return Rational(0); }
    static std::string symbol() { return "r3"; }
    static std::complex<double> numeric() { return {1.7320508075688772935, 0.0}; }
};

struct OmegaTag {  // w = exp(2*pi*i/3), minimal polynomial w^2 + w + 1
    static Rational S() { return Rational(-1); }
    static Rational T() { return Rational(-1); }
    static std::string symbol() { return "w"; }
    static std::complex<double> numeric() { return {-0.5, 0.86602540378443864676}; }
};

template <class Tag>
class QuadExt {
public:
    Rational a, b;  // a + b*w

    QuadExt() : a(0), b(0) {}
    QuadExt(long n) : a(n), b(0) {}              // NOLINT: implicit by design
    QuadExt(int n) : a(n), b(0) {}               // NOLINT: implicit by design
    QuadExt(const Rational& ra) : a(ra), b(0) {} // NOLINT: implicit by design
    QuadExt(const Rational& ra, const Rational& rb) : a(ra), b(rb) {}

    static QuadExt generator() { return QuadExt(Rational(0), Rational(1)); }

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_rational() const { return b.is_zero(); }

    QuadExt operator-() const { return QuadExt(-a, -b); }

    QuadExt& operator+=(const QuadExt& o) { a += o.a; b += o.b; return *this; }
    QuadExt& operator-=(const QuadExt& o) { a -= o.a; b -= o.b; return *this; }

    QuadExt& operator*=(const QuadExt& o) {
        // (a + b w)(c + d w) = ac + bd w^2 + (ad + bc) w,  w^2 = S + T w
        Rational c = o.a, d = o.b;
        Rational bd = b * d;
        Rational na = a * c + bd * Tag::S();
        Rational nb = a * d + b * c + bd * Tag::T();
        a = na;
        b = nb;
        return *this;
    }

    QuadExt conj() const { return QuadExt(a + b * Tag::T(), -b); }

    Rational norm() const { return a * a + a * b * Tag::T() - b * b * Tag::S(); }

    QuadExt inverse() const {
        Rational n = norm();
        QuadExt c = conj();
        return QuadExt(c.a / n, c.b / n);
    }

    QuadExt& operator/=(const QuadExt& o) { return *this *= o.inverse(); }

    friend QuadExt operator+(QuadExt x, const QuadExt& y) { x += y; return x; }
    friend QuadExt operator-(QuadExt x, const QuadExt& y) { x -= y; return x; }
    friend QuadExt operator*(QuadExt x, const QuadExt& y) { x *= y; return x; }
    friend QuadExt operator/(QuadExt x, const QuadExt& y) { x /= y; return x; }

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.a == y.a && x.b == y.b;
    }
    friend bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

    std::complex<double> to_complex() const {
        return std::complex<double>(a.to_double(), 0.0) +
               std::complex<double>(b.to_double(), 0.0) * Tag::numeric();
    }

    std::string str() const {
        if (b.is_zero()) return a.str();
        std::string s;
        if (!a.is_zero()) s = a.str() + (b.sign() > 0 ? "+" : "");
        return s + b.str() + "*" + Tag::symbol();
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadExt& x) {
        return os << x.str();
    }
};

using QSqrt3 = QuadExt<Sqrt3Tag>;
using QOmega = QuadExt<OmegaTag>;

}  // namespace symdyn

#endif  // SYMDYN_QUADEXT_HPP
