#ifndef SYMDYN_POLY1_HPP
#define SYMDYN_POLY1_HPP

// Dense univariate polynomials over an exact field, and rational maps of the
// Riemann sphere built from them. Used for the one-variable chart maps derived
// from restrictions to invariant lines.

#include "symdyn/poly.hpp"

#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace symdyn {

template <class K>
class Poly1 {
public:
    Poly1() = default;
    Poly1(std::initializer_list<K> ascending) : c_(ascending) { trim(); }
    static Poly1 from_coeffs(std::vector<K> ascending) {
        Poly1 p;
        p.c_ = std::move(ascending);
        p.trim();
        return p;
    }
    static Poly1 zero() { return Poly1(); }
    static Poly1 constant(const K& k) { return from_coeffs({k}); }
    static Poly1 z() { return from_coeffs({K(0), K(1)}); }

    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(int i) const { return i >= 0 && i < int(c_.size()) ? c_[i] : K(0); }
    K lead() const { return c_.empty() ? K(0) : c_.back(); }

    friend Poly1 operator+(const Poly1& a, const Poly1& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return from_coeffs(std::move(r));
    }
    friend Poly1 operator-(const Poly1& a, const Poly1& b) {
        std::vector<K> r(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return from_coeffs(std::move(r));
    }
    Poly1 operator-() const {
        std::vector<K> r = c_;
        for (auto& v : r) v = -v;
        return from_coeffs(std::move(r));
    }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        if (a.is_zero() || b.is_zero()) return Poly1();
        std::vector<K> r(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return from_coeffs(std::move(r));
    }
    friend Poly1 operator*(const K& s, const Poly1& p) {
        std::vector<K> r = p.c_;
        for (auto& v : r) v = s * v;
        return from_coeffs(std::move(r));
    }
    friend bool operator==(const Poly1& a, const Poly1& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly1& a, const Poly1& b) { return !(a == b); }

    K evaluate(const K& x) const {  // Horner
        K acc(0);
        for (int i = int(c_.size()) - 1; i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    Poly1 derivative() const {
        if (c_.size() <= 1) return Poly1();
        std::vector<K> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = K(int(i)) * c_[i];
        return from_coeffs(std::move(r));
    }

    // Quotient/remainder with remainder degree < divisor degree.
    static std::pair<Poly1, Poly1> divmod(Poly1 a, const Poly1& b) {
        if (b.is_zero()) throw std::invalid_argument("Poly1::divmod: zero divisor");
        std::vector<K> q(a.degree() >= b.degree() ? a.degree() - b.degree() + 1 : 0, K(0));
        K inv = b.lead().inverse();
        while (!a.is_zero() && a.degree() >= b.degree()) {
            int shift = a.degree() - b.degree();
            K f = a.lead() * inv;
            q[shift] = f;
            std::vector<K> nc = a.c_;
            for (int i = 0; i <= b.degree(); ++i) nc[i + shift] -= f * b.c_[i];
            a = from_coeffs(std::move(nc));
        }
        return {from_coeffs(std::move(q)), a};
    }

    static Poly1 gcd(Poly1 a, Poly1 b) {
        while (!b.is_zero()) {
            Poly1 r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (!a.is_zero()) a = a.lead().inverse() * a;  // monic
        return a;
    }

    std::string str(const std::string& var = "z") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int i = degree(); i >= 0; --i) {
            if (coeff(i).is_zero()) continue;
            std::string cs;
            bool neg = false;
            if constexpr (std::is_same_v<K, Rational>) {
                neg = coeff(i).sign() < 0;
                cs = (neg ? -coeff(i) : coeff(i)).str();
            } else {
                cs = "(" + coeff(i).str() + ")";
            }
            if (first) {
                if (neg) os << "-";
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            bool unit_c = (cs == "1") && i > 0;
            if (!unit_c) os << cs;
            if (i > 0) {
                if (!unit_c) os << "*";
                os << var;
                if (i > 1) os << "^" << i;
            }
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;  // ascending powers
};

// A rational self-map of CP^1 in an affine chart, kept in lowest terms.
template <class K>
struct Map1 {
    Poly1<K> num, den;

    int degree() const { return std::max(num.degree(), den.degree()); }

    void reduce() {
        Poly1<K> g = Poly1<K>::gcd(num, den);
        if (!g.is_zero() && g.degree() >= 0) {
            num = Poly1<K>::divmod(num, g).first;
            den = Poly1<K>::divmod(den, g).first;
        }
    }

    // Same map of the sphere (projective equality of (num, den) pairs).
    friend bool same_map(const Map1& f, const Map1& g) {
        return f.num * g.den == g.num * f.den;
    }
};

// Canonical form over the rationals: coprime, integer coefficients with joint
// content 1, positive leading denominator coefficient. This makes
// "coefficient-for-coefficient" comparisons meaningful.
struct RationalMap1D {
    Poly1<Rational> num, den;

    static RationalMap1D normalized(Map1<Rational> f) {
        f.reduce();
        Integer ng(0), dl(1);
        auto scan = [&](const Poly1<Rational>& p) {
            for (const auto& c : p.coeffs()) {
                ng = gcd(ng, c.num());
                dl = lcm(dl, c.den());
            }
        };
        scan(f.num);
        scan(f.den);
        if (sgn(ng) == 0) throw std::domain_error("RationalMap1D: zero map");
        Rational s = Rational(dl, ng);
        if (f.den.is_zero()) throw std::domain_error("RationalMap1D: zero denominator");
        if ((s * f.den.lead()).sign() < 0) s = -s;
        return RationalMap1D{s * f.num, s * f.den};
    }

    int degree() const { return std::max(num.degree(), den.degree()); }

    friend bool operator==(const RationalMap1D& a, const RationalMap1D& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator!=(const RationalMap1D& a, const RationalMap1D& b) { return !(a == b); }

    std::string str() const { return "(" + num.str() + ") / (" + den.str() + ")"; }
};

}  // namespace symdyn

#endif  // SYMDYN_POLY1_HPP
