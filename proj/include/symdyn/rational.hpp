#ifndef SYMDYN_RATIONAL_HPP
#define SYMDYN_RATIONAL_HPP

// Exact rational scalars on top of GMP.
//
// Invariant: every Rational is stored fully reduced with positive denominator.
// mpq_class only keeps results canonical when its inputs are canonical, so all
// constructors funnel through canonicalize().

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

namespace symdyn {

using Integer = mpz_class;

class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}                       // NOLINT: implicit by design
    Rational(int n) : v_(static_cast<long>(n)) {}     // NOLINT: implicit by design
    Rational(long n, long d) : v_(n, d) { v_.canonicalize(); }
    Rational(const Integer& n) : v_(n) {}             // NOLINT: implicit by design
    Rational(const Integer& n, const Integer& d) : v_(n, d) { v_.canonicalize(); }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Parses "a" or "a/b".
    static Rational from_string(const std::string& s) {
        mpq_class q(s, 10);
        q.canonicalize();
        return Rational(q);
    }

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const { return Rational(mpq_class(1) / v_); }

    double to_double() const { return v_.get_d(); }

    std::string str() const { return v_.get_str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.v_;
    }

private:
    mpq_class v_;
};

inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Rational pow(const Rational& base, int e) {
    if (e == 0) return Rational(1);
    Rational b = e < 0 ? base.inverse() : base;
    int k = e < 0 ? -e : e;
    Rational acc(1);
    for (int i = 0; i < k; ++i) acc *= b;
    return acc;
}

}  // namespace symdyn

#endif  // SYMDYN_RATIONAL_HPP
