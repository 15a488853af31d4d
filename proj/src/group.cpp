#include "symdyn/group.hpp"

#include <set>
#include <sstream>

namespace symdyn {

GroupElement transposition_T(int n) {
    if (n < 3) throw std::invalid_argument("transposition_T: need n >= 3");
    int d = n - 1;
    Mat<Rational> m(d, d);
    for (int i = 0; i < d; ++i) {
        m.at(i, 0) = Rational(-1);
        if (i > 0) m.at(i, i) = Rational(1);
    }
    return {n, m};
}

GroupElement perm_element(int n, const std::vector<int>& sigma) {
    int d = n - 1;
    if (int(sigma.size()) != d) throw std::invalid_argument("perm_element: permutation size");
    std::vector<bool> seen(d, false);
    Mat<Rational> m(d, d);
    for (int j = 0; j < d; ++j) {
        int i = sigma[j];
        if (i < 0 || i >= d || seen[i]) throw std::invalid_argument("perm_element: not a permutation");
        seen[i] = true;
        m.at(i, j) = Rational(1);
    }
    return {n, m};
}

std::vector<GroupElement> group_generators(int n) {
    std::vector<GroupElement> g;
    g.push_back(transposition_T(n));
    for (int i = 0; i + 1 < n - 1; ++i) {
        std::vector<int> sigma(n - 1);
        for (int j = 0; j < n - 1; ++j) sigma[j] = j;
        std::swap(sigma[i], sigma[i + 1]);
        g.push_back(perm_element(n, sigma));
    }
    return g;
}

CoordTransform coord_transforms(int n) {
    Mat<Rational> A(n - 1, n), B(n, n - 1);
    for (int i = 0; i < n - 1; ++i) {
        A.at(i, i) = Rational(1);
        A.at(i, n - 1) = Rational(-1);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - 1; ++j)
            B.at(i, j) = (i == j) ? Rational(1 - n) : Rational(1);
    return {A, B};
}

ProjPointExact ProjPointExact::from_rationals(const std::vector<Rational>& v) {
    ProjPointExact p;
    Integer den(1);
    for (const auto& r : v) den = lcm(den, r.den());
    p.x_.resize(v.size());
    Integer g(0);
    for (size_t i = 0; i < v.size(); ++i) {
        p.x_[i] = v[i].num() * (den / v[i].den());
        g = gcd(g, p.x_[i]);
    }
    if (sgn(g) == 0) throw std::invalid_argument("ProjPointExact: zero vector");
    int lead_sign = 0;
    for (auto& c : p.x_) {
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        if (lead_sign == 0) lead_sign = sgn(c);
    }
    if (lead_sign < 0)
        for (auto& c : p.x_) c = -c;
    return p;
}

ProjPointExact ProjPointExact::from_ints(const std::vector<long>& v) {
    std::vector<Rational> r(v.begin(), v.end());
    return from_rationals(r);
}

std::vector<Rational> ProjPointExact::rationals() const {
    return std::vector<Rational>(x_.begin(), x_.end());
}

ProjPointExact ProjPointExact::apply(const Mat<Rational>& m) const {
    return from_rationals(m.apply(rationals()));
}

std::string ProjPointExact::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < x_.size(); ++i) os << (i ? "," : "") << x_[i];
    os << "]";
    return os.str();
}

std::vector<SpecialPoint> special_points(int n) {
    if (n < 3) throw std::invalid_argument("special_points: need n >= 3");
    auto make = [&](int ones) {
        std::vector<long> v(n - 1, 0);
        for (int i = 0; i < ones; ++i) v[i] = 1;
        return ProjPointExact::from_ints(v);
    };
    std::vector<SpecialPoint> pts;
    int m = (n + 1) / 2;  // n = 2m-1 or n = 2m
    bool even = (n % 2 == 0);
    int kmax = even ? n / 2 : m - 1;
    for (int k = 1; k <= kmax; ++k) {
        if (even && k == n / 2) {
            pts.push_back({'p', k, make(k)});  // p_m == q_m, listed once
        } else {
            pts.push_back({'p', k, make(k)});
            pts.push_back({'q', k, make(n - k)});
        }
    }
    return pts;
}

Integer predicted_orbit_size(int n, int k) {
    if (n % 2 == 0 && k == n / 2) return binomial(n - 1, k - 1);
    return binomial(n, k);
}

std::vector<ProjPointExact> orbit(const ProjPointExact& seed, int n) {
    if (seed.dim() != n - 1) throw std::invalid_argument("orbit: point dimension != n-1");
    const auto gens = group_generators(n);
    std::set<ProjPointExact> seen{seed};
    std::vector<ProjPointExact> frontier{seed};
    while (!frontier.empty()) {
        std::vector<ProjPointExact> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                ProjPointExact q = p.apply(g.m);
                if (seen.insert(q).second) next.push_back(q);
            }
        frontier = std::move(next);
    }
    return std::vector<ProjPointExact>(seen.begin(), seen.end());
}

std::vector<Poly> hyperplane_forms(int n) {
    int d = n - 1;
    std::vector<Poly> forms;
    for (int k = 0; k < d; ++k) forms.push_back(Poly::variable(d, k));
    for (int k = 0; k < d; ++k)
        for (int l = k + 1; l < d; ++l)
            forms.push_back(Poly::variable(d, k) - Poly::variable(d, l));
    return forms;
}

}  // namespace symdyn
