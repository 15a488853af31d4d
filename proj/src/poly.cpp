#include "symdyn/poly.hpp"

namespace symdyn {

Poly elem_sym_vars(int nvars, int k) {
    if (nvars < 0 || k < 0 || k > nvars)
        throw std::invalid_argument("elem_sym_vars: need 0 <= k <= nvars");
    Poly p(nvars);
    if (k == 0) return Poly::one(nvars);
    // Enumerate k-subsets of the variable indices.
    std::vector<int> idx(k);
    Exp e(nvars, 0);
    auto rec = [&](auto&& self, int pos, int next) -> void {
        if (pos == k) {
            std::fill(e.begin(), e.end(), 0);
            for (int i : idx) e[i] = 1;
            p.add_term(e, Rational(1));
            return;
        }
        for (int i = next; i <= nvars - (k - pos); ++i) {
            idx[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return p;
}

Poly elem_sym(int n, int k) {
    if (n < 2) throw std::invalid_argument("elem_sym: need n >= 2");
    if (k < 0 || k > n - 1) throw std::invalid_argument("elem_sym: need 0 <= k <= n-1");
    return elem_sym_vars(n - 1, k);
}

Rational poly_content(const Poly& p) {
    if (p.is_zero()) return Rational(0);
    Integer num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : p.terms()) {
        num_gcd = gcd(num_gcd, c.num());
        den_lcm = lcm(den_lcm, c.den());
    }
    Rational content(num_gcd, den_lcm);
    if (p.terms().begin()->second.sign() < 0) content = -content;
    return content;
}

}  // namespace symdyn
