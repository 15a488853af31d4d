#ifndef SYMDYN_POLY_HPP
#define SYMDYN_POLY_HPP

// Sparse multivariate polynomials over an exact scalar field.
//
// Canonical form: a term map keyed by exponent vectors with no explicit zero
// coefficients. The map comparator is descending graded lexicographic order
// (higher total degree first, ties by lexicographically larger exponent
// vector), so iteration order == serialization order and equality is plain
// term-map equality.

#include "symdyn/linalg.hpp"
#include "symdyn/rational.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace symdyn {

using Exp = std::vector<int>;

inline int exp_degree(const Exp& e) { return std::accumulate(e.begin(), e.end(), 0); }

struct GradedLexDesc {
    bool operator()(const Exp& a, const Exp& b) const {
        int da = exp_degree(a), db = exp_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

template <class K>
class PolyT {
public:
    using TermMap = std::map<Exp, K, GradedLexDesc>;

    explicit PolyT(int nvars = 0) : nvars_(nvars) {}

    static PolyT zero(int nvars) { return PolyT(nvars); }

    static PolyT constant(int nvars, const K& c) {
        PolyT p(nvars);
        if (!c.is_zero()) p.t_.emplace(Exp(nvars, 0), c);
        return p;
    }

    static PolyT one(int nvars) { return constant(nvars, K(1)); }

    static PolyT variable(int nvars, int j) {
        if (j < 0 || j >= nvars) throw std::invalid_argument("PolyT::variable: index");
        Exp e(nvars, 0);
        e[j] = 1;
        return monomial(nvars, e, K(1));
    }

    static PolyT monomial(int nvars, const Exp& e, const K& c) {
        if (int(e.size()) != nvars) throw std::invalid_argument("PolyT::monomial: exponent size");
        PolyT p(nvars);
        if (!c.is_zero()) p.t_.emplace(e, c);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    const TermMap& terms() const { return t_; }

    K coeff(const Exp& e) const {
        auto it = t_.find(e);
        return it == t_.end() ? K(0) : it->second;
    }

    void add_term(const Exp& e, const K& c) {
        if (int(e.size()) != nvars_) throw std::invalid_argument("PolyT::add_term: exponent size");
        if (c.is_zero()) return;
        auto [it, fresh] = t_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    PolyT operator-() const {
        PolyT r(nvars_);
        for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
        return r;
    }

    PolyT& operator+=(const PolyT& o) {
        check_vars(o);
        for (const auto& [e, c] : o.t_) add_term(e, c);
        return *this;
    }

    PolyT& operator-=(const PolyT& o) {
        check_vars(o);
        for (const auto& [e, c] : o.t_) add_term(e, -c);
        return *this;
    }

    friend PolyT operator+(PolyT a, const PolyT& b) { a += b; return a; }
    friend PolyT operator-(PolyT a, const PolyT& b) { a -= b; return a; }

    friend PolyT operator*(const PolyT& a, const PolyT& b) {
        a.check_vars(b);
        PolyT r(a.nvars_);
        Exp e(a.nvars_);
        for (const auto& [ea, ca] : a.t_)
            for (const auto& [eb, cb] : b.t_) {
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    PolyT& operator*=(const PolyT& o) { return *this = *this * o; }

    friend PolyT operator*(const K& s, const PolyT& p) {
        PolyT r(p.nvars_);
        if (s.is_zero()) return r;
        for (const auto& [e, c] : p.t_) r.t_.emplace(e, s * c);
        return r;
    }

    friend bool operator==(const PolyT& a, const PolyT& b) {
        return a.nvars_ == b.nvars_ && a.t_ == b.t_;
    }
    friend bool operator!=(const PolyT& a, const PolyT& b) { return !(a == b); }

    PolyT pow(int e) const {
        if (e < 0) throw std::invalid_argument("PolyT::pow: negative exponent");
        PolyT acc = one(nvars_);
        for (int i = 0; i < e; ++i) acc = acc * (*this);
        return acc;
    }

    // -1 for the zero polynomial.
    int total_degree() const {
        return t_.empty() ? -1 : exp_degree(t_.begin()->first);
    }

    bool is_homogeneous() const {
        if (t_.empty()) return true;
        int d = exp_degree(t_.begin()->first);
        for (const auto& [e, c] : t_)
            if (exp_degree(e) != d) return false;
        return true;
    }

    PolyT derivative(int j) const {
        if (j < 0 || j >= nvars_) throw std::invalid_argument("PolyT::derivative: index");
        PolyT r(nvars_);
        for (const auto& [e, c] : t_) {
            if (e[j] == 0) continue;
            Exp ne = e;
            ne[j] -= 1;
            r.add_term(ne, c * K(e[j]));
        }
        return r;
    }

    K evaluate(const std::vector<K>& pt) const {
        if (int(pt.size()) != nvars_) throw std::invalid_argument("PolyT::evaluate: point size");
        K acc(0);
        for (const auto& [e, c] : t_) {
            K m = c;
            for (int i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) m *= pt[i];
            acc += m;
        }
        return acc;
    }

    // p(M v): M has nvars() rows; the result lives in M.cols() variables.
    PolyT subst_linear(const Mat<K>& m) const {
        if (m.rows() != nvars_) throw std::invalid_argument("subst_linear: matrix rows != nvars");
        int nv = m.cols();
        std::vector<PolyT> lin(nvars_, PolyT(nv));
        for (int i = 0; i < nvars_; ++i) {
            PolyT li(nv);
            for (int j = 0; j < nv; ++j) {
                if (m.at(i, j).is_zero()) continue;
                Exp e(nv, 0);
                e[j] = 1;
                li.add_term(e, m.at(i, j));
            }
            lin[i] = li;
        }
        // Cache powers of each substituted variable image.
        std::vector<std::vector<PolyT>> pw(nvars_);
        for (int i = 0; i < nvars_; ++i) pw[i].push_back(one(nv));
        auto power = [&](int i, int e) -> const PolyT& {
            auto& v = pw[i];
            while (int(v.size()) <= e) v.push_back(v.back() * lin[i]);
            return v[e];
        };
        PolyT r(nv);
        for (const auto& [e, c] : t_) {
            PolyT m1 = constant(nv, c);
            for (int i = 0; i < nvars_; ++i)
                if (e[i] > 0) m1 = m1 * power(i, e[i]);
            r += m1;
        }
        return r;
    }

    // Exact division; empty result means "not divisible" (that outcome is a
    // regular result, not an error).
    std::optional<PolyT> divexact(const PolyT& d) const {
        check_vars(d);
        if (d.is_zero()) throw std::invalid_argument("divexact: division by zero polynomial");
        PolyT q(nvars_), r = *this;
        const auto& [ed, cd] = *d.t_.begin();
        while (!r.is_zero()) {
            const auto& [er, cr] = *r.t_.begin();
            Exp et(nvars_);
            for (int i = 0; i < nvars_; ++i) {
                et[i] = er[i] - ed[i];
                if (et[i] < 0) return std::nullopt;
            }
            PolyT t = monomial(nvars_, et, cr / cd);
            q += t;
            r -= t * d;
        }
        return q;
    }

    PolyT swap_vars(int i, int j) const {
        std::vector<int> img(nvars_);
        std::iota(img.begin(), img.end(), 0);
        std::swap(img[i], img[j]);
        return remap_vars(nvars_, img);
    }

    // Sends variable i to variable image[i] (image[i] == -1 sets it to zero).
    PolyT remap_vars(int new_nvars, const std::vector<int>& image) const {
        if (int(image.size()) != nvars_) throw std::invalid_argument("remap_vars: image size");
        PolyT r(new_nvars);
        Exp ne(new_nvars);
        for (const auto& [e, c] : t_) {
            std::fill(ne.begin(), ne.end(), 0);
            bool dead = false;
            for (int i = 0; i < nvars_ && !dead; ++i) {
                if (e[i] == 0) continue;
                if (image[i] < 0)
                    dead = true;
                else
                    ne[image[i]] += e[i];
            }
            if (!dead) r.add_term(ne, c);
        }
        return r;
    }

    template <class K2, class F>
    PolyT<K2> map_coeff(F f) const {
        PolyT<K2> r(nvars_);
        for (const auto& [e, c] : t_) r.add_term(e, f(c));
        return r;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (int(names.size()) != nvars_) throw std::invalid_argument("PolyT::str: names size");
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : t_) {
            std::string cs;
            bool neg = false;
            if constexpr (std::is_same_v<K, Rational>) {
                neg = c.sign() < 0;
                cs = (neg ? -c : c).str();
            } else {
                cs = "(" + c.str() + ")";
            }
            if (first) {
                if (neg) os << "-";
                first = false;
            } else {
                os << (neg ? " - " : " + ");
            }
            os << cs;
            bool star = true;
            for (int i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                os << (star ? " * " : " ") << names[i];
                star = false;
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }

    std::string str(const std::string& stem = "u") const {
        std::vector<std::string> names;
        names.reserve(nvars_);
        for (int i = 0; i < nvars_; ++i) names.push_back(stem + std::to_string(i + 1));
        return str(names);
    }

private:
    void check_vars(const PolyT& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("PolyT: nvars mismatch");
    }

    int nvars_;
    TermMap t_;
};

using Poly = PolyT<Rational>;

// ------------------------------------------------------------- module API ---

// Elementary symmetric polynomial of degree k in the n-1 variables u_1..u_{n-1}
// (k = 0 gives 1). Throws outside 0 <= k <= n-1.
Poly elem_sym(int n, int k);

// Same, parameterized directly by the variable count.
Poly elem_sym_vars(int nvars, int k);

inline Poly substitute_linear(const Poly& p, const Mat<Rational>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("substitute_linear: matrix not square");
    return p.subst_linear(m);
}

inline Poly partial_derivative(const Poly& p, int j) { return p.derivative(j); }

inline std::optional<Poly> divexact(const Poly& p, const Poly& q) { return p.divexact(q); }

inline Rational evaluate_exact(const Poly& p, const std::vector<Rational>& pt) {
    return p.evaluate(pt);
}

// gcd of the integer-cleared coefficients, signed by the leading coefficient;
// p == content(p) * primitive(p), primitive having coprime integer
// coefficients with positive leading coefficient.
Rational poly_content(const Poly& p);

template <class K>
PolyT<K> poly_from(const Poly& p) {
    return p.template map_coeff<K>([](const Rational& c) { return K(c); });
}

}  // namespace symdyn

#endif  // SYMDYN_POLY_HPP
