#include "symdyn/verify.hpp"

#include <chrono>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "symdyn/linalg.hpp"

namespace symdyn {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

// Elementary symmetric polynomial with the convention S_{n,n} == 0.
Poly snk(int n, int k) {
    if (k == n) return Poly::zero(n - 1);
    return elem_sym(n, k);
}

std::string lead_term(const Poly& p) {
    if (p.terms().empty()) return "0";
    std::ostringstream os;
    const auto& [e, c] = *p.terms().begin();
    os << c.str() << " * [";
    for (size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
    os << "]";
    return os.str();
}

CheckReport finish(CheckReport r, const Timer& t) {
    r.elapsed_ms = t.ms();
    return r;
}

void gen_partitions(int s, int maxpart, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (s == 0) {
        out.push_back(cur);
        return;
    }
    for (int a = std::min(s, maxpart); a >= 1; --a) {
        cur.push_back(a);
        gen_partitions(s - a, a, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> partitions(int s) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    gen_partitions(s, s == 0 ? 1 : s, cur, out);
    return out;
}

// Coefficient-matrix rank of a list of polynomials (rows = monomials).
int poly_list_rank(const std::vector<Poly>& ps) {
    std::set<Exp, GradedLexDesc> keys;
    for (const Poly& p : ps)
        for (const auto& [e, c] : p.terms()) keys.insert(e);
    Mat<Rational> m(int(keys.size()), int(ps.size()));
    int row = 0;
    for (const Exp& e : keys) {
        for (size_t i = 0; i < ps.size(); ++i) {
            auto it = ps[i].terms().find(e);
            if (it != ps[i].terms().end()) m.at(row, int(i)) = it->second;
        }
        ++row;
    }
    return rank(m);
}

}  // namespace

CheckReport check_equivariance(const MapFamily& f) {
    Timer t;
    CheckReport r{"equivariance", f.n, true, "", "", "", 0.0};
    auto gens = group_generators(f.n);
    for (size_t gi = 0; gi < gens.size(); ++gi) {
        const Mat<Rational>& M = gens[gi].m;
        for (int i = 0; i < f.nvars; ++i) {
            Poly lhs = f.comp[i].subst_linear(M);
            Poly rhs = Poly::zero(f.nvars);
            for (int j = 0; j < f.nvars; ++j)
                if (!M.at(i, j).is_zero()) rhs = rhs + M.at(i, j) * f.comp[j];
            if (!(lhs == rhs)) {
                r.pass = false;
                std::ostringstream os;
                os << "generator " << gi << ", component " << (i + 1)
                   << ", difference leads with " << lead_term(lhs - rhs);
                r.witness = os.str();
                return finish(r, t);
            }
        }
    }
    std::ostringstream os;
    os << gens.size() << " generators x " << f.nvars << " components";
    r.witness = os.str();
    return finish(r, t);
}

CheckReport check_elem_sym_involution(int n) {
    Timer t;
    CheckReport r{"elementary-involution-expansion", n, true, "", "", "", 0.0};
    Mat<Rational> T = transposition_T(n).m;
    int d = n - 1;
    Poly u1 = Poly::variable(d, 0);
    for (int k = 0; k <= n; ++k) {
        Poly lhs = snk(n, k).subst_linear(T);
        Poly rhs = Poly::zero(d);
        for (int l = 0; l <= k; ++l) {
            Rational c(binomial(n - k + l, n - k));
            if (l % 2) c = -c;
            rhs = rhs + c * (u1.pow(l) * snk(n, k - l));
        }
        if (!(lhs == rhs)) {
            r.pass = false;
            std::ostringstream os;
            os << "k = " << k << ", difference leads with " << lead_term(lhs - rhs);
            r.witness = os.str();
            return finish(r, t);
        }
    }
    r.witness = "k = 0.." + std::to_string(n);
    return finish(r, t);
}

CheckReport check_factorial_sum(int m_max) {
    Timer t;
    CheckReport r{"factorial-sum", m_max, true, "", "", "", 0.0};
    for (int m = 0; m <= m_max; ++m) {
        Rational lhs(0);
        for (int k = 0; k <= m; ++k) {
            Rational term(Integer(k + 1),
                          factorial(unsigned(k + 3)) * factorial(unsigned(m - k)));
            lhs += (k % 2) ? -term : term;
        }
        Rational rhs(Integer(m + 1), factorial(unsigned(m + 3)));
        if (!(lhs == rhs)) {
            r.pass = false;
            r.witness = "m = " + std::to_string(m);
            r.lhs = lhs.str();
            r.rhs = rhs.str();
            return finish(r, t);
        }
    }
    r.witness = "m = 0.." + std::to_string(m_max);
    return finish(r, t);
}

CheckReport check_binomial_difference(int m_max) {
    Timer t;
    CheckReport r{"binomial-difference", m_max, true, "", "", "", 0.0};
    Poly u1 = Poly::variable(2, 0), u2 = Poly::variable(2, 1);
    for (int m = 0; m <= m_max; ++m) {
        Poly lhs = Poly::zero(2);
        for (int k = 0; k <= m; ++k) {
            Rational c = Rational(k + 1, k + 3) * Rational(binomial(m + 2, k + 2));
            lhs = lhs + c * (u1.pow(m - k) * (u2 - u1).pow(k + 3));
        }
        Poly rhs = Rational(m + 1, m + 3) * (u2.pow(m + 3) - u1.pow(m + 3)) -
                   u1 * u2 * (u2.pow(m + 1) - u1.pow(m + 1));
        if (!(lhs == rhs)) {
            r.pass = false;
            r.witness =
                "m = " + std::to_string(m) + ", leads with " + lead_term(lhs - rhs);
            return finish(r, t);
        }
    }
    r.witness = "m = 0.." + std::to_string(m_max);
    return finish(r, t);
}

CheckReport check_diagonal_values(int n) {
    Timer t;
    CheckReport r{"diagonal-cofactor-values", n, true, "", "", "", 0.0};
    Poly g1 = symmetric_factor(n, 1);
    for (int m = 1; m <= n - 1; ++m) {
        Rational lam(0);
        for (int p = 0; p <= m; ++p) {
            Rational term = Rational(n - p - 1, n - p + 1) * Rational(binomial(m, p));
            lam += (p % 2) ? -term : term;
        }
        Rational closed(Integer(2) * ((m % 2) ? Integer(1) : Integer(-1)),
                        Integer(n + 1) * binomial(n, m));
        std::vector<Rational> pm(n - 1, Rational(0));
        for (int i = 0; i < m; ++i) pm[i] = Rational(1);
        Rational val = g1.evaluate(pm);
        Rational expect = (n % 2) ? -lam : lam;
        if (!(lam == closed) || !(val == expect)) {
            r.pass = false;
            r.witness = "m = " + std::to_string(m);
            r.lhs = lam.str() + " / value " + val.str();
            r.rhs = closed.str();
            return finish(r, t);
        }
    }
    r.witness = "m = 1.." + std::to_string(n - 1);
    return finish(r, t);
}

CheckReport check_critical_factorization(const MapFamily& f) {
    if (f.n > 6)
        throw std::invalid_argument(
            "critical-determinant-factorization: exact cofactor expansion is "
            "limited to n <= 6");
    Timer t;
    CheckReport r{"critical-determinant-factorization", f.n, true, "", "", "", 0.0};
    Poly det = jacobian(f).determinant();
    int d = f.nvars;
    Poly divisor = Poly::one(d);
    for (int k = 0; k < d; ++k) {
        Poly uk = Poly::variable(d, k);
        divisor = divisor * uk * uk;
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Poly dd = Poly::variable(d, i) - Poly::variable(d, j);
            divisor = divisor * dd * dd;
        }
    auto q = divexact(det, divisor);
    if (!q || q->total_degree() != 0 || q->terms().empty()) {
        r.pass = false;
        r.witness = q ? ("quotient not a nonzero constant: " + lead_term(*q))
                      : "determinant not divisible by the squared hyperplane product";
        return finish(r, t);
    }
    Rational c = q->terms().begin()->second;
    if (det.total_degree() != (f.n - 1) * f.n) {
        r.pass = false;
        r.witness = "determinant degree " + std::to_string(det.total_degree());
        return finish(r, t);
    }
    r.lhs = "constant " + c.str();
    Rational unscaled = c;
    for (int i = 0; i < d; ++i) unscaled /= Rational(f.scale);
    r.rhs = "unscaled " + unscaled.str();
    r.witness = "degree " + std::to_string(det.total_degree());
    return finish(r, t);
}

CheckReport check_hyperplane_invariance(const MapFamily& f) {
    Timer t;
    CheckReport r{"hyperplane-invariance", f.n, true, "", "", "", 0.0};
    int d = f.nvars;
    for (int k = 0; k < d; ++k) {
        Poly uk = Poly::variable(d, k);
        Poly cube = uk * uk * uk;
        if (!divexact(f.comp[k], cube)) {
            r.pass = false;
            r.witness = "u" + std::to_string(k + 1) + "^3 does not divide g" +
                        std::to_string(k + 1);
            return finish(r, t);
        }
        if (divexact(f.comp[k], cube * uk)) {
            r.pass = false;
            r.witness = "u" + std::to_string(k + 1) + "^4 unexpectedly divides g" +
                        std::to_string(k + 1);
            return finish(r, t);
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Poly dd = Poly::variable(d, i) - Poly::variable(d, j);
            if (!divexact(f.comp[i] - f.comp[j], dd * dd * dd)) {
                r.pass = false;
                r.witness = "(u" + std::to_string(i + 1) + "-u" +
                            std::to_string(j + 1) + ")^3 does not divide g" +
                            std::to_string(i + 1) + "-g" + std::to_string(j + 1);
                return finish(r, t);
            }
        }
    r.witness = std::to_string(d + d * (d - 1) / 2) + " mirror hyperplanes";
    return finish(r, t);
}

CheckReport check_distinguished_rank(const MapFamily& f) {
    Timer t;
    CheckReport r{"distinguished-point-rank", f.n, true, "", "", "", 0.0};
    JacobianMatrix J = jacobian(f);
    for (const SpecialPoint& sp : special_points(f.n)) {
        int m = (sp.kind == 'p') ? sp.k : f.n - sp.k;
        std::vector<Rational> pt = sp.pt.rationals();
        Mat<Rational> M = J.evaluate(pt);
        auto fail = [&](const std::string& what) {
            r.pass = false;
            r.witness = std::string(1, sp.kind) + std::to_string(sp.k) + ": " + what;
        };
        if (rank(M) != 1) {
            fail("rank " + std::to_string(rank(M)));
            return finish(r, t);
        }
        for (int i = 0; i < f.nvars; ++i)
            for (int j = 0; j < f.nvars; ++j) {
                if (i >= m && !M.at(i, j).is_zero()) {
                    fail("expected zero row " + std::to_string(i + 1));
                    return finish(r, t);
                }
                if (i > 0 && i < m && !(M.at(i, j) == M.at(0, j))) {
                    fail("rows differ");
                    return finish(r, t);
                }
            }
        bool row0 = false;
        for (int j = 0; j < f.nvars; ++j) row0 = row0 || !M.at(0, j).is_zero();
        if (!row0) {
            fail("first row zero");
            return finish(r, t);
        }
        // Euler relation at the point.
        std::vector<Rational> Mp = M.apply(pt);
        for (int i = 0; i < f.nvars; ++i)
            if (!(Mp[i] == Rational(f.n + 1) * f.comp[i].evaluate(pt))) {
                fail("Euler relation fails in component " + std::to_string(i + 1));
                return finish(r, t);
            }
    }
    r.witness = std::to_string(special_points(f.n).size()) + " distinguished points";
    return finish(r, t);
}

CheckReport check_first_row_square(const MapFamily& f) {
    Timer t;
    CheckReport r{"first-row-square-divisibility", f.n, true, "", "", "", 0.0};
    Poly u1 = Poly::variable(f.nvars, 0);
    Poly sq = u1 * u1;
    for (int j = 0; j < f.nvars; ++j)
        if (!divexact(partial_derivative(f.comp[0], j), sq)) {
            r.pass = false;
            r.witness = "entry (1," + std::to_string(j + 1) + ")";
            return finish(r, t);
        }
    r.witness = std::to_string(f.nvars) + " entries";
    return finish(r, t);
}

std::vector<SubspaceSpec> invariant_subspaces(int n) {
    std::vector<SubspaceSpec> out;
    int d = n - 1;
    for (int p = 0; p <= d - 1; ++p) {
        int s = d - p;
        for (const auto& part : partitions(s)) {
            bool all_ones = true;
            for (int b : part) all_ones = all_ones && (b == 1);
            if (p == 0 && all_ones) continue;  // the full space
            SubspaceSpec spec;
            for (int z = s; z < d; ++z) spec.zeroed.push_back(z);
            int pos = 0;
            for (int b : part) {
                if (b >= 2) {
                    std::vector<int> cls(b);
                    for (int i = 0; i < b; ++i) cls[i] = pos + i;
                    spec.merged.push_back(cls);
                }
                pos += b;
            }
            out.push_back(spec);
        }
    }
    return out;
}

CheckReport check_holomorphy(const MapFamily& f) {
    Timer t;
    CheckReport r{"holomorphy-certificates", f.n, true, "", "", "", 0.0};
    auto specs = invariant_subspaces(f.n);
    for (const SubspaceSpec& spec : specs) {
        RestrictedMap rm = restrict_map(f, spec);
        std::vector<std::vector<Poly>> jd(rm.nvars, std::vector<Poly>(rm.nvars));
        for (int i = 0; i < rm.nvars; ++i) {
            if (rm.comp[i].terms().empty()) {
                r.pass = false;
                r.witness = "restriction to {" + spec.str() +
                            "} has zero component " + std::to_string(i + 1);
                return finish(r, t);
            }
            for (int j = 0; j < rm.nvars; ++j)
                jd[i][j] = partial_derivative(rm.comp[i], j);
        }
        if (poly_matrix_det(jd).terms().empty()) {
            r.pass = false;
            r.witness =
                "restriction to {" + spec.str() + "} has vanishing Jacobian";
            return finish(r, t);
        }
    }
    int orbit_points = 0;
    for (const SpecialPoint& sp : special_points(f.n))
        for (const ProjPointExact& x : orbit(sp.pt, f.n)) {
            ++orbit_points;
            std::vector<Rational> pt = x.rationals();
            bool nonzero = false;
            for (int i = 0; i < f.nvars && !nonzero; ++i)
                nonzero = !f.comp[i].evaluate(pt).is_zero();
            if (!nonzero) {
                r.pass = false;
                r.witness = "lift vanishes at " + x.str();
                return finish(r, t);
            }
        }
    r.witness = std::to_string(specs.size()) + " subspaces, " +
                std::to_string(orbit_points) + " orbit points";
    return finish(r, t);
}

CheckReport check_uniqueness(int n) {
    if (n < 3 || n > 5)
        throw std::invalid_argument("uniqueness: supported for n = 3, 4, 5");
    Timer t;
    CheckReport r{"uniqueness", n, true, "", "", "", 0.0};
    int d = n - 1;
    Mat<Rational> T = transposition_T(n).m;

    // Unknowns: one coefficient per (l, partition of l), l = 0..n-2.
    struct Unknown {
        int l;
        std::vector<int> part;
        Poly basis;  // product of elementary symmetric polynomials
    };
    std::vector<Unknown> unknowns;
    for (int l = 0; l <= n - 2; ++l) {
        std::vector<Poly> basis_l;
        for (const auto& part : partitions(l)) {
            Poly b = Poly::one(d);
            for (int a : part) b = b * elem_sym(n, a);
            basis_l.push_back(b);
            unknowns.push_back({l, part, b});
        }
        if (poly_list_rank(basis_l) != int(basis_l.size())) {
            r.pass = false;
            r.witness = "dependent basis at degree " + std::to_string(l);
            return finish(r, t);
        }
    }

    // Residuals, one pair of polynomials per unknown (linear in the unknowns):
    //   r1 = h1(u) + h1(Tu)
    //   r2 = h1(u) - h2(u) + h2(Tu)
    Poly u1 = Poly::variable(d, 0);
    std::vector<Poly> r1(unknowns.size()), r2(unknowns.size());
    for (size_t i = 0; i < unknowns.size(); ++i) {
        const Unknown& uk = unknowns[i];
        Poly h1 = u1.pow(3 + n - 2 - uk.l) * uk.basis;
        Poly h2 = h1.swap_vars(0, 1);
        r1[i] = h1 + h1.subst_linear(T);
        r2[i] = h1 - h2 + h2.subst_linear(T);
    }

    // Stack monomial coefficients of both residual blocks into one matrix.
    auto stack_rows = [&](const std::vector<Poly>& rs, std::vector<std::vector<Rational>>& rows) {
        std::set<Exp, GradedLexDesc> keys;
        for (const Poly& p : rs)
            for (const auto& [e, c] : p.terms()) keys.insert(e);
        for (const Exp& e : keys) {
            std::vector<Rational> row(unknowns.size());
            for (size_t i = 0; i < rs.size(); ++i) {
                auto it = rs[i].terms().find(e);
                if (it != rs[i].terms().end()) row[i] = it->second;
            }
            rows.push_back(row);
        }
    };
    std::vector<std::vector<Rational>> rows;
    stack_rows(r1, rows);
    stack_rows(r2, rows);
    Mat<Rational> A(int(rows.size()), int(unknowns.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < unknowns.size(); ++j) A.at(int(i), int(j)) = rows[i][j];

    auto kb = kernel_basis(A);
    if (kb.size() != 1) {
        r.pass = false;
        r.witness = "kernel dimension " + std::to_string(kb.size()) + " (" +
                    std::to_string(unknowns.size()) + " unknowns)";
        return finish(r, t);
    }

    // Normalize so the degree-0 coefficient matches, then compare all.
    auto expected = [&](const Unknown& uk) -> Rational {
        bool single = (uk.l == 0 && uk.part.empty()) ||
                      (uk.part.size() == 1 && uk.part[0] == uk.l);
        if (!single) return Rational(0);
        Rational v(n - 1 - uk.l, n + 1 - uk.l);
        if ((n - 2 - uk.l) % 2) v = -v;
        return v;
    };
    size_t idx0 = 0;
    while (idx0 < unknowns.size() && unknowns[idx0].l != 0) ++idx0;
    if (kb[0][idx0].is_zero()) {
        r.pass = false;
        r.witness = "kernel vector has zero leading coefficient";
        return finish(r, t);
    }
    Rational scale = expected(unknowns[idx0]) / kb[0][idx0];
    for (size_t i = 0; i < unknowns.size(); ++i) {
        Rational got = scale * kb[0][i];
        Rational want = expected(unknowns[i]);
        if (!(got == want)) {
            r.pass = false;
            r.witness = "coefficient " + std::to_string(i);
            r.lhs = got.str();
            r.rhs = want.str();
            return finish(r, t);
        }
    }
    r.witness = std::to_string(unknowns.size()) + " unknowns, kernel dimension 1";
    return finish(r, t);
}

Reports run_all_checks(int n) {
    MapFamily f = build_map(n);
    Reports out;
    out.push_back(check_equivariance(f));
    out.push_back(check_elem_sym_involution(n));
    out.push_back(check_factorial_sum(8));
    out.push_back(check_binomial_difference(8));
    out.push_back(check_diagonal_values(n));
    if (n <= 6) out.push_back(check_critical_factorization(f));
    out.push_back(check_hyperplane_invariance(f));
    out.push_back(check_distinguished_rank(f));
    out.push_back(check_first_row_square(f));
    out.push_back(check_holomorphy(f));
    if (n >= 3 && n <= 5) out.push_back(check_uniqueness(n));
    return out;
}

}  // namespace symdyn
