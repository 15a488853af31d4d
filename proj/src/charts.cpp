#include "symdyn/charts.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace symdyn {

namespace {

// Coefficient of z^k after substituting the second variable = 1 in a
// two-variable polynomial.
Poly1<Rational> dehomogenize(const Poly& p) {
    std::vector<Rational> coeffs;
    for (const auto& [e, c] : p.terms()) {
        if (int(coeffs.size()) <= e[0]) coeffs.resize(e[0] + 1);
        coeffs[e[0]] += c;
    }
    return Poly1<Rational>::from_coeffs(coeffs);
}

template <typename K>
PolyT<K> dehomogenize_last(const PolyT<K>& p) {
    // Substitute 1 for the last variable, keeping the others.
    PolyT<K> out(p.nvars() - 1);
    for (const auto& [e, c] : p.terms()) {
        Exp ne(e.begin(), e.end() - 1);
        out.add_term(ne, c);
    }
    return out;
}

template <typename K>
std::vector<PolyT<K>> conjugate_by(const std::vector<PolyT<K>>& comps,
                                   const Mat<K>& M) {
    Mat<K> N = inverse(M);
    int d = int(comps.size());
    std::vector<PolyT<K>> inner(d), out(d, PolyT<K>(comps[0].nvars()));
    for (int i = 0; i < d; ++i) inner[i] = comps[i].subst_linear(N);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (!(M.at(i, j) == K(0))) out[i] = out[i] + M.at(i, j) * inner[j];
    return out;
}

Poly1<Rational> negate_var(const Poly1<Rational>& p) {
    std::vector<Rational> c(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i)
        c[i] = (i % 2) ? -p.coeff(i) : p.coeff(i);
    return Poly1<Rational>::from_coeffs(c);
}

RationalMap1D make_map(std::vector<Rational> num, std::vector<Rational> den) {
    Map1<Rational> m;
    m.num = Poly1<Rational>::from_coeffs(num);
    m.den = Poly1<Rational>::from_coeffs(den);
    return RationalMap1D::normalized(m);
}

// Evaluate a one-variable rational map at a finite point; false if the
// denominator vanishes there.
bool fixes(const RationalMap1D& m, const Rational& z) {
    Rational nv = m.num.evaluate(z), dv = m.den.evaluate(z);
    if (dv.is_zero()) return false;
    return nv == z * dv;
}

Poly display_poly(int nv, std::initializer_list<std::array<long, 3>> rows) {
    Poly p = Poly::zero(nv);
    for (const auto& r : rows) p.add_term({int(r[1]), int(r[2])}, Rational(r[0]));
    return p;
}

const QSqrt3 R3 = QSqrt3::generator();

std::vector<std::vector<QSqrt3>> planar_vertex_targets(int n) {
    // Points as projective triples [x, y, 1] with denominators cleared.
    std::vector<std::vector<QSqrt3>> v = {
        {QSqrt3(1), QSqrt3(0), QSqrt3(1)},     // (1, 0)
        {QSqrt3(-1), R3, QSqrt3(2)},           // (-1/2,  sqrt3/2)
        {QSqrt3(-1), -R3, QSqrt3(2)}};         // (-1/2, -sqrt3/2)
    if (n == 4) v.insert(v.begin(), {QSqrt3(0), QSqrt3(0), QSqrt3(1)});  // (0,0)
    return v;
}

std::vector<std::vector<QSqrt3>> planar_face_targets() {
    return {{QSqrt3(-1), QSqrt3(0), QSqrt3(2)},  // (-1/2, 0)
            {QSqrt3(1), R3, QSqrt3(4)},          // ( 1/4,  sqrt3/4)
            {QSqrt3(1), -R3, QSqrt3(4)}};        // ( 1/4, -sqrt3/4)
}

std::vector<Poly> planar_reference(int n) {
    if (n == 4)
        return {display_poly(2, {{45, 4, 0},
                                 {36, 5, 0},
                                 {-90, 2, 2},
                                 {-15, 0, 4},
                                 {60, 1, 4}}),
                display_poly(2, {{-120, 1, 3}, {120, 2, 3}, {24, 0, 5}}),
                display_poly(2, {{1, 0, 0},
                                 {-10, 2, 0},
                                 {20, 3, 0},
                                 {30, 4, 0},
                                 {40, 5, 0},
                                 {-10, 0, 2},
                                 {-60, 1, 2},
                                 {60, 2, 2},
                                 {-80, 3, 2},
                                 {30, 0, 4},
                                 {-120, 1, 4}})};
    if (n == 5)
        return {display_poly(2, {{135, 4, 0},
                                 {216, 5, 0},
                                 {135, 6, 0},
                                 {-270, 2, 2},
                                 {-135, 4, 2},
                                 {-45, 0, 4},
                                 {360, 1, 4},
                                 {-315, 2, 4},
                                 {-45, 0, 6}}),
                display_poly(2, {{-360, 1, 3},
                                 {720, 2, 3},
                                 {-360, 3, 3},
                                 {144, 0, 5},
                                 {-360, 1, 5}}),
                display_poly(2, {{1, 0, 0},
                                 {-15, 2, 0},
                                 {40, 3, 0},
                                 {90, 4, 0},
                                 {240, 5, 0},
                                 {130, 6, 0},
                                 {-15, 0, 2},
                                 {-120, 1, 2},
                                 {180, 2, 2},
                                 {-480, 3, 2},
                                 {30, 4, 2},
                                 {90, 0, 4},
                                 {-720, 1, 4},
                                 {630, 2, 4},
                                 {90, 0, 6}})};
    throw std::invalid_argument("planar reference display: n must be 4 or 5");
}

// The planar family to conjugate: the whole plane map for n = 4, the
// restriction to the invariant hyperplane u4 = 0 for n = 5.
std::vector<Poly> planar_components(int n) {
    MapFamily f = build_map(n);
    if (n == 4) return f.comp;
    if (n == 5) {
        SubspaceSpec spec;
        spec.zeroed = {3};
        return restrict_map(f, spec).comp;
    }
    throw std::invalid_argument("planar components: n must be 4 or 5");
}

std::vector<std::vector<QSqrt3>> planar_vertex_sources(int n) {
    std::vector<std::vector<QSqrt3>> v = {
        {QSqrt3(1), QSqrt3(0), QSqrt3(0)},
        {QSqrt3(0), QSqrt3(1), QSqrt3(0)},
        {QSqrt3(0), QSqrt3(0), QSqrt3(1)}};
    v.push_back({QSqrt3(1), QSqrt3(1), QSqrt3(1)});  // n=4: in the vertex orbit;
    (void)n;                                         // n=5: the central point
    return v;
}

std::vector<std::vector<QSqrt3>> planar_face_sources() {
    return {{QSqrt3(1), QSqrt3(1), QSqrt3(0)},
            {QSqrt3(1), QSqrt3(0), QSqrt3(1)},
            {QSqrt3(0), QSqrt3(1), QSqrt3(1)}};
}

}  // namespace

// --------------------------------------------------------- 1D line charts ---

LineChartSpec line_chart(const std::string& name) {
    LineChartSpec s;
    s.name = name;
    if (name == "g5CP1") {
        s.n = 4;
        s.line.zeroed = {2};
        s.marked = {{Rational(1), Rational(0)},
                    {Rational(0), Rational(1)},
                    {Rational(1), Rational(1)}};
        s.targets = {Rational(1), Rational(-1), Rational(0)};
        return s;
    }
    if (name == "g6CP1Z2") {
        s.n = 5;
        s.line.zeroed = {2, 3};
        s.marked = {{Rational(1), Rational(0)},
                    {Rational(0), Rational(1)},
                    {Rational(1), Rational(1)}};
        s.targets = {Rational(1), Rational(-1), Rational(0)};
        return s;
    }
    if (name == "g6CP1Z1") {
        s.n = 5;
        s.line.zeroed = {3};
        s.line.merged = {{1, 2}};
        s.marked = {{Rational(1), Rational(0)},
                    {Rational(0), Rational(1)},
                    {Rational(1), Rational(1)}};
        s.targets = {Rational(1), Rational(0), Rational(-1)};
        return s;
    }
    throw std::invalid_argument("unknown line chart: " + name);
}

std::vector<std::string> line_chart_names() {
    return {"g5CP1", "g6CP1Z2", "g6CP1Z1"};
}

RationalMap1D restricted_1d_map(const LineChartSpec& spec) {
    MapFamily f = build_map(spec.n);
    RestrictedMap r = restrict_map(f, spec.line);
    if (r.nvars != 2)
        throw std::invalid_argument("restricted_1d_map: not a line restriction");
    std::vector<std::vector<Rational>> src = spec.marked, dst;
    for (const Rational& t : spec.targets) dst.push_back({t, Rational(1)});
    Mat<Rational> M = projective_transform(src, dst);
    std::vector<Poly> F = conjugate_by(r.comp, M);
    Map1<Rational> m;
    m.num = dehomogenize(F[0]);
    m.den = dehomogenize(F[1]);
    return RationalMap1D::normalized(m);
}

RationalMap1D reference_1d_map(const std::string& name) {
    if (name == "g5CP1")
        return make_map({Rational(0), Rational(0), Rational(0), Rational(20),
                         Rational(0), Rational(4)},
                        {Rational(-1), Rational(0), Rational(10), Rational(0),
                         Rational(15)});
    if (name == "g6CP1Z2")
        return make_map({Rational(0), Rational(0), Rational(0), Rational(40),
                         Rational(0), Rational(24)},
                        {Rational(-1), Rational(0), Rational(15), Rational(0),
                         Rational(45), Rational(0), Rational(5)});
    if (name == "g6CP1Z1")
        return make_map({Rational(0), Rational(0), Rational(0), Rational(0),
                         Rational(40), Rational(-16), Rational(8)},
                        {Rational(1), Rational(-2), Rational(-5), Rational(20),
                         Rational(15), Rational(30), Rational(5)});
    throw std::invalid_argument("unknown line chart: " + name);
}

Line1DReport check_line_map(const std::string& name) {
    Line1DReport rep;
    rep.name = name;
    LineChartSpec spec = line_chart(name);
    rep.derived = restricted_1d_map(spec);
    rep.reference = reference_1d_map(name);
    rep.match = (rep.derived == rep.reference);
    rep.fixes_marked = true;
    for (const Rational& t : spec.targets)
        rep.fixes_marked = rep.fixes_marked && fixes(rep.reference, t);
    std::ostringstream os;
    if (rep.match) {
        os << "derived map equals the reference display";
    } else {
        os << "derived " << rep.derived.str() << " differs from reference "
           << rep.reference.str() << ";";
        for (const Rational& t : spec.targets) {
            os << " reference " << (fixes(rep.reference, t) ? "fixes " : "moves ")
               << t.str() << ";";
            if (!fixes(rep.reference, t)) {
                Rational dv = rep.reference.den.evaluate(t);
                if (!dv.is_zero())
                    os << " value " << (rep.reference.num.evaluate(t) / dv).str()
                       << ";";
            }
        }
        Rational z2(2);
        Rational d1 = rep.derived.den.evaluate(z2), d2 = rep.reference.den.evaluate(z2);
        if (!d1.is_zero() && !d2.is_zero())
            os << " at z=2: derived " << (rep.derived.num.evaluate(z2) / d1).str()
               << " vs reference " << (rep.reference.num.evaluate(z2) / d2).str();
    }
    rep.detail = os.str();
    return rep;
}

// ------------------------------------------------------ Halley comparison ---

HalleyReport halley_check() {
    HalleyReport rep;

    // Chart sending the three-point orbit to the cube roots of unity.
    MapFamily f = build_map(3);
    QOmega w = QOmega::generator();
    std::vector<std::vector<QOmega>> src = {{QOmega(1), QOmega(0)},
                                            {QOmega(0), QOmega(1)},
                                            {QOmega(1), QOmega(1)}};
    std::vector<std::vector<QOmega>> dst = {
        {QOmega(1), QOmega(1)}, {w, QOmega(1)}, {w * w, QOmega(1)}};
    Mat<QOmega> M = projective_transform(src, dst);
    std::vector<PolyT<QOmega>> comps = {poly_from<QOmega>(f.comp[0]),
                                        poly_from<QOmega>(f.comp[1])};
    std::vector<PolyT<QOmega>> F = conjugate_by(comps, M);

    bool rational = true;
    Map1<Rational> dm;
    std::vector<Rational> nc, dc;
    for (int which = 0; which < 2; ++which) {
        const PolyT<QOmega>& p = F[which];
        std::vector<Rational>& out = (which == 0) ? nc : dc;
        for (const auto& [e, c] : p.terms()) {
            rational = rational && c.is_rational();
            if (int(out.size()) <= e[0]) out.resize(e[0] + 1);
            if (c.is_rational()) out[e[0]] += c.a;
        }
    }
    if (!rational) {
        rep.detail = "conjugated map has irrational coefficients";
        return rep;
    }
    dm.num = Poly1<Rational>::from_coeffs(nc);
    dm.den = Poly1<Rational>::from_coeffs(dc);
    rep.derived = RationalMap1D::normalized(dm);

    // Halley's step for z^3 - 1:  z - 2 f f' / (2 f'^2 - f f'').
    Poly1<Rational> z = Poly1<Rational>::z();
    Poly1<Rational> fz = z * z * z - Poly1<Rational>::constant(Rational(1));
    Poly1<Rational> f1 = fz.derivative(), f2 = f1.derivative();
    Poly1<Rational> hden = Rational(2) * (f1 * f1) - fz * f2;
    Poly1<Rational> hnum = z * hden - Rational(2) * (fz * f1);
    Map1<Rational> hm;
    hm.num = hnum;
    hm.den = hden;
    rep.halley = RationalMap1D::normalized(hm);
    rep.derived_equals_halley = (rep.derived == rep.halley);

    // Stored display: z (z^3 - 2) / (2 z^3 - 1).
    rep.reference = make_map(
        {Rational(0), Rational(-2), Rational(0), Rational(0), Rational(1)},
        {Rational(-1), Rational(0), Rational(0), Rational(2)});
    Map1<Rational> conj;
    conj.num = -negate_var(rep.halley.num);
    conj.den = negate_var(rep.halley.den);
    rep.reference_is_negated =
        (RationalMap1D::normalized(conj) == rep.reference);

    std::ostringstream os;
    os << "derived chart map " << rep.derived.str()
       << (rep.derived_equals_halley ? " equals" : " differs from")
       << " the Halley step " << rep.halley.str() << "; reference display "
       << rep.reference.str()
       << (rep.reference_is_negated ? " is" : " is not")
       << " its conjugate by z -> -z";
    rep.detail = os.str();
    return rep;
}

// ---------------------------------------------------------- planar charts ---

PlanarReport planar_map_check(int n) {
    PlanarReport rep;
    rep.n = n;
    rep.reference = planar_reference(n);
    std::vector<Poly> comps = planar_components(n);
    std::vector<PolyT<QSqrt3>> qcomps;
    for (const Poly& c : comps) qcomps.push_back(poly_from<QSqrt3>(c));

    std::vector<std::vector<QSqrt3>> sources = planar_vertex_sources(n);
    std::vector<std::vector<QSqrt3>> vt = planar_vertex_targets(n);
    std::vector<std::vector<QSqrt3>> fs = planar_face_sources();
    std::vector<std::vector<QSqrt3>> ft = planar_face_targets();

    // For n = 4 the whole 4-point vertex orbit is permuted; for n = 5 the
    // central point is pinned to the origin and only the 3 vertices permute.
    int permute = (n == 4) ? 4 : 3;
    std::vector<int> idx(permute);
    for (int i = 0; i < permute; ++i) idx[i] = i;

    std::sort(idx.begin(), idx.end());
    do {
        std::vector<std::vector<QSqrt3>> dst;
        if (n == 4) {
            for (int i = 0; i < 4; ++i) dst.push_back(vt[idx[i]]);
        } else {
            for (int i = 0; i < 3; ++i) dst.push_back(vt[idx[i]]);
            dst.push_back({QSqrt3(0), QSqrt3(0), QSqrt3(1)});  // center pinned
        }
        Mat<QSqrt3> M(3, 3);
        try {
            M = projective_transform(sources, dst);
        } catch (const std::domain_error&) {
            continue;
        }
        bool faces_ok = true;
        for (const auto& s : fs) {
            std::vector<QSqrt3> img = M.apply(s);
            bool hit = false;
            for (const auto& t : ft) hit = hit || proj_equal(img, t);
            faces_ok = faces_ok && hit;
        }
        if (!faces_ok) continue;
        rep.found = true;

        std::vector<PolyT<QSqrt3>> F = conjugate_by(qcomps, M);
        std::vector<Poly> aff;
        bool rational = true;
        for (const auto& Fi : F) {
            PolyT<QSqrt3> a = dehomogenize_last(Fi);
            Poly p(2);
            for (const auto& [e, c] : a.terms()) {
                rational = rational && c.is_rational();
                if (c.is_rational()) p.add_term(e, c.a);
            }
            aff.push_back(p);
        }
        if (!rational) continue;

        // One common scalar: fixed by the denominators' leading terms.
        const Poly& D = rep.reference[2];
        Exp lead = D.terms().begin()->first;
        auto it = aff[2].terms().find(lead);
        if (it == aff[2].terms().end()) continue;
        Rational c = it->second / D.terms().begin()->second;
        if (aff[0] == c * rep.reference[0] && aff[1] == c * rep.reference[1] &&
            aff[2] == c * D) {
            rep.match = true;
            rep.transform = M;
            rep.derived = aff;
            rep.scalar = c;
            std::ostringstream os;
            os << "display reproduced with common scalar " << c.str();
            rep.detail = os.str();
            return rep;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));

    rep.detail = rep.found
                     ? "marked points align but no assignment reproduces the display"
                     : "no marked-point assignment gives a projective transform";
    return rep;
}

std::vector<PlanarAttractor> planar_attractors(int n) {
    std::vector<PlanarAttractor> out;
    Rational h(1, 2), q(1, 4);
    QSqrt3 s32 = Rational(1, 2) * R3, s34 = Rational(1, 4) * R3;
    if (n == 4) {
        out.push_back({QSqrt3(0), QSqrt3(0), 0});
        out.push_back({QSqrt3(1), QSqrt3(0), 0});
        out.push_back({QSqrt3(-h), s32, 0});
        out.push_back({QSqrt3(-h), -s32, 0});
        out.push_back({QSqrt3(-h), QSqrt3(0), 1});
        out.push_back({QSqrt3(q), s34, 1});
        out.push_back({QSqrt3(q), -s34, 1});
        return out;
    }
    if (n == 5) {
        out.push_back({QSqrt3(1), QSqrt3(0), 0});
        out.push_back({QSqrt3(-h), s32, 0});
        out.push_back({QSqrt3(-h), -s32, 0});
        out.push_back({QSqrt3(-h), QSqrt3(0), 1});
        out.push_back({QSqrt3(q), s34, 1});
        out.push_back({QSqrt3(q), -s34, 1});
        out.push_back({QSqrt3(0), QSqrt3(0), 2});
        return out;
    }
    throw std::invalid_argument("planar attractors: n must be 4 or 5");
}

Poly homogenize_display(const Poly& affine, int degree) {
    Poly out(3);
    for (const auto& [e, c] : affine.terms()) {
        int rem = degree - e[0] - e[1];
        if (rem < 0)
            throw std::invalid_argument("homogenize_display: degree too small");
        out.add_term({e[0], e[1], rem}, c);
    }
    return out;
}

}  // namespace symdyn
