#include "symdyn/mapfamily.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <set>
#include <sstream>

namespace symdyn {

Poly symmetric_factor(int n, int l) {
    if (n < 3) throw std::invalid_argument("symmetric_factor: need n >= 3");
    if (l < 1 || l > n - 1) throw std::invalid_argument("symmetric_factor: component index");
    int d = n - 1;
    Poly g(d);
    for (int k = 0; k <= n - 2; ++k) {
        Rational c(k + 1, k + 3);
        if (k % 2) c = -c;
        Poly term = c * (Poly::variable(d, l - 1).pow(k) * elem_sym(n, n - 2 - k));
        g += term;
    }
    return g;
}

MapFamily build_map(int n) {
    if (n < 3) throw std::invalid_argument("build_map: need n >= 3");
    int d = n - 1;
    Integer scale(1);
    for (int k = 0; k <= n - 2; ++k) scale = lcm(scale, Rational(k + 1, k + 3).den());

    MapFamily f;
    f.n = n;
    f.nvars = d;
    f.scale = scale;
    Poly first = Rational(scale) * (Poly::variable(d, 0).pow(3) * symmetric_factor(n, 1));
    f.comp.reserve(d);
    f.comp.push_back(first);
    for (int l = 1; l < d; ++l) f.comp.push_back(first.swap_vars(0, l));
    return f;
}

JacobianMatrix jacobian(const MapFamily& f) {
    JacobianMatrix j;
    j.nvars = f.nvars;
    j.d.resize(f.nvars, std::vector<Poly>(f.nvars, Poly(f.nvars)));
    for (int i = 0; i < f.nvars; ++i)
        for (int k = 0; k < f.nvars; ++k) j.d[i][k] = f.comp[i].derivative(k);
    return j;
}

namespace {

Poly det_rec(const std::vector<std::vector<Poly>>& m, std::vector<int>& cols, int row) {
    int nv = m[0][0].nvars();
    if (cols.size() == 1) return m[row][cols[0]];
    Poly acc(nv);
    for (size_t i = 0; i < cols.size(); ++i) {
        const Poly& entry = m[row][cols[i]];
        if (entry.is_zero()) continue;
        int c = cols[i];
        cols.erase(cols.begin() + i);
        Poly sub = det_rec(m, cols, row + 1);
        cols.insert(cols.begin() + i, c);
        Poly contrib = entry * sub;
        if (i % 2)
            acc -= contrib;
        else
            acc += contrib;
    }
    return acc;
}

}  // namespace

Poly poly_matrix_det(const std::vector<std::vector<Poly>>& m) {
    if (m.empty()) throw std::invalid_argument("poly_matrix_det: empty");
    for (const auto& row : m)
        if (row.size() != m.size()) throw std::invalid_argument("poly_matrix_det: not square");
    std::vector<int> cols(m.size());
    for (size_t i = 0; i < cols.size(); ++i) cols[i] = int(i);
    return det_rec(m, cols, 0);
}

Poly JacobianMatrix::determinant() const { return poly_matrix_det(d); }

Mat<Rational> JacobianMatrix::evaluate(const std::vector<Rational>& pt) const {
    Mat<Rational> m(nvars, nvars);
    for (int i = 0; i < nvars; ++i)
        for (int j = 0; j < nvars; ++j) m.at(i, j) = d[i][j].evaluate(pt);
    return m;
}

std::string SubspaceSpec::str() const {
    std::ostringstream os;
    bool any = false;
    for (int z : zeroed) {
        os << (any ? ", " : "") << "u" << z + 1 << "=0";
        any = true;
    }
    for (const auto& cls : merged) {
        os << (any ? ", " : "");
        for (size_t i = 0; i < cls.size(); ++i) os << (i ? "=" : "") << "u" << cls[i] + 1;
        any = true;
    }
    return any ? os.str() : "(full space)";
}

RestrictedMap restrict_map(const MapFamily& f, const SubspaceSpec& spec) {
    int d = f.nvars;
    std::vector<int> cls(d, -2);  // -2 unassigned, -1 zeroed, >=0 class id
    for (int z : spec.zeroed) {
        if (z < 0 || z >= d || cls[z] != -2)
            throw std::invalid_argument("restrict_map: bad zeroed index");
        cls[z] = -1;
    }
    // Deterministic class order: by smallest member, merged or singleton alike.
    std::vector<std::vector<int>> classes;
    for (const auto& m : spec.merged) {
        if (m.empty()) throw std::invalid_argument("restrict_map: empty merge class");
        for (int i : m)
            if (i < 0 || i >= d || cls[i] != -2)
                throw std::invalid_argument("restrict_map: bad merge index");
        auto sorted = m;
        std::sort(sorted.begin(), sorted.end());
        for (int i : sorted) cls[i] = -3;  // mark, classes numbered below
        classes.push_back(sorted);
    }
    for (int i = 0; i < d; ++i)
        if (cls[i] == -2) classes.push_back({i});
    std::sort(classes.begin(), classes.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    if (classes.empty()) throw std::invalid_argument("restrict_map: no surviving coordinates");

    RestrictedMap r;
    r.n = f.n;
    r.nvars = int(classes.size());
    r.spec = spec;
    std::vector<int> image(d, -1);
    for (int c = 0; c < r.nvars; ++c) {
        r.reps.push_back(classes[c].front());
        for (int i : classes[c]) image[i] = c;
    }
    r.embed = Mat<Rational>(d, r.nvars);
    for (int i = 0; i < d; ++i)
        if (image[i] >= 0) r.embed.at(i, image[i]) = Rational(1);
    for (int c = 0; c < r.nvars; ++c)
        r.comp.push_back(f.comp[r.reps[c]].remap_vars(r.nvars, image));
    return r;
}

// ------------------------------------------------------------ float layer ---

namespace {

std::vector<FloatTerm> compile_component(const Poly& p) {
    std::vector<FloatTerm> terms;
    terms.reserve(p.term_count());
    for (const auto& [e, c] : p.terms())
        terms.push_back({std::complex<double>(c.to_double(), 0.0), e});
    return terms;
}

}  // namespace

FloatMap compile_float(const std::vector<Poly>& comps) {
    FloatMap m;
    m.dim = int(comps.size());
    for (const auto& p : comps) {
        if (p.nvars() != m.dim)
            throw std::invalid_argument("compile_float: component variable count != dim");
        m.comp.push_back(compile_component(p));
    }
    return m;
}

FloatMap compile_float(const MapFamily& f) { return compile_float(f.comp); }
FloatMap compile_float(const RestrictedMap& r) { return compile_float(r.comp); }

void FloatMap::eval(const std::complex<double>* in, std::complex<double>* out) const {
    // Power tables: pw[i][k] = in[i]^k, degrees here never exceed 15.
    std::array<std::array<std::complex<double>, 16>, 12> pw;
    assert(dim <= 12);
    for (int i = 0; i < dim; ++i) {
        pw[i][0] = 1.0;
        pw[i][1] = in[i];
    }
    std::array<int, 12> have;
    have.fill(1);
    for (int c = 0; c < dim; ++c) {
        std::complex<double> acc(0.0, 0.0);
        for (const auto& t : comp[c]) {
            std::complex<double> m = t.c;
            for (int i = 0; i < dim; ++i) {
                int e = t.e[i];
                if (e == 0) continue;
                while (have[i] < e) {
                    pw[i][have[i] + 1] = pw[i][have[i]] * pw[i][1];
                    ++have[i];
                }
                m *= pw[i][e];
            }
            acc += m;
        }
        out[c] = acc;
    }
}

std::vector<std::complex<double>> FloatMap::eval(
    const std::vector<std::complex<double>>& in) const {
    if (int(in.size()) != dim) throw std::invalid_argument("FloatMap::eval: size");
    std::vector<std::complex<double>> out(dim);
    eval(in.data(), out.data());
    return out;
}

}  // namespace symdyn
