#ifndef SYMDYN_MAPFAMILY_HPP
#define SYMDYN_MAPFAMILY_HPP

// Construction of the symmetric critically finite map family itself.
//
// Component l of the degree-(n+1) homogeneous map is u_l^3 * G_l where
//   G_l = sum_{k=0}^{n-2} (-1)^k (k+1)/(k+3) * u_l^k * S_{n, n-2-k}
// and S_{n,j} is the elementary symmetric polynomial of degree j in all n-1
// variables. Components are stored as an integer lift: every component is
// multiplied by `scale`, the lcm of the reduced coefficient denominators
// (6 for n=3, 30 for n=4, ...), so all stored coefficients are integers.

#include "symdyn/linalg.hpp"
#include "symdyn/poly.hpp"

#include <complex>
#include <string>
#include <vector>

namespace symdyn {

struct MapFamily {
    int n = 0;        // symmetry parameter; map acts on CP^{n-2}
    int nvars = 0;    // n - 1
    Integer scale;    // integer lift factor
    std::vector<Poly> comp;  // scaled components, integer coefficients

    // Rational-normalized component: comp[i] / scale.
    Poly unscaled(int i) const { return Rational(Integer(1), scale) * comp[i]; }
};

// The symmetric cofactor G_l (exact rational coefficients, unscaled).
// l is 1-based, matching the coordinate names u1..u_{n-1}.
Poly symmetric_factor(int n, int l);

MapFamily build_map(int n);

struct JacobianMatrix {
    int nvars = 0;
    std::vector<std::vector<Poly>> d;  // d[i][j] = d comp_i / d u_j

    Poly determinant() const;
    Mat<Rational> evaluate(const std::vector<Rational>& pt) const;
};

JacobianMatrix jacobian(const MapFamily& f);

// Determinant of a square polynomial matrix by cofactor expansion.
Poly poly_matrix_det(const std::vector<std::vector<Poly>>& m);

// An invariant linear subspace in normal form: some coordinates zeroed, some
// merged into equality classes. Unlisted coordinates stay as singletons.
struct SubspaceSpec {
    std::vector<int> zeroed;               // 0-based coordinate indices
    std::vector<std::vector<int>> merged;  // disjoint classes of 0-based indices

    std::string str() const;
};

struct RestrictedMap {
    int n = 0;
    int nvars = 0;            // number of surviving coordinate classes
    SubspaceSpec spec;
    std::vector<int> reps;    // representative original coordinate per class
    std::vector<Poly> comp;   // one component per class, in class coordinates
    Mat<Rational> embed;      // (n-1) x nvars: lifts a class point to u-space
};

RestrictedMap restrict_map(const MapFamily& f, const SubspaceSpec& spec);

// ------------------------------------------------------------ float layer ---

struct FloatTerm {
    std::complex<double> c;
    std::vector<int> e;
};

// A compiled homogeneous polynomial self-map for double-precision dynamics.
struct FloatMap {
    int dim = 0;
    std::vector<std::vector<FloatTerm>> comp;

    void eval(const std::complex<double>* in, std::complex<double>* out) const;
    std::vector<std::complex<double>> eval(const std::vector<std::complex<double>>& in) const;
};

FloatMap compile_float(const MapFamily& f);
FloatMap compile_float(const RestrictedMap& r);
FloatMap compile_float(const std::vector<Poly>& comps);

}  // namespace symdyn

#endif  // SYMDYN_MAPFAMILY_HPP
