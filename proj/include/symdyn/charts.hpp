// Chart extraction: conjugates the map family (or its restriction to an
// invariant line / plane) into normalized picture coordinates via exact
// projective frames, and compares the result against stored reference
// displays. Also derives the one-dimensional case's identification with
// Halley's root-finding iteration.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "symdyn/linalg.hpp"
#include "symdyn/mapfamily.hpp"
#include "symdyn/poly1.hpp"
#include "symdyn/quadext.hpp"

namespace symdyn {

// Matrix sending the standard projective frame e_1, .., e_d, e_1+..+e_d to
// the given d+1 points (each of dimension d, in general position).
// Throws std::domain_error if the points are degenerate.
template <typename K>
Mat<K> frame_transform(const std::vector<std::vector<K>>& pts) {
    int d = int(pts.size()) - 1;
    if (d < 1) throw std::invalid_argument("frame_transform: too few points");
    for (const auto& p : pts)
        if (int(p.size()) != d)
            throw std::invalid_argument("frame_transform: dimension mismatch");
    Mat<K> B(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) B.at(i, j) = pts[j][i];
    std::vector<K> alpha = inverse(B).apply(pts[d]);
    for (const K& a : alpha)
        if (a == K(0)) throw std::domain_error("frame_transform: degenerate frame");
    Mat<K> F(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) F.at(i, j) = alpha[j] * pts[j][i];
    return F;
}

// Unique projective transform sending one (d+1)-point frame to another.
template <typename K>
Mat<K> projective_transform(const std::vector<std::vector<K>>& src,
                            const std::vector<std::vector<K>>& dst) {
    return frame_transform(dst) * inverse(frame_transform(src));
}

// True when a and b are the same projective point (proportional vectors).
template <typename K>
bool proj_equal(const std::vector<K>& a, const std::vector<K>& b) {
    if (a.size() != b.size()) return false;
    bool nza = false, nzb = false;
    for (size_t i = 0; i < a.size(); ++i) {
        nza = nza || !(a[i] == K(0));
        nzb = nzb || !(b[i] == K(0));
        for (size_t j = i + 1; j < a.size(); ++j)
            if (!(a[i] * b[j] == a[j] * b[i])) return false;
    }
    return nza && nzb;
}

// --------------------------------------------------------- 1D line charts ---

// An invariant line of some family together with three marked points
// (in restricted coordinates) and their normalized chart positions.
struct LineChartSpec {
    std::string name;  // "g5CP1", "g6CP1Z2", "g6CP1Z1"
    int n = 0;
    SubspaceSpec line;                          // must leave two classes
    std::vector<std::vector<Rational>> marked;  // three points, 2 coords each
    std::vector<Rational> targets;              // three finite chart values
};

// The three named invariant-line charts.
LineChartSpec line_chart(const std::string& name);
std::vector<std::string> line_chart_names();

// Conjugate the restricted family into the chart and dehomogenize.
RationalMap1D restricted_1d_map(const LineChartSpec& spec);

// The stored reference display for a named line chart.
RationalMap1D reference_1d_map(const std::string& name);

struct Line1DReport {
    std::string name;
    bool match = false;      // derived == reference, coefficient for coefficient
    bool fixes_marked = true;  // reference map fixes the three chart targets
    RationalMap1D derived;
    RationalMap1D reference;
    std::string detail;
};

Line1DReport check_line_map(const std::string& name);

// ------------------------------------------------------ Halley comparison ---

struct HalleyReport {
    bool derived_equals_halley = false;   // chart map == Halley step for z^3 - 1
    bool reference_is_negated = false;    // stored display == conjugate by z -> -z
    RationalMap1D derived;
    RationalMap1D halley;
    RationalMap1D reference;
    std::string detail;
};

// Conjugates the two-variable family (n = 3) to the chart whose three-point
// orbit sits at the cube roots of unity and compares with Halley's method.
HalleyReport halley_check();

// ---------------------------------------------------------- planar charts ---

struct PlanarReport {
    int n = 0;
    bool found = false;    // some marked-point assignment gives a projective map
    bool match = false;    // conjugated map == reference display up to one scalar
    Mat<QSqrt3> transform;          // ambient coordinates -> picture coordinates
    std::vector<Poly> derived;      // affine (x, y) polynomials: x', y', denom
    std::vector<Poly> reference;    // the stored display in the same order
    Rational scalar;                // derived == scalar * reference
    std::string detail;
};

// Conjugate the planar family (n = 4: the whole plane; n = 5: the invariant
// hyperplane u4 = 0) into normalized picture coordinates and compare with the
// stored reference display.
PlanarReport planar_map_check(int n);

// Picture-coordinate positions of the superattracting points for the planar
// case, grouped with their orbit labels (used by the renderer).
struct PlanarAttractor {
    QSqrt3 x, y;
    int orbit = 0;  // 0-based orbit index
};
std::vector<PlanarAttractor> planar_attractors(int n);

// Homogenize a two-variable polynomial to the given total degree by a third
// variable (used to rebuild the projective form of an affine display).
Poly homogenize_display(const Poly& affine, int degree);

}  // namespace symdyn
