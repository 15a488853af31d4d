#ifndef SYMDYN_GROUP_HPP
#define SYMDYN_GROUP_HPP

// The symmetry group of the map family in its (n-1)-variable coordinates:
// coordinate permutations plus the extra involution T, together generating a
// faithful copy of S_n acting by integer matrices on u = (u_1..u_{n-1}).
// Also: the distinguished fixed points ("special points"), their orbits under
// the group, the invariant hyperplane forms, and the rectangular coordinate
// transforms A, B linking the u-chart to the natural n-variable coordinates.

#include "symdyn/linalg.hpp"
#include "symdyn/poly.hpp"
#include "symdyn/rational.hpp"

#include <string>
#include <vector>

namespace symdyn {

struct GroupElement {
    int n = 0;          // symmetry parameter; matrix is (n-1)x(n-1)
    Mat<Rational> m;    // integer entries

    friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
        if (a.n != b.n) throw std::invalid_argument("GroupElement: mismatched n");
        return {a.n, a.m * b.m};
    }
    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.n == b.n && a.m == b.m;
    }
};

// The involution fixing the permutation subgroup's complement:
// (Tu)_1 = -u_1, (Tu)_j = u_j - u_1 for j >= 2.
GroupElement transposition_T(int n);

// Permutation matrix for sigma on {0..n-2}: maps e_j to e_sigma(j), so
// perm(sigma) * perm(tau) == perm(sigma o tau).
GroupElement perm_element(int n, const std::vector<int>& sigma);

// T followed by the adjacent coordinate swaps; these generate the full group.
std::vector<GroupElement> group_generators(int n);

// A is (n-1) x n with a_ij = [i==j] - [j==n]; B is n x (n-1) with 1-n on the
// leading diagonal, 1 elsewhere, and a final all-ones row.
// They satisfy A*B = -n*I_{n-1} and B*A = ones(n) - n*I_n.
struct CoordTransform {
    Mat<Rational> A;  // (n-1) x n
    Mat<Rational> B;  // n x (n-1)
};
CoordTransform coord_transforms(int n);

// A point of CP^{n-2} with exact coordinates, stored canonically: primitive
// integer vector whose first nonzero entry is positive.
class ProjPointExact {
public:
    ProjPointExact() = default;
    static ProjPointExact from_rationals(const std::vector<Rational>& v);
    static ProjPointExact from_ints(const std::vector<long>& v);

    const std::vector<Integer>& coords() const { return x_; }
    std::vector<Rational> rationals() const;
    int dim() const { return int(x_.size()); }

    ProjPointExact apply(const Mat<Rational>& m) const;

    friend bool operator==(const ProjPointExact& a, const ProjPointExact& b) {
        return a.x_ == b.x_;
    }
    friend bool operator!=(const ProjPointExact& a, const ProjPointExact& b) {
        return !(a == b);
    }
    friend bool operator<(const ProjPointExact& a, const ProjPointExact& b) {
        return a.x_ < b.x_;
    }

    std::string str() const;

private:
    std::vector<Integer> x_;
};

// Table of distinguished fixed points: p_k has k leading ones, q_k has n-k
// leading ones (remaining coordinates zero). For even n the coinciding pair
// p_{n/2} == q_{n/2} is listed once, as kind 'p'.
struct SpecialPoint {
    char kind;  // 'p' or 'q'
    int k;
    ProjPointExact pt;
};
std::vector<SpecialPoint> special_points(int n);

// Predicted orbit size for the orbit through p_k/q_k: C(n,k), except for the
// middle point with even n = 2m where it is C(n,m)/2 = C(n-1,m-1).
Integer predicted_orbit_size(int n, int k);

// Closure of seed under the group generators; sorted canonically.
std::vector<ProjPointExact> orbit(const ProjPointExact& seed, int n);

// The C(n,2) linear forms cutting the invariant hyperplanes:
// u_k (k = 1..n-1) followed by u_k - u_l (k < l).
std::vector<Poly> hyperplane_forms(int n);

}  // namespace symdyn

#endif  // SYMDYN_GROUP_HPP
