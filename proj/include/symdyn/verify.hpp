// Exact verification checks for the symmetric map family: equivariance,
// combinatorial identities behind the construction, critical-locus
// factorization, hyperplane invariance, derivative rank at distinguished
// points, holomorphy certificates on invariant subspaces, and uniqueness of
// the equivariant family within its natural ansatz.
#pragma once

#include <string>
#include <vector>

#include "symdyn/group.hpp"
#include "symdyn/mapfamily.hpp"

namespace symdyn {

struct CheckReport {
    std::string name;
    int n = 0;
    bool pass = false;
    std::string witness;  // failure details; empty or informational when passing
    std::string lhs;      // optional rendered values for the decisive comparison
    std::string rhs;
    double elapsed_ms = 0.0;
};

using Reports = std::vector<CheckReport>;

// g(M u) == M g(u) for every group generator, as exact polynomial identities.
CheckReport check_equivariance(const MapFamily& f);

// Expansion of each elementary symmetric polynomial after the involution
// substitution, as a u1-power series with binomial coefficients (k = 0..n).
CheckReport check_elem_sym_involution(int n);

// Scalar identity: sum_{k=0}^m (-1)^k (k+1) / ((k+3)! (m-k)!) == (m+1)/(m+3)!
CheckReport check_factorial_sum(int m_max);

// Two-variable identity: the binomial-weighted sum of u1^{m-k} (u2-u1)^{k+3}
// telescopes to pure powers of u1 and u2.
CheckReport check_binomial_difference(int m_max);

// Values of the first cofactor at the diagonal points (1,..,1,0,..,0):
// alternating-sum form equals the closed form 2(-1)^{m-1} / ((n+1) C(n,m)).
CheckReport check_diagonal_values(int n);

// det Dg == c * prod u_k^2 * prod (u_i - u_j)^2 with c a nonzero constant.
// Exact cofactor expansion; refuses n > 6 (throws std::invalid_argument).
CheckReport check_critical_factorization(const MapFamily& f);

// u_k^3 divides g_k (sharp: u_k^4 does not), and (u_i - u_j)^3 divides
// g_i - g_j, so every mirror hyperplane is invariant with cubic ramification.
CheckReport check_hyperplane_invariance(const MapFamily& f);

// At each distinguished point the Jacobian matrix has rank exactly one, with
// the predicted zero rows and equal nonzero rows, and satisfies the Euler
// relation Dg(p) p == (n+1) g(p).
CheckReport check_distinguished_rank(const MapFamily& f);

// Every entry of the first Jacobian row is divisible by u1^2.
CheckReport check_first_row_square(const MapFamily& f);

// Certificates that the map restricts nondegenerately to every invariant
// subspace in normal form, and that the lift never vanishes on the
// distinguished orbits.
CheckReport check_holomorphy(const MapFamily& f);

// Within the ansatz h_k = u_k^3 sum_l u_k^{n-2-l} V_l, with V_l drawn from
// products of elementary symmetric polynomials, the equivariance constraints
// have a one-dimensional solution space spanned by the constructed family.
CheckReport check_uniqueness(int n);

// Enumerate the invariant linear subspaces in normal form (zeroed
// coordinates last, merged classes as consecutive leading blocks),
// excluding the full space itself.
std::vector<SubspaceSpec> invariant_subspaces(int n);

// All checks applicable to a given n (identity checks use m_max = 8).
Reports run_all_checks(int n);

}  // namespace symdyn
