// Acceptance gate: every shipped guarantee, one pass/fail line each, with
// pinned tolerances. Exit code 0 only when each criterion matches its
// expected state.
//
// Criterion 6 is expected red: the stored one-variable reference display for
// the g6CP1Z1 chart disagrees with the exactly derived restriction. The
// derived map fixes its three marked chart points while the stored reference
// moves two of them, so the reference text itself is the defect (a sign slip
// on its z^5 numerator coefficient). The failure signature is pinned below;
// any deviation from that signature fails the gate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symdyn/charts.hpp"
#include "symdyn/dynamics.hpp"
#include "symdyn/group.hpp"
#include "symdyn/mapfamily.hpp"
#include "symdyn/render.hpp"
#include "symdyn/verify.hpp"

using namespace symdyn;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Mat<Rational> random_word(int n, std::mt19937_64& mt) {
    std::vector<GroupElement> gens = group_generators(n);
    int len = 1 + int(mt() % 6);
    Mat<Rational> m = gens[mt() % gens.size()].m;
    for (int i = 1; i < len; ++i) m = m * gens[mt() % gens.size()].m;
    return m;
}

ProjPointFloat apply_float(const Mat<Rational>& m, const ProjPointFloat& x) {
    ProjPointFloat y;
    y.c.assign(size_t(m.rows()), {0.0, 0.0});
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            y.c[size_t(i)] += m.at(i, j).to_double() * x.c[size_t(j)];
    y.normalize();
    return y;
}

std::pair<int, int> pixel_of(const RenderJob& job, double x, double y) {
    int px = int(std::floor((x - (job.center_x - job.width / 2)) / job.width *
                            job.res_w));
    int py = int(std::floor(((job.center_y + job.height / 2) - y) / job.height *
                            job.res_h));
    px = std::max(0, std::min(job.res_w - 1, px));
    py = std::max(0, std::min(job.res_h - 1, py));
    return {px, py};
}

// 1. The exact identity suite, full parameter ranges, under a minute.
Outcome criterion1() {
    Clock::time_point t0 = Clock::now();
    int count = 0;
    std::string bad;
    auto track = [&](const CheckReport& r) {
        ++count;
        if (!r.pass && bad.empty()) bad = r.name + " n=" + std::to_string(r.n);
    };
    for (int n = 3; n <= 8; ++n) track(check_elem_sym_involution(n));
    track(check_factorial_sum(50));
    track(check_binomial_difference(20));
    for (int n = 3; n <= 10; ++n) track(check_diagonal_values(n));
    double el = seconds_since(t0);
    std::ostringstream d;
    if (!bad.empty()) {
        d << "residual found in " << bad;
        return {false, d.str()};
    }
    d.setf(std::ios::fixed);
    d.precision(2);
    d << "identity suite: " << count
      << " reports, zero residuals (degree lifts n=3..8, sums to 50 and 20, "
         "cofactor values n=3..10), "
      << el << " s";
    return {el < 60.0, d.str()};
}

// 2. Conjugation identity, exactly, plus random group-word residuals.
Outcome criterion2() {
    for (int n = 3; n <= 6; ++n)
        if (!check_equivariance(build_map(n)).pass)
            return {false, "generator conjugation failed for n=" + std::to_string(n)};
    std::mt19937_64 mt(20250825);
    for (int n = 3; n <= 5; ++n) {
        MapFamily f = build_map(n);
        for (int t = 0; t < 20; ++t) {
            Mat<Rational> m = random_word(n, mt);
            for (int i = 0; i < f.nvars; ++i) {
                Poly lhs = f.comp[size_t(i)].subst_linear(m);
                Poly rhs(f.nvars);
                for (int j = 0; j < f.nvars; ++j)
                    rhs = rhs + m.at(i, j) * f.comp[size_t(j)];
                if (!(lhs == rhs))
                    return {false, "word residual nonzero (n=" + std::to_string(n) +
                                       ", word " + std::to_string(t) + ")"};
            }
        }
    }
    return {true,
            "conjugation identity exact for n=3..6; 60 random-word residuals "
            "vanish for n=3..5"};
}

// 3. The critical determinant factors into the mirror equations.
Outcome criterion3() {
    for (int n = 3; n <= 5; ++n) {
        CheckReport r = check_critical_factorization(build_map(n));
        if (!r.pass)
            return {false, "factorization failed for n=" + std::to_string(n)};
        std::string degree = "degree " + std::to_string((n - 1) * n);
        if (r.witness != degree)
            return {false, "determinant degree for n=" + std::to_string(n) +
                               " is '" + r.witness + "', want '" + degree + "'"};
        if (n == 3 && r.lhs != "constant -24")
            return {false, "scale-6 lift constant is '" + r.lhs +
                               "', want 'constant -24'"};
    }
    return {true,
            "determinant = const * prod u_k^2 * prod (u_i-u_j)^2 for n=3..5; "
            "n=3 scale-6 constant -24; degrees 6/12/20"};
}

// 4. Holomorphy certificates, degenerate-rank structure, cofactor values.
Outcome criterion4() {
    for (int n = 3; n <= 6; ++n) {
        MapFamily f = build_map(n);
        if (!check_holomorphy(f).pass)
            return {false, "holomorphy certificate failed for n=" + std::to_string(n)};
        if (!check_distinguished_rank(f).pass)
            return {false, "rank-one structure failed for n=" + std::to_string(n)};
        Poly g1 = symmetric_factor(n, 1);
        for (int m = 1; m <= n - 1; ++m) {
            std::vector<Rational> pm(size_t(n - 1), Rational(0));
            for (int i = 0; i < m; ++i) pm[size_t(i)] = Rational(1);
            int sign = ((m - 1) + n) % 2 == 0 ? 1 : -1;
            Rational expect(Integer(2 * sign), Integer((n + 1) * binom(n, m)));
            if (!(g1.evaluate(pm) == expect))
                return {false, "first cofactor value at the m=" + std::to_string(m) +
                                   " point of n=" + std::to_string(n) +
                                   " misses the closed form"};
        }
    }
    Poly g1 = symmetric_factor(4, 1);
    if (!(g1.evaluate({Rational(1), Rational(0), Rational(0)}) ==
          Rational(Integer(1), Integer(10))) ||
        !(g1.evaluate({Rational(1), Rational(1), Rational(0)}) ==
          Rational(Integer(-1), Integer(15))))
        return {false, "n=4 cofactor samples are not 1/10 and -1/15"};
    return {true,
            "certificates and rank-one collapse for n=3..6; cofactor values "
            "match the signed closed form (n=4: 1/10, -1/15)"};
}

// 5. The functional equation pins the family uniquely.
Outcome criterion5() {
    for (int n = 3; n <= 5; ++n) {
        CheckReport r = check_uniqueness(n);
        if (!r.pass)
            return {false, "uniqueness failed for n=" + std::to_string(n) + ": " +
                               r.witness};
        if (r.witness.find("kernel dimension 1") == std::string::npos)
            return {false, "n=" + std::to_string(n) +
                               " solution space is not one-dimensional: " +
                               r.witness};
    }
    return {true,
            "ansatz solution space is a single ray equal to the built family "
            "for n=3..5 (top coefficient proportional to the codegree-2 "
            "elementary symmetric polynomial)"};
}

// 6. Printed-display reproduction. Expected red: see the file header.
Outcome criterion6() {
    Line1DReport a = check_line_map("g5CP1");
    Line1DReport b = check_line_map("g6CP1Z2");
    Line1DReport c = check_line_map("g6CP1Z1");
    PlanarReport p4 = planar_map_check(4);
    PlanarReport p5 = planar_map_check(5);
    HalleyReport h = halley_check();

    bool others = a.match && a.fixes_marked && b.match && b.fixes_marked &&
                  p4.found && p4.match && p5.found && p5.match &&
                  h.derived_equals_halley && h.reference_is_negated;

    auto at = [](const RationalMap1D& m, long z) {
        return std::make_pair(m.num.evaluate(Rational(z)),
                              m.den.evaluate(Rational(z)));
    };
    auto [dn1, dd1] = at(c.derived, 1);
    auto [dnm1, ddm1] = at(c.derived, -1);
    auto [rn1, rd1] = at(c.reference, 1);
    auto [rnm1, rdm1] = at(c.reference, -1);
    auto [dn2, dd2] = at(c.derived, 2);
    auto [rn2, rd2] = at(c.reference, 2);
    bool z1_pinned =
        !c.match && !c.fixes_marked &&
        c.derived.den.coeffs() == c.reference.den.coeffs() &&
        c.derived.num.coeff(5) == Rational(16) &&
        c.reference.num.coeff(5) == Rational(-16) &&
        dn1 == dd1 &&                      // derived fixes 1
        dnm1 == Rational(-1) * ddm1 &&     // derived fixes -1
        c.derived.num.coeff(0).is_zero() &&  // derived fixes 0
        rn1 * Rational(2) == rd1 &&        // reference sends 1 to 1/2
        rnm1 == Rational(-2) * rdm1 &&     // reference sends -1 to -2
        dn2 * rd2 == Rational(1664) * Rational(Integer(1), Integer(640)) * rn2 * dd2;

    std::string detail =
        "two line charts, both planar displays, and the cubic-chart "
        "identification all reproduce exactly; the g6CP1Z1 reference display "
        "does not: derived fixes {1,0,-1} but the reference (same "
        "denominator, z^5 numerator sign flipped) sends 1 to 1/2 and -1 to "
        "-2, and at z=2 gives 640/1657 against the derived 1664/1657";
    if (!others) detail = "a clause that must reproduce exactly failed";
    if (!z1_pinned && others)
        detail = "the g6CP1Z1 mismatch deviates from its pinned signature";
    // The criterion as stated requires all three line charts to reproduce;
    // the third one cannot, so its line reads FAIL while the gate checks
    // that reality matches the pinned analysis.
    return {others && z1_pinned, detail};
}

// 7. Random-start basin coverage with the documented budget.
Outcome criterion7(bool& threshold_ok) {
    Clock::time_point t0 = Clock::now();
    CoverageStat s3 = coverage_stat(3, 10000, 1);
    CoverageStat s4 = coverage_stat(4, 10000, 1);
    CoverageStat s5 = coverage_stat(5, 1000, 1);
    double el = seconds_since(t0);
    threshold_ok = s3.resolved_fraction >= 0.99 && s4.resolved_fraction >= 0.99;
    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(4);
    d << "resolved fractions: n=3 " << s3.resolved_fraction << ", n=4 "
      << s4.resolved_fraction << " (threshold 0.99); n=5 "
      << s5.resolved_fraction << " (reported, no threshold); ";
    d.precision(1);
    d << el << " s";
    return {threshold_ok && el < 120.0, d.str()};
}

// 8. Basin labels commute with the group action.
Outcome criterion8() {
    for (int n = 3; n <= 5; ++n) {
        FloatMap map = compile_float(build_map(n));
        std::vector<Attractor> as = attractor_points(n);
        std::vector<ProjPointExact> ex = attractor_points_exact(n);
        std::mt19937_64 mt(777 + n);
        std::vector<Mat<Rational>> words;
        for (int t = 0; t < 20; ++t) words.push_back(random_word(n, mt));
        int both = 0, agree = 0;
        for (int t = 0; t < 200; ++t) {
            SplitMix64 rng = sample_stream(4200 + n, std::uint64_t(t));
            ProjPointFloat x = random_proj_point(n - 1, rng);
            const Mat<Rational>& m = words[size_t(t % 20)];
            BasinResult r1 = iterate(map, x, as);
            BasinResult r2 = iterate(map, apply_float(m, x), as);
            if (r1.status != BasinStatus::resolved ||
                r2.status != BasinStatus::resolved)
                continue;
            ++both;
            ProjPointExact expect = ex[size_t(r1.attractor)].apply(m);
            if (expect == ex[size_t(r2.attractor)] &&
                std::abs(r1.iterations - r2.iterations) <= 2)
                ++agree;
        }
        if (both < 180)
            return {false, "n=" + std::to_string(n) + ": only " +
                               std::to_string(both) + "/200 pairs resolved"};
        if (agree != both)
            return {false, "n=" + std::to_string(n) + ": " +
                               std::to_string(both - agree) + " of " +
                               std::to_string(both) +
                               " resolved pairs disagree under the action"};
    }
    return {true,
            "labels transform along 20 group words on 200 points for n=3..5, "
            "iteration counts within +/-2"};
}

// 9. Deterministic rendering of all six presets.
Outcome criterion9() {
    for (const std::string& name : preset_names()) {
        RenderJob job = preset(name);  // 256 x 256
        BasinGrid grid = render(job);
        std::string bytes = encode_ppm(grid);
        if (encode_ppm(render(job)) != bytes)
            return {false, name + ": bytes differ between identical runs"};
        if (encode_ppm(render(job, 1)) != bytes ||
            encode_ppm(render(job, 4)) != bytes)
            return {false, name + ": bytes depend on the thread count"};
        int unresolved = 0;
        for (const BasinResult& r : grid.cells)
            if (r.status != BasinStatus::resolved) ++unresolved;
        if (unresolved * 20 >= job.res_w * job.res_h)
            return {false, name + ": " + std::to_string(unresolved) +
                               " unresolved pixels (>= 5%)"};
        for (const Attractor& a : job.attractors) {
            std::complex<double> last = a.pos.c.back();
            double x, y;
            if (job.chart == ChartKind::complex_line) {
                std::complex<double> z = a.pos.c[0] / last;
                x = z.real();
                y = z.imag();
            } else {
                x = (a.pos.c[0] / last).real();
                y = (a.pos.c[1] / last).real();
            }
            auto [px, py] = pixel_of(job, x, y);
            if (grid.label(px, py) != a.id)
                return {false, name + ": the pixel at attractor " +
                                   std::to_string(a.id) +
                                   " does not carry its own label"};
        }
    }
    return {true,
            "six presets at 256^2: byte-identical across runs and thread "
            "counts, every marked attractor pixel self-labels, < 5% "
            "unresolved at depth 500"};
}

void print_line(int k, bool pass, bool expected_red, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", k,
                expected_red ? "FAIL (expected)" : (pass ? "PASS" : "FAIL"),
                detail.c_str());
}

}  // namespace

int main() {
    int gate_failures = 0;
    auto gate = [&](int k, const Outcome& o, bool expected_red = false) {
        print_line(k, o.pass, expected_red && o.pass, o.detail);
        if (!o.pass) ++gate_failures;
    };

    gate(1, criterion1());
    gate(2, criterion2());
    gate(3, criterion3());
    gate(4, criterion4());
    gate(5, criterion5());
    // Outcome.pass for criterion 6 means: the two reproducible clause groups
    // hold AND the known-red clause fails with its pinned signature.
    gate(6, criterion6(), /*expected_red=*/true);
    bool threshold_ok = false;
    gate(7, criterion7(threshold_ok));
    gate(8, criterion8());
    gate(9, criterion9());

    if (gate_failures == 0) {
        std::printf(
            "summary: 8 criteria pass; criterion 6 is red as expected "
            "(defective stored reference display, signature pinned)\n");
        return 0;
    }
    std::printf("summary: %d criterion gate(s) failed\n", gate_failures);
    return 1;
}
