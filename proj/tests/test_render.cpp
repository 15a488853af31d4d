// Render layer: preset construction, deterministic grid classification,
// PPM encoding, downsampling, chart symmetries, and the JSON job mirror.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symdyn/render.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace symdyn;

namespace {

// Pixel indices of the pixel containing an affine chart point.
std::pair<int, int> pixel_of(const RenderJob& job, double x, double y) {
    int px = int(std::floor((x - (job.center_x - job.width / 2)) / job.width *
                            job.res_w));
    int py = int(std::floor(((job.center_y + job.height / 2) - y) / job.height *
                            job.res_h));
    px = std::max(0, std::min(job.res_w - 1, px));
    py = std::max(0, std::min(job.res_h - 1, py));
    return {px, py};
}

std::pair<double, double> pixel_center(const RenderJob& job, int px, int py) {
    return {job.center_x + ((px + 0.5) / job.res_w - 0.5) * job.width,
            job.center_y + (0.5 - (py + 0.5) / job.res_h) * job.height};
}

ProjPointFloat line_point(std::complex<double> z) {
    ProjPointFloat p;
    p.c = {z, {1.0, 0.0}};
    p.normalize();
    return p;
}

int nearest_attractor(const std::vector<Attractor>& as,
                      const ProjPointFloat& p) {
    int best = -1;
    double bd = 2.0;
    for (const Attractor& a : as) {
        double d = fs_distance(p, a.pos);
        if (d < bd) {
            bd = d;
            best = a.id;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("presets construct with the documented shapes") {
    CHECK(preset_names().size() == 6);
    for (const std::string& name : preset_names()) {
        RenderJob job = preset(name, 32, 32);
        CAPTURE(name);
        CHECK(job.name == name);
        CHECK(job.res_w == 32);
        CHECK(job.palette.size() == job.attractors.size());
        CHECK_NOTHROW(validate_job(job));
        if (name == "g5RP2" || name == "g6RP2") {
            CHECK(job.chart == ChartKind::real_plane);
            CHECK(job.attractors.size() == 7);
        } else {
            CHECK(job.chart == ChartKind::complex_line);
            CHECK(job.attractors.size() == 3);
        }
    }
    CHECK_THROWS_AS(preset("g7"), std::invalid_argument);

    RenderJob g4 = preset("g4");
    CHECK(g4.n == 3);
    CHECK(g4.center_x == 0.0);
    CHECK(g4.width == 4.0);
    CHECK(g4.height == 4.0);
    // The three cube roots of unity, one orbit.
    for (const Attractor& a : g4.attractors) CHECK(a.orbit == 0);

    RenderJob z1 = preset("g6CP1Z1", 16, 16);
    CHECK(z1.n == 5);
    // Targets 1, 0, -1 belong to three different orbits.
    CHECK(z1.attractors[0].orbit == 0);
    CHECK(z1.attractors[1].orbit == 1);
    CHECK(z1.attractors[2].orbit == 2);
    CHECK(z1.width == doctest::Approx(2.4));

    RenderJob g5 = preset("g5CP1", 16, 16);
    CHECK(g5.n == 4);
    CHECK(g5.attractors[0].orbit == 0);
    CHECK(g5.attractors[1].orbit == 0);
    CHECK(g5.attractors[2].orbit == 1);

    RenderJob rp2 = preset("g5RP2", 16, 16);
    CHECK(rp2.center_x == doctest::Approx(0.25));
    CHECK(rp2.center_y == doctest::Approx(0.0));
    CHECK(rp2.width == doctest::Approx(1.2 * std::sqrt(3.0)));
    int orbit_count[3] = {0, 0, 0};
    for (const Attractor& a : rp2.attractors) ++orbit_count[a.orbit];
    CHECK(orbit_count[0] == 4);
    CHECK(orbit_count[1] == 3);

    RenderJob rp2b = preset("g6RP2", 16, 16);
    int oc[3] = {0, 0, 0};
    for (const Attractor& a : rp2b.attractors) ++oc[a.orbit];
    CHECK(oc[0] == 3);
    CHECK(oc[1] == 3);
    CHECK(oc[2] == 1);
}

TEST_CASE("invalid jobs are rejected before any compute") {
    RenderJob job = preset("g4", 8, 8);
    RenderJob bad = job;
    bad.res_w = 0;
    CHECK_THROWS_AS(validate_job(bad), std::invalid_argument);
    bad = job;
    bad.width = 0.0;
    CHECK_THROWS_AS(validate_job(bad), std::invalid_argument);
    bad = job;
    bad.palette.clear();
    CHECK_THROWS_AS(validate_job(bad), std::invalid_argument);
    bad = job;
    bad.map.dim = 3;
    CHECK_THROWS_AS(validate_job(bad), std::invalid_argument);
    bad = job;
    bad.attractors.clear();
    CHECK_THROWS_AS(validate_job(bad), std::invalid_argument);
    bad = job;
    bad.max_iter = 0;
    CHECK_THROWS_AS(validate_job(bad), std::invalid_argument);
}

TEST_CASE("a one-pixel job centered at an attractor resolves at iteration zero") {
    RenderJob job = preset("g4", 1, 1);
    job.center_x = 1.0;
    job.center_y = 0.0;
    job.width = 0.1;
    job.height = 0.1;
    BasinGrid grid = render(job, 1);
    REQUIRE(grid.cells.size() == 1);
    CHECK(grid.cells[0].status == BasinStatus::resolved);
    CHECK(grid.cells[0].iterations == 0);
    CHECK(grid.label(0, 0) == 0);
}

TEST_CASE("the cubic-roots chart resolves every pixel to one of three labels") {
    RenderJob job = preset("g4", 64, 64);
    BasinGrid grid = render(job, 1);
    for (int py = 0; py < 64; ++py)
        for (int px = 0; px < 64; ++px) {
            int lab = grid.label(px, py);
            REQUIRE(lab >= 0);
            REQUIRE(lab <= 2);
        }
    auto [px, py] = pixel_of(job, 1.0, 0.0);
    CHECK(grid.label(px, py) == 0);
}

TEST_CASE("rendering is byte-identical across runs and thread counts") {
    for (const std::string& name : {std::string("g4"), std::string("g5RP2")}) {
        CAPTURE(name);
        RenderJob job = preset(name, 48, 48);
        std::string once = encode_ppm(render(job, 1));
        std::string again = encode_ppm(render(job, 1));
        std::string threaded3 = encode_ppm(render(job, 3));
        std::string threaded7 = encode_ppm(render(job, 7));
        CHECK(once == again);
        CHECK(once == threaded3);
        CHECK(once == threaded7);
        CHECK(once.substr(0, 2) == "P6");
        CHECK(once.size() == std::string("P6\n48 48\n255\n").size() + 48 * 48 * 3);
    }
}

TEST_CASE("marked attractor pixels carry their own labels in every preset") {
    for (const std::string& name : preset_names()) {
        CAPTURE(name);
        RenderJob job = preset(name, 96, 96);
        BasinGrid grid = render(job);
        int unresolved = 0;
        for (const BasinResult& r : grid.cells)
            if (r.status != BasinStatus::resolved) ++unresolved;
        // No more than 5% of pixels may stay unresolved at the default depth.
        CHECK(unresolved * 20 < 96 * 96);
        for (const Attractor& a : job.attractors) {
            // Affine chart coordinates of the attractor.
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
            CHECK(grid.label(px, py) == a.id);
        }
    }
}

TEST_CASE("an eightfold downsample of a fine render matches a coarse render") {
    RenderJob fine = preset("g4", 512, 512);
    RenderJob coarse = preset("g4", 64, 64);
    std::vector<int> fine_labels = label_grid(render(fine));
    std::vector<int> coarse_labels = label_grid(render(coarse));
    std::vector<int> down = mode_downsample(fine_labels, 512, 512, 8);
    REQUIRE(down.size() == coarse_labels.size());
    int agree = 0;
    for (size_t i = 0; i < down.size(); ++i)
        if (down[i] == coarse_labels[i]) ++agree;
    // Disagreements concentrate on basin boundaries: at least 95% agreement.
    CHECK(agree * 100 >= int(down.size()) * 95);
}

TEST_CASE("mode downsampling picks block majorities with the smallest tie label") {
    //  0  0 | 1  2
    // -1  0 | 2  1   -> majority 0 in the left block, tie 1/2 -> 1 on the right
    std::vector<int> labels = {0, 0, 1, 2, -1, 0, 2, 1};
    std::vector<int> down = mode_downsample(labels, 4, 2, 2);
    REQUIRE(down.size() == 2);
    CHECK(down[0] == 0);
    CHECK(down[1] == 1);
    CHECK_THROWS_AS(mode_downsample(labels, 4, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(mode_downsample(labels, 3, 2, 1), std::invalid_argument);
}

TEST_CASE("cubic-roots labels commute with the one-third rotation of the chart") {
    RenderJob job = preset("g4", 64, 64);
    BasinGrid grid = render(job);
    const std::complex<double> rho(-0.5, std::sqrt(3.0) / 2);
    // Attractor permutation induced by the rotation.
    int sigma[3];
    for (const Attractor& a : job.attractors) {
        std::complex<double> image = (a.pos.c[0] / a.pos.c[1]) * rho;
        sigma[a.id] = nearest_attractor(job.attractors, line_point(image));
    }
    CHECK(sigma[0] == 1);  // 1 -> rho
    CHECK(sigma[1] == 2);  // rho -> rho^2
    CHECK(sigma[2] == 0);  // rho^2 -> 1
    IterateParams params;
    std::mt19937 mt(321);
    std::uniform_int_distribution<int> pick(0, 63);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int px = pick(mt), py = pick(mt);
        int lab = grid.label(px, py);
        if (lab < 0) continue;
        auto [x, y] = pixel_center(job, px, py);
        BasinResult rot = iterate(job.map, line_point(rho * std::complex<double>(x, y)),
                                  job.attractors, params);
        if (rot.status != BasinStatus::resolved) continue;
        CHECK(rot.attractor == sigma[lab]);
        ++checked;
    }
    CHECK(checked >= 450);
}

TEST_CASE("the first line chart's labels are symmetric under negation") {
    RenderJob job = preset("g5CP1", 64, 64);
    BasinGrid grid = render(job);
    // z -> -z swaps the two unit attractors and fixes the origin.
    int sigma[3] = {1, 0, 2};
    IterateParams params;
    std::mt19937 mt(654);
    std::uniform_int_distribution<int> pick(0, 63);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int px = pick(mt), py = pick(mt);
        int lab = grid.label(px, py);
        if (lab < 0) continue;
        auto [x, y] = pixel_center(job, px, py);
        BasinResult neg = iterate(job.map, line_point({-x, -y}), job.attractors,
                                  params);
        if (neg.status != BasinStatus::resolved) continue;
        CHECK(neg.attractor == sigma[lab]);
        ++checked;
    }
    CHECK(checked >= 450);
}

TEST_CASE("jobs mirror to JSON and back without loss") {
    for (const std::string& name : {std::string("g4"), std::string("g6RP2")}) {
        CAPTURE(name);
        RenderJob job = preset(name, 16, 16);
        nlohmann::json j = job_to_json(job);
        // Text round trip, then back into a job.
        nlohmann::json reparsed = nlohmann::json::parse(j.dump());
        CHECK(reparsed == j);
        RenderJob back = job_from_json(reparsed);
        CHECK(back.name == job.name);
        CHECK(back.n == job.n);
        CHECK(back.chart == job.chart);
        CHECK(back.map.dim == job.map.dim);
        REQUIRE(back.map.comp.size() == job.map.comp.size());
        for (size_t i = 0; i < job.map.comp.size(); ++i) {
            REQUIRE(back.map.comp[i].size() == job.map.comp[i].size());
            for (size_t t = 0; t < job.map.comp[i].size(); ++t) {
                CHECK(back.map.comp[i][t].c == job.map.comp[i][t].c);
                CHECK(back.map.comp[i][t].e == job.map.comp[i][t].e);
            }
        }
        REQUIRE(back.attractors.size() == job.attractors.size());
        for (size_t i = 0; i < job.attractors.size(); ++i) {
            CHECK(back.attractors[i].id == job.attractors[i].id);
            CHECK(back.attractors[i].orbit == job.attractors[i].orbit);
            CHECK(back.attractors[i].point == job.attractors[i].point);
            CHECK(back.attractors[i].pos.c == job.attractors[i].pos.c);
        }
        CHECK(back.center_x == job.center_x);
        CHECK(back.width == job.width);
        CHECK(back.res_w == job.res_w);
        CHECK(back.max_iter == job.max_iter);
        CHECK(back.eps_attr == job.eps_attr);
        CHECK(back.palette == job.palette);
        CHECK(back.shading == job.shading);
        CHECK(job_to_json(back) == j);
        // The mirrored job renders the same bytes.
        CHECK(encode_ppm(render(back, 1)) == encode_ppm(render(job, 1)));
    }
    nlohmann::json broken = job_to_json(preset("g4", 8, 8));
    broken["chart"] = "poincare_disk";
    CHECK_THROWS_AS(job_from_json(broken), std::invalid_argument);
}

TEST_CASE("shading darkens slow pixels and leaves attractor pixels bright") {
    RenderJob job = preset("g4", 32, 32);
    BasinGrid grid = render(job, 1);
    std::string shaded = encode_ppm(grid);
    grid.job.shading = Shading::none;
    std::string flat = encode_ppm(grid);
    CHECK(shaded != flat);
    // A pixel resolved at iteration 0 keeps its full base color.
    RenderJob one = preset("g4", 1, 1);
    one.center_x = 1.0;
    one.center_y = 0.0;
    one.width = 0.1;
    one.height = 0.1;
    BasinGrid g1 = render(one, 1);
    std::string bytes = encode_ppm(g1);
    RGB base = one.palette[0];
    CHECK(std::uint8_t(bytes[bytes.size() - 3]) == base.r);
    CHECK(std::uint8_t(bytes[bytes.size() - 2]) == base.g);
    CHECK(std::uint8_t(bytes[bytes.size() - 1]) == base.b);
}
