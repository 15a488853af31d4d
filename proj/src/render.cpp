#include "symdyn/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "symdyn/charts.hpp"

namespace symdyn {

namespace {

// Homogenize a one-variable rational map to the matching pair of binary
// forms, the projective representative used for unit-norm iteration.
std::vector<Poly> homogenize_line_map(const RationalMap1D& m) {
    int d = std::max(m.num.degree(), m.den.degree());
    Poly num(2), den(2);
    for (int k = 0; k <= m.num.degree(); ++k)
        if (!m.num.coeff(k).is_zero()) num.add_term({k, d - k}, m.num.coeff(k));
    for (int k = 0; k <= m.den.degree(); ++k)
        if (!m.den.coeff(k).is_zero()) den.add_term({k, d - k}, m.den.coeff(k));
    return {num, den};
}

ProjPointFloat chart_point_1d(double re, double im) {
    ProjPointFloat p;
    p.c = {{re, im}, {1.0, 0.0}};
    p.normalize();
    return p;
}

ProjPointFloat chart_point_2d(double x, double y) {
    ProjPointFloat p;
    p.c = {{x, 0.0}, {y, 0.0}, {1.0, 0.0}};
    p.normalize();
    return p;
}

// Attractors of a line chart: chart targets with orbit labels deduced from
// the number of nonzero coordinates of the lifted ambient point.
std::vector<Attractor> line_chart_attractors(const LineChartSpec& spec) {
    RestrictedMap r = restrict_map(build_map(spec.n), spec.line);
    std::vector<Attractor> out;
    std::vector<int> orbit_counts(spec.n, 0);
    for (size_t i = 0; i < spec.marked.size(); ++i) {
        std::vector<Rational> u = r.embed.apply(spec.marked[i]);
        int nz = 0;
        for (const Rational& v : u)
            if (!v.is_zero()) ++nz;
        Attractor a;
        a.id = int(i);
        a.orbit = nz - 1;
        a.point = orbit_counts[a.orbit]++;
        a.pos = chart_point_1d(spec.targets[i].to_double(), 0.0);
        out.push_back(a);
    }
    return out;
}

// Square window framing the attractor positions in affine chart
// coordinates, with a 20% margin on the larger extent.
void frame_window(RenderJob& job,
                  const std::vector<std::pair<double, double>>& pts) {
    double x0 = pts[0].first, x1 = pts[0].first;
    double y0 = pts[0].second, y1 = pts[0].second;
    for (const auto& [x, y] : pts) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    double side = 1.2 * std::max(x1 - x0, y1 - y0);
    job.center_x = (x0 + x1) / 2;
    job.center_y = (y0 + y1) / 2;
    job.width = side;
    job.height = side;
}

const char* chart_name(ChartKind k) {
    return k == ChartKind::complex_line ? "complex_line" : "real_plane";
}

const char* shading_name(Shading s) {
    return s == Shading::none ? "none" : "by_iteration_count";
}

}  // namespace

void validate_job(const RenderJob& job) {
    if (job.res_w <= 0 || job.res_h <= 0)
        throw std::invalid_argument("render job: resolution must be positive");
    if (!(job.width > 0.0) || !(job.height > 0.0))
        throw std::invalid_argument("render job: window must be non-degenerate");
    int dim = job.chart == ChartKind::complex_line ? 2 : 3;
    if (job.map.dim != dim || job.map.comp.size() != size_t(dim))
        throw std::invalid_argument("render job: map dimension does not match chart");
    if (job.attractors.empty())
        throw std::invalid_argument("render job: no attractors");
    for (const Attractor& a : job.attractors) {
        if (a.pos.c.size() != size_t(dim))
            throw std::invalid_argument("render job: attractor dimension mismatch");
        if (a.id < 0 || size_t(a.id) >= job.palette.size())
            throw std::invalid_argument("render job: palette does not cover attractors");
    }
    if (job.max_iter <= 0 || !(job.eps_attr > 0.0))
        throw std::invalid_argument("render job: iteration parameters invalid");
}

std::vector<RGB> default_palette(std::size_t count) {
    static const std::vector<RGB> base = {
        {230, 25, 75},   {60, 180, 75},  {0, 130, 200},  {255, 225, 25},
        {145, 30, 180},  {245, 130, 48}, {70, 240, 240}, {240, 50, 230},
        {210, 245, 60},  {0, 128, 128},  {170, 110, 40}, {128, 128, 0},
    };
    std::vector<RGB> out;
    for (std::size_t i = 0; i < count; ++i) {
        RGB c = base[i % base.size()];
        // Darken on each wrap so large palettes stay distinguishable.
        for (std::size_t wrap = 0; wrap < i / base.size(); ++wrap) {
            c.r = std::uint8_t(c.r * 3 / 5);
            c.g = std::uint8_t(c.g * 3 / 5);
            c.b = std::uint8_t(c.b * 3 / 5);
        }
        out.push_back(c);
    }
    return out;
}

std::vector<std::string> preset_names() {
    return {"g4", "g5RP2", "g5CP1", "g6RP2", "g6CP1Z2", "g6CP1Z1"};
}

RenderJob preset(const std::string& name, int res_w, int res_h) {
    RenderJob job;
    job.name = name;
    job.res_w = res_w;
    job.res_h = res_h;

    if (name == "g4") {
        job.n = 3;
        job.chart = ChartKind::complex_line;
        job.map = compile_float(homogenize_line_map(halley_check().derived));
        double s = std::sqrt(3.0) / 2;
        const std::pair<double, double> roots[3] = {
            {1.0, 0.0}, {-0.5, s}, {-0.5, -s}};
        for (int i = 0; i < 3; ++i) {
            Attractor a;
            a.id = i;
            a.orbit = 0;
            a.point = i;
            a.pos = chart_point_1d(roots[i].first, roots[i].second);
            job.attractors.push_back(a);
        }
        job.center_x = 0.0;
        job.center_y = 0.0;
        job.width = 4.0;
        job.height = 4.0;
    } else if (name == "g5CP1" || name == "g6CP1Z2" || name == "g6CP1Z1") {
        LineChartSpec spec = line_chart(name);
        job.n = spec.n;
        job.chart = ChartKind::complex_line;
        job.map = compile_float(homogenize_line_map(restricted_1d_map(spec)));
        job.attractors = line_chart_attractors(spec);
        std::vector<std::pair<double, double>> pts;
        for (const Rational& t : spec.targets) pts.push_back({t.to_double(), 0.0});
        frame_window(job, pts);
    } else if (name == "g5RP2" || name == "g6RP2") {
        job.n = name == "g5RP2" ? 4 : 5;
        job.chart = ChartKind::real_plane;
        PlanarReport rep = planar_map_check(job.n);
        if (!rep.found)
            throw std::runtime_error("preset: planar chart derivation failed");
        int degree = job.n + 1;
        std::vector<Poly> comps;
        for (const Poly& p : rep.derived)
            comps.push_back(homogenize_display(p, degree));
        job.map = compile_float(comps);
        std::vector<std::pair<double, double>> pts;
        std::vector<int> orbit_counts(job.n, 0);
        int id = 0;
        for (const PlanarAttractor& pa : planar_attractors(job.n)) {
            double x = pa.x.to_complex().real();
            double y = pa.y.to_complex().real();
            Attractor a;
            a.id = id++;
            a.orbit = pa.orbit;
            a.point = orbit_counts[pa.orbit]++;
            a.pos = chart_point_2d(x, y);
            job.attractors.push_back(a);
            pts.push_back({x, y});
        }
        frame_window(job, pts);
    } else {
        throw std::invalid_argument("preset: unknown name '" + name + "'");
    }

    job.palette = default_palette(job.attractors.size());
    validate_job(job);
    return job;
}

int BasinGrid::label(int px, int py) const {
    const BasinResult& r = cells[size_t(py) * job.res_w + px];
    return r.status == BasinStatus::resolved ? r.attractor : -1;
}

BasinGrid render(const RenderJob& job, int threads) {
    validate_job(job);
    BasinGrid grid;
    grid.job = job;
    grid.cells.assign(size_t(job.res_w) * job.res_h, BasinResult{});

    IterateParams params;
    params.max_iter = job.max_iter;
    params.eps = job.eps_attr;

    auto run_rows = [&](int row0, int row1) {
        for (int py = row0; py < row1; ++py) {
            double cy = job.center_y + (0.5 - (py + 0.5) / job.res_h) * job.height;
            for (int px = 0; px < job.res_w; ++px) {
                double cx =
                    job.center_x + ((px + 0.5) / job.res_w - 0.5) * job.width;
                ProjPointFloat start = job.chart == ChartKind::complex_line
                                           ? chart_point_1d(cx, cy)
                                           : chart_point_2d(cx, cy);
                grid.cells[size_t(py) * job.res_w + px] =
                    iterate(job.map, start, job.attractors, params);
            }
        }
    };

    int nthreads = std::min(resolve_threads(threads), job.res_h);
    if (nthreads <= 1) {
        run_rows(0, job.res_h);
        return grid;
    }
    std::vector<std::thread> pool;
    int base = job.res_h / nthreads, extra = job.res_h % nthreads;
    int row = 0;
    for (int t = 0; t < nthreads; ++t) {
        int count = base + (t < extra ? 1 : 0);
        pool.emplace_back(run_rows, row, row + count);
        row += count;
    }
    for (std::thread& th : pool) th.join();
    return grid;
}

std::string encode_ppm(const BasinGrid& grid) {
    const RenderJob& job = grid.job;
    std::string out = "P6\n" + std::to_string(job.res_w) + " " +
                      std::to_string(job.res_h) + "\n255\n";
    out.reserve(out.size() + grid.cells.size() * 3);
    for (const BasinResult& r : grid.cells) {
        RGB c = job.unresolved_color;
        if (r.status == BasinStatus::resolved) {
            c = job.palette[size_t(r.attractor)];
            if (job.shading == Shading::by_iteration_count) {
                double f = 0.55 + 0.45 * std::exp(-r.iterations / 40.0);
                c.r = std::uint8_t(std::lround(c.r * f));
                c.g = std::uint8_t(std::lround(c.g * f));
                c.b = std::uint8_t(std::lround(c.b * f));
            }
        }
        out.push_back(char(c.r));
        out.push_back(char(c.g));
        out.push_back(char(c.b));
    }
    return out;
}

void write_ppm(const BasinGrid& grid, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::string bytes = encode_ppm(grid);
    f.write(bytes.data(), std::streamsize(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::vector<int> label_grid(const BasinGrid& grid) {
    std::vector<int> out;
    out.reserve(grid.cells.size());
    for (const BasinResult& r : grid.cells)
        out.push_back(r.status == BasinStatus::resolved ? r.attractor : -1);
    return out;
}

std::vector<int> mode_downsample(const std::vector<int>& labels, int w, int h,
                                 int factor) {
    if (factor <= 0 || w % factor != 0 || h % factor != 0)
        throw std::invalid_argument("mode_downsample: factor must divide both sizes");
    if (labels.size() != size_t(w) * h)
        throw std::invalid_argument("mode_downsample: label count mismatch");
    int ow = w / factor, oh = h / factor;
    std::vector<int> out(size_t(ow) * oh, -1);
    for (int by = 0; by < oh; ++by)
        for (int bx = 0; bx < ow; ++bx) {
            std::map<int, int> counts;
            for (int dy = 0; dy < factor; ++dy)
                for (int dx = 0; dx < factor; ++dx)
                    ++counts[labels[size_t(by * factor + dy) * w + bx * factor + dx]];
            int best = -1, best_count = -1;
            for (const auto& [lab, cnt] : counts)
                if (cnt > best_count) {  // std::map iterates labels ascending
                    best = lab;
                    best_count = cnt;
                }
            out[size_t(by) * ow + bx] = best;
        }
    return out;
}

// ------------------------------------------------------------------- JSON ---

nlohmann::json job_to_json(const RenderJob& job) {
    nlohmann::json j;
    j["name"] = job.name;
    j["n"] = job.n;
    j["chart"] = chart_name(job.chart);
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& comp : job.map.comp) {
        nlohmann::json terms = nlohmann::json::array();
        for (const FloatTerm& t : comp)
            terms.push_back({{"c", {t.c.real(), t.c.imag()}}, {"e", t.e}});
        comps.push_back(terms);
    }
    j["map"] = {{"dim", job.map.dim}, {"comp", comps}};
    nlohmann::json attrs = nlohmann::json::array();
    for (const Attractor& a : job.attractors) {
        nlohmann::json pos = nlohmann::json::array();
        for (const auto& z : a.pos.c) pos.push_back({z.real(), z.imag()});
        attrs.push_back({{"id", a.id},
                         {"orbit", a.orbit},
                         {"point", a.point},
                         {"pos", pos}});
    }
    j["attractors"] = attrs;
    j["window"] = {{"center", {job.center_x, job.center_y}},
                   {"width", job.width},
                   {"height", job.height}};
    j["resolution"] = {job.res_w, job.res_h};
    j["max_iter"] = job.max_iter;
    j["eps_attr"] = job.eps_attr;
    nlohmann::json pal = nlohmann::json::array();
    for (const RGB& c : job.palette) pal.push_back({c.r, c.g, c.b});
    j["palette"] = pal;
    j["unresolved_color"] = {job.unresolved_color.r, job.unresolved_color.g,
                             job.unresolved_color.b};
    j["shading"] = shading_name(job.shading);
    return j;
}

RenderJob job_from_json(const nlohmann::json& j) {
    RenderJob job;
    job.name = j.at("name").get<std::string>();
    job.n = j.at("n").get<int>();
    std::string chart = j.at("chart").get<std::string>();
    if (chart == "complex_line")
        job.chart = ChartKind::complex_line;
    else if (chart == "real_plane")
        job.chart = ChartKind::real_plane;
    else
        throw std::invalid_argument("render job: unknown chart kind '" + chart + "'");
    const nlohmann::json& m = j.at("map");
    job.map.dim = m.at("dim").get<int>();
    for (const auto& comp : m.at("comp")) {
        std::vector<FloatTerm> terms;
        for (const auto& t : comp) {
            FloatTerm ft;
            ft.c = {t.at("c").at(0).get<double>(), t.at("c").at(1).get<double>()};
            ft.e = t.at("e").get<std::vector<int>>();
            terms.push_back(ft);
        }
        job.map.comp.push_back(terms);
    }
    for (const auto& a : j.at("attractors")) {
        Attractor at;
        at.id = a.at("id").get<int>();
        at.orbit = a.at("orbit").get<int>();
        at.point = a.at("point").get<int>();
        for (const auto& z : a.at("pos"))
            at.pos.c.push_back({z.at(0).get<double>(), z.at(1).get<double>()});
        job.attractors.push_back(at);
    }
    const nlohmann::json& w = j.at("window");
    job.center_x = w.at("center").at(0).get<double>();
    job.center_y = w.at("center").at(1).get<double>();
    job.width = w.at("width").get<double>();
    job.height = w.at("height").get<double>();
    job.res_w = j.at("resolution").at(0).get<int>();
    job.res_h = j.at("resolution").at(1).get<int>();
    job.max_iter = j.at("max_iter").get<int>();
    job.eps_attr = j.at("eps_attr").get<double>();
    for (const auto& c : j.at("palette"))
        job.palette.push_back({c.at(0).get<std::uint8_t>(),
                               c.at(1).get<std::uint8_t>(),
                               c.at(2).get<std::uint8_t>()});
    const nlohmann::json& u = j.at("unresolved_color");
    job.unresolved_color = {u.at(0).get<std::uint8_t>(),
                            u.at(1).get<std::uint8_t>(),
                            u.at(2).get<std::uint8_t>()};
    std::string shading = j.at("shading").get<std::string>();
    if (shading == "none")
        job.shading = Shading::none;
    else if (shading == "by_iteration_count")
        job.shading = Shading::by_iteration_count;
    else
        throw std::invalid_argument("render job: unknown shading '" + shading + "'");
    validate_job(job);
    return job;
}

}  // namespace symdyn
