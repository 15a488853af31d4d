// Grid-sampled basin images over one-dimensional complex charts and
// two-dimensional real slices, with presets for the family's distinguished
// invariant lines and planes. Rendering is deterministic: identical jobs
// produce byte-identical PPM files regardless of the thread count.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdyn/dynamics.hpp"

namespace symdyn {

struct RGB {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const RGB& x, const RGB& y) {
        return x.r == y.r && x.g == y.g && x.b == y.b;
    }
};

enum class ChartKind { complex_line, real_plane };
enum class Shading { none, by_iteration_count };

// A self-contained description of one image: the chart-coordinate map, the
// attractor list in the same coordinates, the window, and the styling.
struct RenderJob {
    std::string name;  // preset name, or free-form for custom jobs
    int n = 0;
    ChartKind chart = ChartKind::complex_line;
    FloatMap map;                       // dim 2 (complex line) or 3 (real plane)
    std::vector<Attractor> attractors;  // positions in chart coordinates
    double center_x = 0.0, center_y = 0.0;  // window center (chart coords)
    double width = 0.0, height = 0.0;       // window extents
    int res_w = 0, res_h = 0;               // image size in pixels
    int max_iter = 500;
    double eps_attr = 1e-8;
    std::vector<RGB> palette;  // one entry per attractor id
    RGB unresolved_color{0, 0, 0};
    Shading shading = Shading::by_iteration_count;
};

// Throws std::invalid_argument when the job cannot be rendered (empty
// resolution, degenerate window, palette not covering the attractors, or a
// map dimension that does not fit the chart kind).
void validate_job(const RenderJob& job);

// Evenly spread distinct colors; used by presets and custom jobs alike.
std::vector<RGB> default_palette(std::size_t count);

// The six named figure charts.
std::vector<std::string> preset_names();
RenderJob preset(const std::string& name, int res_w = 256, int res_h = 256);

struct BasinGrid {
    RenderJob job;                  // echo of the rendered job
    std::vector<BasinResult> cells; // row-major, job.res_w * job.res_h

    // Attractor id of a resolved pixel, -1 otherwise.
    int label(int px, int py) const;
};

// Classify the chart point at every pixel center. threads = 0 resolves to
// SYMDYN_THREADS or the hardware concurrency; the result is identical for
// every thread count.
BasinGrid render(const RenderJob& job, int threads = 0);

// Binary PPM (P6, 8-bit) encoding of the grid.
std::string encode_ppm(const BasinGrid& grid);
void write_ppm(const BasinGrid& grid, const std::string& path);

// Per-pixel labels (attractor id, -1 unresolved) in row-major order.
std::vector<int> label_grid(const BasinGrid& grid);

// Most frequent label in each factor x factor block (ties: smallest label).
// Width and height must be divisible by the factor.
std::vector<int> mode_downsample(const std::vector<int>& labels, int w, int h,
                                 int factor);

// Verbatim JSON mirror of the job fields; round-trips exactly.
nlohmann::json job_to_json(const RenderJob& job);
RenderJob job_from_json(const nlohmann::json& j);

}  // namespace symdyn
