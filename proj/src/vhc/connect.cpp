#include "vhc/connect.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "vhc/error.hpp"
#include "vhc/morphology.hpp"
#include "vhc/otsu.hpp"
#include "vhc/pnm.hpp"
#include "vhc/resample.hpp"

namespace vhc {

void VhConfig::validate() const {
    if (se_size < 1) throw InvalidInputError("VhConfig: se_size must be at least 1");
    if (scales.empty()) throw InvalidInputError("VhConfig: scales must not be empty");
    for (double s : scales) {
        if (!(s > 0.0) || s > 1.0) throw InvalidInputError("VhConfig: scales must lie in (0, 1]");
    }
    if (kernel_lengths.empty()) throw InvalidInputError("VhConfig: kernel_lengths must not be empty");
    for (int l : kernel_lengths) {
        if (l < 2) throw InvalidInputError("VhConfig: kernel lengths must be at least 2");
    }
    if (fill_ratio_p < 0.0 || fill_ratio_p > 1.0) {
        throw InvalidInputError("VhConfig: fill_ratio_p must lie in [0, 1]");
    }
    if (max_side < 1) throw InvalidInputError("VhConfig: max_side must be at least 1");
}

std::vector<ConnectedStructure> connected_components(const BinaryImage& binary) {
    const int w = binary.width();
    const int h = binary.height();
    const std::uint8_t* px = binary.pixels().data();

    std::vector<std::uint8_t> visited(static_cast<std::size_t>(w) * h, 0);
    std::vector<std::int32_t> stack;
    std::vector<ConnectedStructure> out;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t idx = static_cast<std::size_t>(y) * w + x;
            if (px[idx] == 0 || visited[idx]) continue;

            visited[idx] = 1;
            stack.clear();
            stack.push_back(static_cast<std::int32_t>(idx));
            std::int64_t count = 0;
            int min_x = x, max_x = x, min_y = y, max_y = y;

            while (!stack.empty()) {
                const std::int32_t cur = stack.back();
                stack.pop_back();
                const int cx = cur % w;
                const int cy = cur / w;
                ++count;
                min_x = std::min(min_x, cx);
                max_x = std::max(max_x, cx);
                min_y = std::min(min_y, cy);
                max_y = std::max(max_y, cy);

                const int ny0 = std::max(0, cy - 1), ny1 = std::min(h - 1, cy + 1);
                const int nx0 = std::max(0, cx - 1), nx1 = std::min(w - 1, cx + 1);
                for (int ny = ny0; ny <= ny1; ++ny) {
                    for (int nx = nx0; nx <= nx1; ++nx) {
                        const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
                        if (px[nidx] && !visited[nidx]) {
                            visited[nidx] = 1;
                            stack.push_back(static_cast<std::int32_t>(nidx));
                        }
                    }
                }
            }
            out.push_back(ConnectedStructure{count, BoundingBox{min_x, min_y, max_x + 1, max_y + 1}});
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const ConnectedStructure& a, const ConnectedStructure& b) {
        return std::tie(a.bbox.y_min, a.bbox.x_min) < std::tie(b.bbox.y_min, b.bbox.x_min);
    });
    return out;
}

std::vector<ConnectedStructure> filter_structures(const std::vector<ConnectedStructure>& structures,
                                                  double p) {
    if (p < 0.0 || p > 1.0) throw InvalidInputError("filter_structures: p must lie in [0, 1]");
    std::vector<ConnectedStructure> out;
    out.reserve(structures.size());
    for (const auto& s : structures) {
        if (static_cast<double>(s.pixel_count) > p * static_cast<double>(s.bbox.area())) {
            out.push_back(s);
        }
    }
    return out;
}

namespace {

struct Candidate {
    BoundingBox box;            // original-image coordinates
    std::int64_t pixel_count;   // level-frame structure pixels
    std::int64_t struct_area;   // level-frame bounding-box area
};

// Descending fill ratio, then descending pixel count, then box position.
// The ratio comparison is done in integers so ordering never hinges on
// floating-point rounding.
bool candidate_before(const Candidate& a, const Candidate& b) {
    const std::int64_t lhs = a.pixel_count * b.struct_area;
    const std::int64_t rhs = b.pixel_count * a.struct_area;
    if (lhs != rhs) return lhs > rhs;
    if (a.pixel_count != b.pixel_count) return a.pixel_count > b.pixel_count;
    return std::tie(a.box.y_min, a.box.x_min, a.box.y_max, a.box.x_max) <
           std::tie(b.box.y_min, b.box.x_min, b.box.y_max, b.box.x_max);
}

// Maps a level-frame box to original coordinates, growing outward so the
// structure is never clipped by quantization.
BoundingBox map_back(const BoundingBox& b, double denom, int width, int height) {
    BoundingBox out;
    out.x_min = std::clamp(static_cast<int>(std::floor(b.x_min / denom)), 0, width - 1);
    out.y_min = std::clamp(static_cast<int>(std::floor(b.y_min / denom)), 0, height - 1);
    out.x_max = std::clamp(static_cast<int>(std::ceil(b.x_max / denom)), out.x_min + 1, width);
    out.y_max = std::clamp(static_cast<int>(std::ceil(b.y_max / denom)), out.y_min + 1, height);
    return out;
}

}  // namespace

std::vector<Proposal> generate(const GrayImage& image, const VhConfig& cfg,
                               const std::string& image_id, const std::string& stage_dir) {
    cfg.validate();
    if (image.empty()) throw InvalidInputError("generate: empty image");

    const int orig_w = image.width();
    const int orig_h = image.height();
    const PrescaleResult pre = prescale(image, cfg.max_side);
    const StructuringElement grad_se = StructuringElement::ellipse(cfg.se_size, cfg.se_size);

    std::vector<Candidate> candidates;
    std::set<BoundingBox> seen;

    for (std::size_t si = 0; si < cfg.scales.size(); ++si) {
        const double s = cfg.scales[si];
        const GrayImage level = downscale(pre.image, s);
        const GrayImage grad = morphological_gradient(level, grad_se);
        const BinaryImage edges = otsu_threshold(grad).binary;

        if (!stage_dir.empty()) {
            const std::string base = stage_dir + "/" + image_id + "_level" + std::to_string(si);
            save_pgm(grad, base + "_gradient.pgm");
            save_pgm(edges, base + "_edges.pgm");
        }

        const double denom = s * pre.factor;
        for (int length : cfg.kernel_lengths) {
            for (int vertical = 0; vertical < 2; ++vertical) {
                const StructuringElement kernel = vertical ? StructuringElement::vline(length)
                                                           : StructuringElement::hline(length);
                const BinaryImage closed = close(edges, kernel);
                for (const ConnectedStructure& st :
                     filter_structures(connected_components(closed), cfg.fill_ratio_p)) {
                    const BoundingBox box = map_back(st.bbox, denom, orig_w, orig_h);
                    if (seen.insert(box).second) {
                        candidates.push_back(Candidate{box, st.pixel_count, st.bbox.area()});
                    }
                }
            }
        }
    }

    std::sort(candidates.begin(), candidates.end(), candidate_before);

    std::vector<Proposal> out;
    out.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        out.push_back(Proposal{image_id, candidates[i].box, static_cast<int>(i) + 1, "vh"});
    }
    return out;
}

std::vector<Proposal> generate(const ColorImage& image, const VhConfig& cfg,
                               const std::string& image_id, const std::string& stage_dir) {
    return generate(to_grayscale(image), cfg, image_id, stage_dir);
}

}  // namespace vhc
