#include "vhc/resample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vhc {

namespace {

int scaled_dim(int dim, double s) {
    const int out = static_cast<int>(std::floor(dim * s + 0.5));
    return std::max(1, out);
}

// Fractional coverage of source cell [c, c+1) by the interval [lo, hi).
double overlap(int c, double lo, double hi) {
    const double a = std::max(lo, static_cast<double>(c));
    const double b = std::min(hi, static_cast<double>(c + 1));
    return std::max(0.0, b - a);
}

}  // namespace

GrayImage downscale(const GrayImage& img, double s) {
    if (img.empty()) throw InvalidInputError("downscale: empty image");
    if (!(s > 0.0) || s > 1.0) {
        throw InvalidInputError("downscale: scale factor must be in (0, 1], got " + std::to_string(s));
    }
    const int sw = img.width();
    const int sh = img.height();
    const int dw = scaled_dim(sw, s);
    const int dh = scaled_dim(sh, s);
    if (dw == sw && dh == sh) return img;

    const double step_x = static_cast<double>(sw) / dw;
    const double step_y = static_cast<double>(sh) / dh;
    std::vector<std::uint8_t> out(static_cast<std::size_t>(dw) * dh);

    for (int oy = 0; oy < dh; ++oy) {
        const double y0 = oy * step_y;
        const double y1 = std::min((oy + 1) * step_y, static_cast<double>(sh));
        const int cy0 = static_cast<int>(std::floor(y0));
        const int cy1 = std::min(sh - 1, static_cast<int>(std::ceil(y1)) - 1);
        for (int ox = 0; ox < dw; ++ox) {
            const double x0 = ox * step_x;
            const double x1 = std::min((ox + 1) * step_x, static_cast<double>(sw));
            const int cx0 = static_cast<int>(std::floor(x0));
            const int cx1 = std::min(sw - 1, static_cast<int>(std::ceil(x1)) - 1);

            double weighted = 0.0;
            double area = 0.0;
            for (int cy = cy0; cy <= cy1; ++cy) {
                const double wy = overlap(cy, y0, y1);
                if (wy <= 0.0) continue;
                for (int cx = cx0; cx <= cx1; ++cx) {
                    const double w = wy * overlap(cx, x0, x1);
                    if (w <= 0.0) continue;
                    weighted += w * img(cx, cy);
                    area += w;
                }
            }
            const double mean = weighted / area;
            int v = static_cast<int>(std::floor(mean + 0.5));
            v = std::clamp(v, 0, 255);
            out[static_cast<std::size_t>(oy) * dw + ox] = static_cast<std::uint8_t>(v);
        }
    }
    return GrayImage(dw, dh, std::move(out));
}

PrescaleResult prescale(const GrayImage& img, int max_side) {
    if (max_side < 1) throw InvalidInputError("prescale: max_side must be at least 1");
    if (img.empty()) throw InvalidInputError("prescale: empty image");
    const int longest = std::max(img.width(), img.height());
    if (longest <= max_side) return PrescaleResult{img, 1.0};
    const double factor = static_cast<double>(max_side) / longest;
    return PrescaleResult{downscale(img, factor), factor};
}

}  // namespace vhc
