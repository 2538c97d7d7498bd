#include "vhc/morphology.hpp"

#include <algorithm>
#include <string>

namespace vhc {

StructuringElement StructuringElement::ellipse(int width, int height) {
    if (width < 1 || height < 1) {
        throw InvalidInputError("StructuringElement::ellipse: size must be at least 1x1");
    }
    const int x0 = width / 2;
    const int y0 = height / 2;
    const double rx = width / 2.0;
    const double ry = height / 2.0;
    std::vector<Offset> offsets;
    for (int dy = -y0; dy <= height - 1 - y0; ++dy) {
        for (int dx = -x0; dx <= width - 1 - x0; ++dx) {
            const double ex = dx / rx;
            const double ey = dy / ry;
            if (ex * ex + ey * ey <= 1.0) offsets.push_back({dx, dy});
        }
    }
    return StructuringElement(Kind::Ellipse, std::move(offsets), 0, 0);
}

StructuringElement StructuringElement::hline(int length) {
    if (length < 1) throw InvalidInputError("StructuringElement::hline: length must be at least 1");
    const int before = length / 2;
    const int after = length - 1 - before;
    std::vector<Offset> offsets;
    for (int dx = -before; dx <= after; ++dx) offsets.push_back({dx, 0});
    return StructuringElement(Kind::HLine, std::move(offsets), before, after);
}

StructuringElement StructuringElement::vline(int length) {
    if (length < 1) throw InvalidInputError("StructuringElement::vline: length must be at least 1");
    const int before = length / 2;
    const int after = length - 1 - before;
    std::vector<Offset> offsets;
    for (int dy = -before; dy <= after; ++dy) offsets.push_back({0, dy});
    return StructuringElement(Kind::VLine, std::move(offsets), before, after);
}

namespace {

inline int clamp_coord(int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); }

template <bool TakeMax>
inline std::uint8_t better(std::uint8_t a, std::uint8_t b) {
    if constexpr (TakeMax) {
        return a > b ? a : b;
    } else {
        return a < b ? a : b;
    }
}

// Generic path: scan the offset set per pixel, clamping reads to the border.
template <bool TakeMax>
void apply_offsets(const std::uint8_t* src, std::uint8_t* dst, int w, int h,
                   const std::vector<StructuringElement::Offset>& offsets) {
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t acc = TakeMax ? 0 : 255;
            for (const auto& o : offsets) {
                const int sx = clamp_coord(x + o.dx, w - 1);
                const int sy = clamp_coord(y + o.dy, h - 1);
                acc = better<TakeMax>(acc, src[static_cast<std::size_t>(sy) * w + sx]);
            }
            dst[static_cast<std::size_t>(y) * w + x] = acc;
        }
    }
}

// Sliding extremum over the window [i - before, i + after] along one axis.
// With border replication the clamped window has the same extremum as the
// replicated one, so plain index clamping is enough. Monotonic queue of
// candidate indices; O(n) per line.
template <bool TakeMax>
void line_extremum(const std::uint8_t* src, std::uint8_t* dst, int n, std::ptrdiff_t stride,
                   int before, int after, std::vector<int>& queue) {
    queue.clear();
    std::size_t qhead = 0;
    int filled = -1;  // rightmost index pushed so far
    for (int i = 0; i < n; ++i) {
        const int right = std::min(n - 1, i + after);
        while (filled < right) {
            ++filled;
            const std::uint8_t v = src[filled * stride];
            while (queue.size() > qhead && better<TakeMax>(src[queue.back() * stride], v) == v) {
                queue.pop_back();
            }
            queue.push_back(filled);
        }
        const int left = std::max(0, i - before);
        while (queue[qhead] < left) ++qhead;
        dst[i * stride] = src[queue[qhead] * stride];
    }
}

template <bool TakeMax>
void apply_hline(const std::uint8_t* src, std::uint8_t* dst, int w, int h, int before, int after) {
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(before) + after + 1);
    for (int y = 0; y < h; ++y) {
        line_extremum<TakeMax>(src + static_cast<std::size_t>(y) * w,
                               dst + static_cast<std::size_t>(y) * w, w, 1, before, after, queue);
    }
}

template <bool TakeMax>
void apply_vline(const std::uint8_t* src, std::uint8_t* dst, int w, int h, int before, int after) {
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(before) + after + 1);
    for (int x = 0; x < w; ++x) {
        line_extremum<TakeMax>(src + x, dst + x, h, w, before, after, queue);
    }
}

template <bool TakeMax>
std::vector<std::uint8_t> transform(const std::uint8_t* src, int w, int h,
                                    const StructuringElement& se) {
    std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h);
    switch (se.kind()) {
        case StructuringElement::Kind::HLine:
            apply_hline<TakeMax>(src, out.data(), w, h, se.before(), se.after());
            break;
        case StructuringElement::Kind::VLine:
            apply_vline<TakeMax>(src, out.data(), w, h, se.before(), se.after());
            break;
        default:
            apply_offsets<TakeMax>(src, out.data(), w, h, se.offsets());
            break;
    }
    return out;
}

}  // namespace

GrayImage dilate(const GrayImage& img, const StructuringElement& se) {
    if (img.empty()) throw InvalidInputError("dilate: empty image");
    return GrayImage(img.width(), img.height(),
                     transform<true>(img.pixels().data(), img.width(), img.height(), se));
}

GrayImage erode(const GrayImage& img, const StructuringElement& se) {
    if (img.empty()) throw InvalidInputError("erode: empty image");
    return GrayImage(img.width(), img.height(),
                     transform<false>(img.pixels().data(), img.width(), img.height(), se));
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
    if (img.empty()) throw InvalidInputError("dilate: empty image");
    return BinaryImage(img.width(), img.height(),
                       transform<true>(img.pixels().data(), img.width(), img.height(), se));
}

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
    if (img.empty()) throw InvalidInputError("erode: empty image");
    return BinaryImage(img.width(), img.height(),
                       transform<false>(img.pixels().data(), img.width(), img.height(), se));
}

GrayImage morphological_gradient(const GrayImage& img, const StructuringElement& se) {
    GrayImage hi = dilate(img, se);
    const GrayImage lo = erode(img, se);
    // max >= min over the same window, so the difference stays in [0, 255].
    std::uint8_t* d = hi.pixels().data();
    const std::uint8_t* e = lo.pixels().data();
    const std::size_t n = hi.pixels().size();
    for (std::size_t i = 0; i < n; ++i) d[i] = static_cast<std::uint8_t>(d[i] - e[i]);
    return hi;
}

GrayImage close(const GrayImage& img, const StructuringElement& se) { return erode(dilate(img, se), se); }

BinaryImage close(const BinaryImage& img, const StructuringElement& se) { return erode(dilate(img, se), se); }

}  // namespace vhc
