#pragma once

#include <vector>

#include "vhc/image.hpp"

namespace vhc {

/// Set of integer pixel offsets over which morphological max/min is taken.
///
/// Three shapes are provided. All of them contain the origin.
///   ellipse(w, h)  all (dx, dy) on the centered w x h grid with
///                  (dx / (w/2))^2 + (dy / (h/2))^2 <= 1
///   hline(l)       {(dx, 0) : dx in [-floor(l/2), l - 1 - floor(l/2)]}
///   vline(l)       the same span on dy
class StructuringElement {
public:
    enum class Kind { Ellipse, HLine, VLine };

    struct Offset {
        int dx;
        int dy;
    };

    static StructuringElement ellipse(int width, int height);
    static StructuringElement hline(int length);
    static StructuringElement vline(int length);

    Kind kind() const { return kind_; }
    const std::vector<Offset>& offsets() const { return offsets_; }

    /// Line kernels only: reach of the window to the left/above (`before`)
    /// and to the right/below (`after`) of the anchor.
    int before() const { return before_; }
    int after() const { return after_; }

private:
    StructuringElement(Kind kind, std::vector<Offset> offsets, int before, int after)
        : kind_(kind), offsets_(std::move(offsets)), before_(before), after_(after) {}

    Kind kind_;
    std::vector<Offset> offsets_;
    int before_ = 0;
    int after_ = 0;
};

// Out-of-range reads replicate the border pixel (coordinates are clamped).
// Line kernels run through an O(1)-per-pixel sliding window; everything else
// scans the offset set directly.
GrayImage dilate(const GrayImage& img, const StructuringElement& se);
GrayImage erode(const GrayImage& img, const StructuringElement& se);
BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);

/// Dilation minus erosion. Non-negative by construction.
GrayImage morphological_gradient(const GrayImage& img, const StructuringElement& se);

/// Dilation followed by erosion with the same element.
GrayImage close(const GrayImage& img, const StructuringElement& se);
BinaryImage close(const BinaryImage& img, const StructuringElement& se);

}  // namespace vhc
