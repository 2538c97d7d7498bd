#pragma once

#include <cstdint>
#include <string>

namespace vhc {

/// Axis-aligned box in pixel coordinates, zero-indexed, half-open on both
/// axes: a pixel (x, y) is inside iff x_min <= x < x_max and
/// y_min <= y < y_max. A valid box has positive area.
struct BoundingBox {
    int x_min = 0;
    int y_min = 0;
    int x_max = 0;
    int y_max = 0;

    std::int64_t width() const { return x_max - x_min; }
    std::int64_t height() const { return y_max - y_min; }
    std::int64_t area() const { return width() * height(); }
    bool valid() const { return x_min >= 0 && y_min >= 0 && x_min < x_max && y_min < y_max; }

    bool operator==(const BoundingBox&) const = default;
    auto operator<=>(const BoundingBox&) const = default;
};

/// Intersection area over union area; 0 for disjoint boxes.
double iou(const BoundingBox& a, const BoundingBox& b);

struct Proposal {
    std::string image_id;
    BoundingBox box;
    int rank = 0;  // 1-based position within its source's list
    std::string source;
};

struct GroundTruthAnnotation {
    std::string image_id;
    BoundingBox box;
    std::string class_label;
};

}  // namespace vhc
