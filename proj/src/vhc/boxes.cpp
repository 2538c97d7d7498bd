#include "vhc/boxes.hpp"

#include <algorithm>

namespace vhc {

double iou(const BoundingBox& a, const BoundingBox& b) {
    const std::int64_t iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const std::int64_t ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    if (iw <= 0 || ih <= 0) return 0.0;
    const std::int64_t inter = iw * ih;
    const std::int64_t uni = a.area() + b.area() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace vhc
