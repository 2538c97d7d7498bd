#pragma once

#include <array>
#include <cstdint>

#include "vhc/image.hpp"

namespace vhc {

struct OtsuResult {
    int threshold = 0;
    BinaryImage binary;
};

using Histogram = std::array<std::int64_t, 256>;

Histogram histogram(const GrayImage& img);

/// Threshold maximizing the inter-class variance of the histogram; the
/// smallest maximizer wins ties. A histogram with a single populated bin
/// returns that intensity.
int otsu_threshold_from_histogram(const Histogram& hist);

/// Binarizes with the Otsu threshold T: output is 1 exactly where img > T.
OtsuResult otsu_threshold(const GrayImage& img);

}  // namespace vhc
