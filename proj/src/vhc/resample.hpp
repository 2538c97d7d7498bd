#pragma once

#include "vhc/image.hpp"

namespace vhc {

/// Area-average downscale by factor s in (0, 1]. Output dimensions are
/// max(1, round(dim * s)); every output pixel averages the source rectangle
/// it covers, with fractional edge coverage, rounded half-up.
GrayImage downscale(const GrayImage& img, double s);

struct PrescaleResult {
    GrayImage image;
    double factor = 1.0;
};

/// Caps the longer side at max_side, preserving aspect ratio. Images already
/// within the limit pass through untouched with factor 1.
PrescaleResult prescale(const GrayImage& img, int max_side);

}  // namespace vhc
