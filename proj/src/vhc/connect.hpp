#pragma once

#include <string>
#include <vector>

#include "vhc/boxes.hpp"
#include "vhc/image.hpp"

namespace vhc {

/// Settings for the VH-Connect proposal generator.
struct VhConfig {
    int se_size = 3;                                   // gradient element, se_size x se_size ellipse
    std::vector<double> scales = {1.0, 0.5, 0.25};     // pyramid levels, each in (0, 1]
    std::vector<int> kernel_lengths = {9, 15, 30, 45}; // closing line lengths, each >= 2
    double fill_ratio_p = 0.5;                         // keep structures with count > p * box area
    int max_side = 1024;                               // prescale cap on the longer image side

    void validate() const;
};

/// One 8-connected blob of an edge map: its pixel count and tight box, in
/// the coordinate frame of the pyramid level it was found at.
struct ConnectedStructure {
    std::int64_t pixel_count = 0;
    BoundingBox bbox;
};

/// 8-connected components of the 1-pixels, sorted by (y_min, x_min) of the
/// bounding box.
std::vector<ConnectedStructure> connected_components(const BinaryImage& binary);

/// Keeps structures whose pixel count strictly exceeds p times the area of
/// their bounding box.
std::vector<ConnectedStructure> filter_structures(const std::vector<ConnectedStructure>& structures,
                                                  double p);

/// Runs the full pipeline on one image: prescale, then per pyramid level a
/// morphological gradient, Otsu binarization, and a closing sweep over every
/// (length, horizontal|vertical) kernel. Surviving structures are mapped
/// back to original-image coordinates (min corner rounded down, max corner
/// rounded up), exact duplicates dropped, and the rest ranked by descending
/// fill ratio.
///
/// When stage_dir is non-empty, the per-level gradient and edge maps are
/// written there as PGM files for inspection.
std::vector<Proposal> generate(const GrayImage& image, const VhConfig& cfg,
                               const std::string& image_id, const std::string& stage_dir = {});
std::vector<Proposal> generate(const ColorImage& image, const VhConfig& cfg,
                               const std::string& image_id, const std::string& stage_dir = {});

}  // namespace vhc
