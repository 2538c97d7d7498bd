#pragma once

#include <string>
#include <variant>

#include "vhc/image.hpp"

namespace vhc {

using PnmImage = std::variant<GrayImage, ColorImage>;

/// Reads a binary PGM (P5) or PPM (P6) file with 8-bit samples.
PnmImage load_pnm(const std::string& path);

GrayImage load_pgm(const std::string& path);

/// Writes a binary PGM (P5) with maxval 255.
void save_pgm(const GrayImage& img, const std::string& path);

/// Binary masks are written with 0 -> 0 and 1 -> 255 so they are viewable.
void save_pgm(const BinaryImage& img, const std::string& path);

void save_ppm(const ColorImage& img, const std::string& path);

GrayImage pnm_to_gray(const PnmImage& img);

}  // namespace vhc
