#pragma once

#include <cstdint>
#include <vector>

#include "vhc/error.hpp"

namespace vhc {

/// Row-major 8-bit single-channel raster. The carrier of all pixel work.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::uint8_t fill = 0);
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }

    std::uint8_t operator()(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::uint8_t& operator()(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<std::uint8_t>& pixels() const { return data_; }
    std::vector<std::uint8_t>& pixels() { return data_; }

    bool operator==(const GrayImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Row-major raster of {0,1} values.
class BinaryImage {
public:
    BinaryImage() = default;
    BinaryImage(int width, int height, std::uint8_t fill = 0);
    BinaryImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }

    std::uint8_t operator()(int x, int y) const { return data_[static_cast<std::size_t>(y) * width_ + x]; }
    std::uint8_t& operator()(int x, int y) { return data_[static_cast<std::size_t>(y) * width_ + x]; }

    const std::vector<std::uint8_t>& pixels() const { return data_; }
    std::vector<std::uint8_t>& pixels() { return data_; }

    bool operator==(const BinaryImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Interleaved 8-bit RGB raster.
class ColorImage {
public:
    ColorImage() = default;
    ColorImage(int width, int height, std::vector<std::uint8_t> rgb);

    int width() const { return width_; }
    int height() const { return height_; }
    bool empty() const { return data_.empty(); }

    /// Channel c in {0,1,2} = R,G,B.
    std::uint8_t at(int x, int y, int c) const {
        return data_[(static_cast<std::size_t>(y) * width_ + x) * 3 + c];
    }

    const std::vector<std::uint8_t>& pixels() const { return data_; }

    bool operator==(const ColorImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// BT.601 luma conversion: gray = round(0.299 R + 0.587 G + 0.114 B).
GrayImage to_grayscale(const ColorImage& image);

}  // namespace vhc
