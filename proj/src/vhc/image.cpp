#include "vhc/image.hpp"

#include <cmath>
#include <string>

namespace vhc {

namespace {

void check_dims(int width, int height, const char* what) {
    if (width < 1 || height < 1) {
        throw InvalidInputError(std::string(what) + ": dimensions must be at least 1x1, got " +
                                std::to_string(width) + "x" + std::to_string(height));
    }
}

std::size_t expect_size(int width, int height, std::size_t got, int channels, const char* what) {
    const std::size_t want = static_cast<std::size_t>(width) * height * channels;
    if (got != want) {
        throw InvalidInputError(std::string(what) + ": buffer holds " + std::to_string(got) +
                                " bytes, expected " + std::to_string(want));
    }
    return want;
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    check_dims(width, height, "GrayImage");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height, "GrayImage");
    expect_size(width, height, data_.size(), 1, "GrayImage");
}

BinaryImage::BinaryImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
    check_dims(width, height, "BinaryImage");
    if (fill > 1) throw InvalidInputError("BinaryImage: fill value must be 0 or 1");
    data_.assign(static_cast<std::size_t>(width) * height, fill);
}

BinaryImage::BinaryImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height, "BinaryImage");
    expect_size(width, height, data_.size(), 1, "BinaryImage");
    for (std::uint8_t v : data_) {
        if (v > 1) throw InvalidInputError("BinaryImage: values must be 0 or 1");
    }
}

ColorImage::ColorImage(int width, int height, std::vector<std::uint8_t> rgb)
    : width_(width), height_(height), data_(std::move(rgb)) {
    check_dims(width, height, "ColorImage");
    expect_size(width, height, data_.size(), 3, "ColorImage");
}

GrayImage to_grayscale(const ColorImage& image) {
    if (image.empty()) throw InvalidInputError("to_grayscale: empty image");
    std::vector<std::uint8_t> out(static_cast<std::size_t>(image.width()) * image.height());
    const std::uint8_t* src = image.pixels().data();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double v = 0.299 * src[i * 3] + 0.587 * src[i * 3 + 1] + 0.114 * src[i * 3 + 2];
        // Half-up rounding; the weights sum to 1 so no value can exceed 255.
        int g = static_cast<int>(std::floor(v + 0.5));
        if (g < 0) g = 0;
        if (g > 255) g = 255;
        out[i] = static_cast<std::uint8_t>(g);
    }
    return GrayImage(image.width(), image.height(), std::move(out));
}

}  // namespace vhc
