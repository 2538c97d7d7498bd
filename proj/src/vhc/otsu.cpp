#include "vhc/otsu.hpp"

namespace vhc {

Histogram histogram(const GrayImage& img) {
    Histogram hist{};
    for (std::uint8_t v : img.pixels()) ++hist[v];
    return hist;
}

int otsu_threshold_from_histogram(const Histogram& hist) {
    std::int64_t total = 0;
    std::int64_t total_sum = 0;
    int lowest = -1;
    int highest = -1;
    for (int v = 0; v < 256; ++v) {
        if (hist[v] > 0) {
            if (lowest < 0) lowest = v;
            highest = v;
            total += hist[v];
            total_sum += static_cast<std::int64_t>(v) * hist[v];
        }
    }
    if (total == 0) throw InvalidInputError("otsu: empty histogram");
    if (lowest == highest) return lowest;  // single intensity, no classes to separate

    // Between-class variance is proportional to (s0*n1 - s1*n0)^2 / (n0*n1);
    // the class counts and sums are exact integers, so equal thresholds
    // compare equal and the smallest maximizer is deterministic.
    double best_sigma = -1.0;
    int best_t = 0;
    std::int64_t n0 = 0;
    std::int64_t s0 = 0;
    for (int t = 0; t < 256; ++t) {
        n0 += hist[t];
        s0 += static_cast<std::int64_t>(t) * hist[t];
        const std::int64_t n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;  // an empty class separates nothing
        const std::int64_t s1 = total_sum - s0;
        const double spread = static_cast<double>(s0 * n1 - s1 * n0);
        const double sigma = spread * spread / static_cast<double>(n0 * n1);
        if (sigma > best_sigma) {
            best_sigma = sigma;
            best_t = t;
        }
    }
    return best_t;
}

OtsuResult otsu_threshold(const GrayImage& img) {
    if (img.empty()) throw InvalidInputError("otsu: empty image");
    const int t = otsu_threshold_from_histogram(histogram(img));
    std::vector<std::uint8_t> bits(img.pixels().size());
    const std::uint8_t* src = img.pixels().data();
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = src[i] > t ? 1 : 0;
    return OtsuResult{t, BinaryImage(img.width(), img.height(), std::move(bits))};
}

}  // namespace vhc
