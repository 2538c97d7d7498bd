#pragma once

#include <map>
#include <string>
#include <vector>

#include "vhc/boxes.hpp"

namespace vhc {

/// Ranked proposals for a set of images. Rows are grouped per image id and
/// kept in rank order (1..n); image ids iterate in sorted order, which is
/// what makes emitted files reproducible.
class ProposalSet {
public:
    struct Entry {
        BoundingBox box;
        int rank = 0;
        std::string source;
    };
    using ImageMap = std::map<std::string, std::vector<Entry>>;

    ProposalSet() = default;
    explicit ProposalSet(std::string source_tag) : source_tag_(std::move(source_tag)) {}

    const std::string& source_tag() const { return source_tag_; }

    /// Appends a box to an image's list with the next rank and the set's tag.
    void append(const std::string& image_id, const BoundingBox& box);
    void append(const std::string& image_id, const BoundingBox& box, const std::string& source);

    /// Moves another set's rows in, image by image. Ranks continue per image.
    void merge_from(const ProposalSet& other);

    const ImageMap& by_image() const { return images_; }
    std::size_t size() const { return total_; }
    bool empty() const { return total_ == 0; }

    std::vector<Proposal> flatten() const;

    bool operator==(const ProposalSet& other) const { return images_ == other.images_; }

private:
    std::string source_tag_;
    ImageMap images_;
    std::size_t total_ = 0;

    friend bool operator==(const Entry&, const Entry&);
};

inline bool operator==(const ProposalSet::Entry& a, const ProposalSet::Entry& b) {
    return a.box == b.box && a.rank == b.rank && a.source == b.source;
}

/// Proposal CSV: header `image_id,x_min,y_min,x_max,y_max`; rank is implied
/// by per-image line order. Every row is tagged with source_tag.
ProposalSet parse_proposals(const std::string& path, const std::string& source_tag);
void write_proposals(const ProposalSet& set, const std::string& path);

/// Ground-truth CSV: header `image_id,class,x_min,y_min,x_max,y_max`.
std::vector<GroundTruthAnnotation> parse_ground_truth(const std::string& path);

struct ImageSize {
    int width = 0;
    int height = 0;
    bool operator==(const ImageSize&) const = default;
};
using SizeTable = std::map<std::string, ImageSize>;

/// Sizes CSV: header `image_id,width,height`.
SizeTable parse_sizes(const std::string& path);

}  // namespace vhc
