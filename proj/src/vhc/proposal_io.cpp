#include "vhc/proposal_io.hpp"

#include <charconv>
#include <fstream>

#include "vhc/error.hpp"

namespace vhc {

void ProposalSet::append(const std::string& image_id, const BoundingBox& box) {
    append(image_id, box, source_tag_);
}

void ProposalSet::append(const std::string& image_id, const BoundingBox& box, const std::string& source) {
    if (image_id.empty()) throw InvalidInputError("proposal image_id must not be empty");
    if (!box.valid()) throw InvalidInputError("proposal box must have positive area");
    auto& rows = images_[image_id];
    rows.push_back(Entry{box, static_cast<int>(rows.size()) + 1, source});
    ++total_;
}

void ProposalSet::merge_from(const ProposalSet& other) {
    for (const auto& [id, rows] : other.images_) {
        auto& dst = images_[id];
        for (const Entry& e : rows) {
            dst.push_back(Entry{e.box, static_cast<int>(dst.size()) + 1, e.source});
            ++total_;
        }
    }
}

std::vector<Proposal> ProposalSet::flatten() const {
    std::vector<Proposal> out;
    out.reserve(total_);
    for (const auto& [id, rows] : images_) {
        for (const Entry& e : rows) out.push_back(Proposal{id, e.box, e.rank, e.source});
    }
    return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

int parse_int(const std::string& field, const std::string& path, std::size_t line_no) {
    int value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw ParseError(path, line_no, "expected an integer, got '" + field + "'");
    }
    return value;
}

BoundingBox parse_box(const std::vector<std::string>& fields, std::size_t first,
                      const std::string& path, std::size_t line_no) {
    BoundingBox box;
    box.x_min = parse_int(fields[first], path, line_no);
    box.y_min = parse_int(fields[first + 1], path, line_no);
    box.x_max = parse_int(fields[first + 2], path, line_no);
    box.y_max = parse_int(fields[first + 3], path, line_no);
    if (box.x_min < 0 || box.y_min < 0) {
        throw ParseError(path, line_no, "invalid box: coordinates must be non-negative");
    }
    if (box.x_min >= box.x_max || box.y_min >= box.y_max) {
        throw ParseError(path, line_no, "invalid box: requires x_min < x_max and y_min < y_max");
    }
    return box;
}

// Lines are LF-terminated; a trailing CR is tolerated on read. Returns false
// at end of file.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

void check_header(const std::string& got, const char* want, const std::string& path) {
    if (got != want) {
        throw ParseError(path, 1, "expected header '" + std::string(want) + "', got '" + got + "'");
    }
}

void check_id(const std::string& id, const std::string& path, std::size_t line_no) {
    if (id.empty()) throw ParseError(path, line_no, "image_id must not be empty");
    if (id.find(',') != std::string::npos) {
        throw ParseError(path, line_no, "image_id must not contain commas");
    }
}

}  // namespace

ProposalSet parse_proposals(const std::string& path, const std::string& source_tag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    if (!next_line(in, line)) throw ParseError(path, 1, "missing header");
    check_header(line, "image_id,x_min,y_min,x_max,y_max", path);

    ProposalSet set(source_tag);
    std::size_t line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 5) {
            throw ParseError(path, line_no, "expected 5 fields, got " + std::to_string(fields.size()));
        }
        check_id(fields[0], path, line_no);
        set.append(fields[0], parse_box(fields, 1, path, line_no));
    }
    return set;
}

void write_proposals(const ProposalSet& set, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << "image_id,x_min,y_min,x_max,y_max\n";
    for (const auto& [id, rows] : set.by_image()) {
        for (const auto& e : rows) {
            out << id << ',' << e.box.x_min << ',' << e.box.y_min << ',' << e.box.x_max << ','
                << e.box.y_max << '\n';
        }
    }
    if (!out) throw IoError("write failed for " + path);
}

std::vector<GroundTruthAnnotation> parse_ground_truth(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    if (!next_line(in, line)) throw ParseError(path, 1, "missing header");
    check_header(line, "image_id,class,x_min,y_min,x_max,y_max", path);

    std::vector<GroundTruthAnnotation> out;
    std::size_t line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 6) {
            throw ParseError(path, line_no, "expected 6 fields, got " + std::to_string(fields.size()));
        }
        check_id(fields[0], path, line_no);
        if (fields[1].empty()) throw ParseError(path, line_no, "class label must not be empty");
        out.push_back(GroundTruthAnnotation{fields[0], parse_box(fields, 2, path, line_no), fields[1]});
    }
    return out;
}

SizeTable parse_sizes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    std::string line;
    if (!next_line(in, line)) throw ParseError(path, 1, "missing header");
    check_header(line, "image_id,width,height", path);

    SizeTable out;
    std::size_t line_no = 1;
    while (next_line(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw ParseError(path, line_no, "expected 3 fields, got " + std::to_string(fields.size()));
        }
        check_id(fields[0], path, line_no);
        const int w = parse_int(fields[1], path, line_no);
        const int h = parse_int(fields[2], path, line_no);
        if (w < 1 || h < 1) throw ParseError(path, line_no, "image size must be positive");
        out[fields[0]] = ImageSize{w, h};
    }
    return out;
}

}  // namespace vhc
