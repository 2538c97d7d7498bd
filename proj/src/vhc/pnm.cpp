#include "vhc/pnm.hpp"

#include <fstream>
#include <limits>

namespace vhc {

namespace {

// Header tokens may be separated by blanks, newlines, and '#' comments that
// run to the end of the line. The pixel payload starts after exactly one
// whitespace byte following the maxval token.
int read_header_int(std::istream& in, const std::string& path, const char* what) {
    for (;;) {
        const int c = in.peek();
        if (c == EOF) throw ParseError(path + ": truncated header, expected " + std::string(what));
        if (c == '#') {
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
            continue;
        }
        if (std::isspace(c)) {
            in.get();
            continue;
        }
        break;
    }
    int value = 0;
    if (!(in >> value)) throw ParseError(path + ": malformed " + std::string(what) + " in header");
    return value;
}

void read_payload(std::istream& in, const std::string& path, std::vector<std::uint8_t>& data) {
    const int sep = in.get();
    if (sep == EOF || !std::isspace(sep)) {
        throw ParseError(path + ": missing whitespace before pixel data");
    }
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (static_cast<std::size_t>(in.gcount()) != data.size()) {
        throw ParseError(path + ": truncated pixel data");
    }
}

}  // namespace

PnmImage load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2 || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6')) {
        throw ParseError(path + ": not a binary PGM (P5) or PPM (P6) file");
    }
    const bool color = magic[1] == '6';

    const int width = read_header_int(in, path, "width");
    const int height = read_header_int(in, path, "height");
    const int maxval = read_header_int(in, path, "maxval");
    if (width < 1 || height < 1) throw ParseError(path + ": invalid dimensions");
    if (maxval < 1 || maxval > 255) {
        throw ParseError(path + ": unsupported maxval " + std::to_string(maxval) +
                         " (only 8-bit samples are supported)");
    }

    const std::size_t channels = color ? 3 : 1;
    std::vector<std::uint8_t> data(static_cast<std::size_t>(width) * height * channels);
    read_payload(in, path, data);

    if (color) return ColorImage(width, height, std::move(data));
    return GrayImage(width, height, std::move(data));
}

GrayImage load_pgm(const std::string& path) {
    PnmImage img = load_pnm(path);
    if (!std::holds_alternative<GrayImage>(img)) {
        throw ParseError(path + ": expected a grayscale PGM file");
    }
    return std::get<GrayImage>(std::move(img));
}

namespace {

void write_pnm(const std::string& path, const char* magic, int w, int h,
               const std::uint8_t* data, std::size_t size) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << magic << "\n" << w << " " << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace

void save_pgm(const GrayImage& img, const std::string& path) {
    write_pnm(path, "P5", img.width(), img.height(), img.pixels().data(), img.pixels().size());
}

void save_pgm(const BinaryImage& img, const std::string& path) {
    std::vector<std::uint8_t> bytes(img.pixels().size());
    for (std::size_t i = 0; i < bytes.size(); ++i) bytes[i] = img.pixels()[i] ? 255 : 0;
    write_pnm(path, "P5", img.width(), img.height(), bytes.data(), bytes.size());
}

void save_ppm(const ColorImage& img, const std::string& path) {
    write_pnm(path, "P6", img.width(), img.height(), img.pixels().data(), img.pixels().size());
}

GrayImage pnm_to_gray(const PnmImage& img) {
    if (std::holds_alternative<GrayImage>(img)) return std::get<GrayImage>(img);
    return to_grayscale(std::get<ColorImage>(img));
}

}  // namespace vhc
