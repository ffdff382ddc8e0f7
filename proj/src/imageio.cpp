#include "eigengesture/imageio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <tuple>

namespace eigengesture {

namespace fs = std::filesystem;

namespace {

constexpr unsigned kMaxvalLimit = 65535;

bool is_pnm_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// Cursor over the raw bytes; handles header whitespace and # comments.
struct PnmCursor {
    std::string_view bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }

    void skip_space_and_comments() {
        while (!eof()) {
            const char c = bytes[pos];
            if (is_pnm_space(c)) {
                ++pos;
            } else if (c == '#') {
                while (!eof() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    unsigned long next_uint(const char* what) {
        skip_space_and_comments();
        if (eof() || !std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            throw FormatError(std::string("expected ") + what + " in PNM header");
        }
        unsigned long value = 0;
        while (!eof() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            value = value * 10 + static_cast<unsigned long>(bytes[pos] - '0');
            if (value > 1000000000UL) {
                throw FormatError(std::string("absurd ") + what + " in PNM header");
            }
            ++pos;
        }
        return value;
    }
};

double luma(double r, double g, double b) { return 0.299 * r + 0.587 * g + 0.114 * b; }

}  // namespace

GrayImage read_pnm(std::string_view bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P') {
        throw FormatError("not a PNM stream (bad magic)");
    }
    const char kind = bytes[1];
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6') {
        throw FormatError(std::string("unsupported PNM magic P") + kind);
    }
    if (bytes.size() < 3 || (!is_pnm_space(bytes[2]) && bytes[2] != '#')) {
        throw FormatError("malformed PNM header after magic");
    }
    const bool color = kind == '3' || kind == '6';
    const bool binary = kind == '5' || kind == '6';

    PnmCursor cur{bytes, 2};
    const unsigned long width = cur.next_uint("width");
    const unsigned long height = cur.next_uint("height");
    const unsigned long maxval = cur.next_uint("maxval");
    if (width == 0 || height == 0) {
        throw FormatError("PNM image has a zero dimension");
    }
    if (maxval == 0) {
        throw FormatError("PNM maxval must be at least 1");
    }
    if (maxval > kMaxvalLimit) {
        throw UnsupportedMaxval("PNM maxval " + std::to_string(maxval) + " exceeds 65535");
    }

    const std::size_t channels = color ? 3 : 1;
    const std::size_t sample_count = width * height * channels;
    std::vector<double> raw(sample_count);

    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cur.eof() || !is_pnm_space(bytes[cur.pos])) {
            throw FormatError("missing whitespace before PNM raster");
        }
        ++cur.pos;
        const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
        if (bytes.size() - cur.pos < sample_count * bytes_per_sample) {
            throw FormatError("truncated PNM raster");
        }
        for (std::size_t i = 0; i < sample_count; ++i) {
            unsigned long v;
            if (bytes_per_sample == 2) {
                const auto hi = static_cast<unsigned char>(bytes[cur.pos++]);
                const auto lo = static_cast<unsigned char>(bytes[cur.pos++]);
                v = (static_cast<unsigned long>(hi) << 8) | lo;
            } else {
                v = static_cast<unsigned char>(bytes[cur.pos++]);
            }
            if (v > maxval) {
                throw FormatError("PNM sample exceeds maxval");
            }
            raw[i] = static_cast<double>(v);
        }
    } else {
        for (std::size_t i = 0; i < sample_count; ++i) {
            const unsigned long v = cur.next_uint("sample");
            if (v > maxval) {
                throw FormatError("PNM sample exceeds maxval");
            }
            raw[i] = static_cast<double>(v);
        }
    }

    GrayImage img;
    img.width = width;
    img.height = height;
    img.maxval = static_cast<unsigned>(maxval);
    img.pixels.resize(static_cast<std::size_t>(width) * height);
    const double scale = static_cast<double>(maxval);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double v = color ? luma(raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]) : raw[i];
        img.pixels[i] = v / scale;
    }
    return img;
}

GrayImage read_pnm_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw FormatError("cannot read " + path.string());
    }
    return read_pnm(buf.str());
}

std::string write_pnm(const GrayImage& img, bool ascii) {
    const unsigned maxval = img.maxval;
    std::string out;
    out += ascii ? "P2\n" : "P5\n";
    out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n";
    out += std::to_string(maxval) + "\n";
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double scaled = img.pixels[i] * static_cast<double>(maxval);
        const long q = std::clamp(std::lround(scaled), 0L, static_cast<long>(maxval));
        if (ascii) {
            out += std::to_string(q);
            out += ((i + 1) % img.width == 0) ? '\n' : ' ';
        } else if (maxval > 255) {
            out += static_cast<char>((q >> 8) & 0xff);
            out += static_cast<char>(q & 0xff);
        } else {
            out += static_cast<char>(q & 0xff);
        }
    }
    return out;
}

void write_pnm_file(const fs::path& path, const GrayImage& img, bool ascii) {
    std::ofstream out(path, std::ios::binary);
    out << write_pnm(img, ascii);
    if (!out) {
        throw FormatError("cannot write " + path.string());
    }
}

GrayImage resize_bilinear(const GrayImage& img, std::size_t out_width, std::size_t out_height) {
    if (img.width == 0 || img.height == 0) {
        throw FormatError("cannot resize an empty image");
    }
    if (out_width == 0 || out_height == 0) {
        throw FormatError("cannot resize to a zero dimension");
    }
    GrayImage out;
    out.width = out_width;
    out.height = out_height;
    out.maxval = img.maxval;
    out.pixels.resize(out_width * out_height);

    const double sx = out_width == 1 ? 0.0
                                     : static_cast<double>(img.width - 1) /
                                           static_cast<double>(out_width - 1);
    const double sy = out_height == 1 ? 0.0
                                      : static_cast<double>(img.height - 1) /
                                            static_cast<double>(out_height - 1);
    for (std::size_t oy = 0; oy < out_height; ++oy) {
        const double fy = static_cast<double>(oy) * sy;
        const std::size_t y0 = static_cast<std::size_t>(fy);
        const std::size_t y1 = std::min(y0 + 1, img.height - 1);
        const double wy = fy - static_cast<double>(y0);
        for (std::size_t ox = 0; ox < out_width; ++ox) {
            const double fx = static_cast<double>(ox) * sx;
            const std::size_t x0 = static_cast<std::size_t>(fx);
            const std::size_t x1 = std::min(x0 + 1, img.width - 1);
            const double wx = fx - static_cast<double>(x0);
            const double top = (1.0 - wx) * img.at(x0, y0) + wx * img.at(x1, y0);
            const double bottom = (1.0 - wx) * img.at(x0, y1) + wx * img.at(x1, y1);
            const double value = (1.0 - wy) * top + wy * bottom;
            out.pixels[oy * out_width + ox] = std::clamp(value, 0.0, 1.0);
        }
    }
    return out;
}

GrayImage resize_bilinear(const GrayImage& img, std::size_t n) {
    return resize_bilinear(img, n, n);
}

Vector flatten(const GrayImage& img) {
    if (img.width != img.height) {
        throw NotSquare("cannot flatten a " + std::to_string(img.width) + "x" +
                        std::to_string(img.height) + " image");
    }
    return Vector(img.pixels);
}

GrayImage unflatten(const Vector& v, std::size_t n, unsigned maxval) {
    if (v.len() != n * n) {
        throw NotSquare("vector of length " + std::to_string(v.len()) +
                        " does not reshape to " + std::to_string(n) + "x" + std::to_string(n));
    }
    for (double x : v) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw FormatError("intensity outside [0,1] in unflatten");
        }
    }
    GrayImage img;
    img.width = n;
    img.height = n;
    img.maxval = maxval;
    img.pixels = v.elems();
    return img;
}

DatasetManifest scan_dataset(const fs::path& root, std::size_t n) {
    if (!fs::is_directory(root)) {
        throw EmptyDataset("dataset root is not a directory: " + root.string());
    }
    DatasetManifest manifest;
    manifest.n = n;
    for (const auto& label_entry : fs::directory_iterator(root)) {
        if (!label_entry.is_directory()) continue;
        const std::string label = label_entry.path().filename().string();
        for (const auto& file_entry : fs::directory_iterator(label_entry.path())) {
            if (!file_entry.is_regular_file()) continue;
            std::string ext = file_entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(),
                           [](unsigned char c) { return std::tolower(c); });
            if (ext != ".pgm" && ext != ".ppm" && ext != ".pnm") continue;
            const std::string path_str = file_entry.path().string();
            GrayImage img;
            try {
                img = read_pnm_file(file_entry.path());
            } catch (const UnsupportedMaxval& e) {
                throw UnsupportedMaxval(path_str + ": " + e.what());
            } catch (const FormatError& e) {
                throw FormatError(path_str + ": " + e.what());
            }
            manifest.samples.push_back(
                LabeledSample{label, path_str, flatten(resize_bilinear(img, n))});
        }
    }
    if (manifest.samples.empty()) {
        throw EmptyDataset("no PNM samples under " + root.string());
    }
    std::sort(manifest.samples.begin(), manifest.samples.end(),
              [](const LabeledSample& a, const LabeledSample& b) {
                  return std::tie(a.label, a.source_path) < std::tie(b.label, b.source_path);
              });
    return manifest;
}

}  // namespace eigengesture
