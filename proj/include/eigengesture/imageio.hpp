#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "eigengesture/errors.hpp"
#include "eigengesture/linalg.hpp"

namespace eigengesture {

/// Grayscale raster with intensities stored as reals in [0,1]
/// (raw sample value divided by maxval).
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned maxval = 255;
    std::vector<double> pixels;  // row-major

    double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// One flattened training/test frame with its ground-truth class.
struct LabeledSample {
    std::string label;
    std::string source_path;
    Vector vector;
};

/// Deterministic, sorted view of a dataset directory.
struct DatasetManifest {
    std::vector<LabeledSample> samples;  // sorted by (label, source_path)
    std::size_t n = 0;                   // configured side length
};

/// Parse a PNM byte stream. P2/P5 graymaps load directly; P3/P6 pixmaps are
/// reduced with the BT.601 luma weights 0.299/0.587/0.114 before the maxval
/// division. Comments are accepted in header whitespace; samples are 2-byte
/// big-endian when maxval exceeds 255.
GrayImage read_pnm(std::string_view bytes);
GrayImage read_pnm_file(const std::filesystem::path& path);

/// Serialize to P5 (binary, default) or P2 (ASCII), quantizing each intensity
/// back to round(value * maxval). Exists mainly to build test fixtures.
std::string write_pnm(const GrayImage& img, bool ascii = false);
void write_pnm_file(const std::filesystem::path& path, const GrayImage& img, bool ascii = false);

/// Corner-aligned bilinear resample: output x maps to x*(w_in-1)/(w_out-1),
/// and to 0 when w_out == 1. Intensities stay real; no re-quantization.
GrayImage resize_bilinear(const GrayImage& img, std::size_t out_width, std::size_t out_height);
GrayImage resize_bilinear(const GrayImage& img, std::size_t n);

/// Row-major scan of a square image into a length-n^2 vector.
Vector flatten(const GrayImage& img);

/// Inverse of flatten for an n x n image. Values must lie in [0,1].
GrayImage unflatten(const Vector& v, std::size_t n, unsigned maxval = 255);

/// Walk <root>/<label>/*.{pgm,ppm,pnm}, resize every frame to n x n, flatten,
/// and return samples sorted by (label, source_path) regardless of filesystem
/// enumeration order.
DatasetManifest scan_dataset(const std::filesystem::path& root, std::size_t n);

}  // namespace eigengesture
