#pragma once

// Shared fixtures and oracles for the unit and acceptance suites. Kept free of
// any test-framework includes so both binaries can use it.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "eigengesture/imageio.hpp"
#include "eigengesture/linalg.hpp"

namespace testutil {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        const auto tick = std::chrono::steady_clock::now().time_since_epoch().count();
        path_ = std::filesystem::temp_directory_path() /
                ("eigengesture-test-" + std::to_string(tick % 1000000000) + "-" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline std::string ascii_pgm(std::size_t w, std::size_t h, unsigned maxval,
                             const std::vector<unsigned>& samples) {
    std::string s =
        "P2\n" + std::to_string(w) + " " + std::to_string(h) + "\n" + std::to_string(maxval) + "\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        s += std::to_string(samples[i]);
        s += ((i + 1) % w == 0) ? '\n' : ' ';
    }
    return s;
}

inline eigengesture::Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                          double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    eigengesture::Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = dist(rng);
        }
    }
    return m;
}

inline eigengesture::Matrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
    eigengesture::Matrix m = random_matrix(rng, n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r + 1; c < n; ++c) {
            m(c, r) = m(r, c);
        }
    }
    return m;
}

inline eigengesture::Vector random_vector(std::mt19937_64& rng, std::size_t len, double lo = 0.0,
                                          double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    eigengesture::Vector v(len);
    for (std::size_t i = 0; i < len; ++i) {
        v[i] = dist(rng);
    }
    return v;
}

// Textbook triple-loop product, the oracle mat_mul is checked against.
inline eigengesture::Matrix naive_mat_mul(const eigengesture::Matrix& a,
                                          const eigengesture::Matrix& b) {
    eigengesture::Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            double sum = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                sum += a(i, k) * b(k, j);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

inline double max_abs_diff(const eigengesture::Matrix& a, const eigengesture::Matrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.elems().size(); ++i) {
        worst = std::max(worst, std::abs(a.elems()[i] - b.elems()[i]));
    }
    return worst;
}

inline double max_abs_diff(const eigengesture::Vector& a, const eigengesture::Vector& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.len(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

// Manifest built straight from in-memory vectors; paths are synthetic.
inline eigengesture::DatasetManifest make_manifest(
    std::vector<std::pair<std::string, eigengesture::Vector>> items, std::size_t n) {
    eigengesture::DatasetManifest manifest;
    manifest.n = n;
    for (std::size_t i = 0; i < items.size(); ++i) {
        eigengesture::LabeledSample sample;
        sample.label = std::move(items[i].first);
        sample.source_path = "mem/" + std::to_string(i);
        sample.vector = std::move(items[i].second);
        manifest.samples.push_back(std::move(sample));
    }
    std::sort(manifest.samples.begin(), manifest.samples.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(a.label, a.source_path) < std::tie(b.label, b.source_path);
              });
    return manifest;
}

// The 3-pixel two-image corpus used throughout: I1=(1,0,1) labeled "a",
// I2=(3,2,1) labeled "b".
inline eigengesture::DatasetManifest worked_corpus() {
    return make_manifest({{"a", eigengesture::Vector{1.0, 0.0, 1.0}},
                          {"b", eigengesture::Vector{3.0, 2.0, 1.0}}},
                         0);
}

inline eigengesture::DatasetManifest random_corpus(std::mt19937_64& rng, std::size_t m,
                                                   std::size_t n2) {
    std::vector<std::pair<std::string, eigengesture::Vector>> items;
    items.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        items.emplace_back("g" + std::to_string(i % 3), random_vector(rng, n2));
    }
    return make_manifest(std::move(items), 0);
}

// ---- deterministic 32x32 shape corpus: 4 circles, 3 triangles, 3 waves ----

inline eigengesture::GrayImage circle_image(std::size_t n, double cx, double cy, double r) {
    eigengesture::GrayImage img;
    img.width = n;
    img.height = n;
    img.maxval = 255;
    img.pixels.resize(n * n);
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            const double d = std::hypot(static_cast<double>(x) - cx, static_cast<double>(y) - cy);
            img.pixels[y * n + x] = std::exp(-(d - r) * (d - r) / 8.0);
        }
    }
    return img;
}

inline eigengesture::GrayImage triangle_image(std::size_t n, double apex_y, double slope) {
    eigengesture::GrayImage img;
    img.width = n;
    img.height = n;
    img.maxval = 255;
    img.pixels.resize(n * n);
    const double cx = static_cast<double>(n) / 2.0;
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            const double dy = static_cast<double>(y) - apex_y;
            const bool inside = dy >= 0.0 && std::abs(static_cast<double>(x) - cx) <= slope * dy;
            img.pixels[y * n + x] = inside ? 0.9 : 0.05;
        }
    }
    return img;
}

inline eigengesture::GrayImage wave_image(std::size_t n, double freq, double phase) {
    eigengesture::GrayImage img;
    img.width = n;
    img.height = n;
    img.maxval = 255;
    img.pixels.resize(n * n);
    const double tau = 6.283185307179586;
    for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t x = 0; x < n; ++x) {
            const double s = std::sin(tau * freq * static_cast<double>(x) / static_cast<double>(n) +
                                      phase + 0.15 * static_cast<double>(y));
            img.pixels[y * n + x] = 0.5 + 0.45 * s;
        }
    }
    return img;
}

// 10 PGM frames across three labels under <root>/<label>/.
inline void write_shape_corpus(const std::filesystem::path& root) {
    namespace fs = std::filesystem;
    const std::size_t n = 32;
    fs::create_directories(root / "circle");
    fs::create_directories(root / "triangle");
    fs::create_directories(root / "wave");
    for (int i = 0; i < 4; ++i) {
        const auto img = circle_image(n, 16.0 + i, 16.0 - i, 6.0 + 1.5 * i);
        eigengesture::write_pnm_file(root / "circle" / ("c" + std::to_string(i) + ".pgm"), img,
                                     /*ascii=*/true);
    }
    for (int i = 0; i < 3; ++i) {
        const auto img = triangle_image(n, 4.0 + 3.0 * i, 0.5 + 0.2 * i);
        eigengesture::write_pnm_file(root / "triangle" / ("t" + std::to_string(i) + ".pgm"), img,
                                     /*ascii=*/true);
    }
    for (int i = 0; i < 3; ++i) {
        const auto img = wave_image(n, 2.0 + i, 0.7 * i);
        eigengesture::write_pnm_file(root / "wave" / ("w" + std::to_string(i) + ".pgm"), img,
                                     /*ascii=*/true);
    }
}

}  // namespace testutil
