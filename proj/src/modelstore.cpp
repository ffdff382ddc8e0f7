#include "eigengesture/modelstore.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include <zlib.h>

namespace eigengesture {

namespace {

constexpr std::size_t kHeaderSize = 20;
constexpr std::size_t kMinFileSize = kHeaderSize + 4;

void put_u32(std::string& buf, std::uint32_t v) {
    buf.push_back(static_cast<char>(v & 0xff));
    buf.push_back(static_cast<char>((v >> 8) & 0xff));
    buf.push_back(static_cast<char>((v >> 16) & 0xff));
    buf.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_f64(std::string& buf, double d) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    for (int shift = 0; shift < 64; shift += 8) {
        buf.push_back(static_cast<char>((bits >> shift) & 0xff));
    }
}

std::uint32_t get_u32(const std::string& buf, std::size_t pos) {
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) {
        v = (v << 8) | static_cast<unsigned char>(buf[pos + static_cast<std::size_t>(i)]);
    }
    return v;
}

double get_f64(const std::string& buf, std::size_t pos) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) {
        bits = (bits << 8) | static_cast<unsigned char>(buf[pos + static_cast<std::size_t>(i)]);
    }
    return std::bit_cast<double>(bits);
}

std::uint32_t crc_of(const std::string& buf, std::size_t len) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(len));
    return static_cast<std::uint32_t>(crc);
}

// Sequential reader over the validated byte buffer.
struct Reader {
    const std::string& buf;
    std::size_t pos = kHeaderSize;
    std::size_t payload_end;  // one past the last byte covered by the CRC

    double f64() {
        if (payload_end - pos < 8) throw Truncated("model file ends inside a double");
        const double v = get_f64(buf, pos);
        pos += 8;
        return v;
    }

    std::uint32_t u32() {
        if (payload_end - pos < 4) throw Truncated("model file ends inside an integer");
        const std::uint32_t v = get_u32(buf, pos);
        pos += 4;
        return v;
    }

    std::string bytes(std::size_t count) {
        if (payload_end - pos < count) throw Truncated("model file ends inside a label");
        std::string s = buf.substr(pos, count);
        pos += count;
        return s;
    }
};

}  // namespace

std::size_t save_model(const EigenspaceModel& model, std::ostream& sink) {
    const auto n2 = static_cast<std::uint32_t>(model.n2);
    const auto m = static_cast<std::uint32_t>(model.labels.size());
    const auto k = static_cast<std::uint32_t>(model.k);

    std::string buf;
    buf.reserve(kMinFileSize + 8 * (static_cast<std::size_t>(n2) * k + k * m + n2 + k + 1));
    buf.append(kModelMagic.data(), kModelMagic.size());
    put_u32(buf, kModelVersion);
    put_u32(buf, n2);
    put_u32(buf, m);
    put_u32(buf, k);

    for (double x : model.mean) put_f64(buf, x);
    for (double x : model.eigenvalues) put_f64(buf, x);
    for (std::uint32_t j = 0; j < k; ++j) {
        for (std::uint32_t i = 0; i < n2; ++i) put_f64(buf, model.eigenimages(i, j));
    }
    for (std::uint32_t j = 0; j < m; ++j) {
        for (std::uint32_t i = 0; i < k; ++i) put_f64(buf, model.training_weights(i, j));
    }
    put_f64(buf, model.threshold);
    for (const auto& label : model.labels) {
        put_u32(buf, static_cast<std::uint32_t>(label.size()));
        buf.append(label);
    }
    put_u32(buf, crc_of(buf, buf.size()));

    sink.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!sink) {
        throw SinkFailure("failed to write model bytes to sink");
    }
    return buf.size();
}

EigenspaceModel load_model(std::istream& source) {
    std::string buf(std::istreambuf_iterator<char>(source), {});
    if (buf.size() < kMinFileSize) {
        throw Truncated("model file is only " + std::to_string(buf.size()) + " bytes");
    }
    if (std::memcmp(buf.data(), kModelMagic.data(), kModelMagic.size()) != 0) {
        throw BadMagic("not an EGSP model file");
    }
    const std::uint32_t version = get_u32(buf, 4);
    if (version != kModelVersion) {
        throw UnsupportedVersion("EGSP version " + std::to_string(version) +
                                 " is not supported (expected " + std::to_string(kModelVersion) +
                                 ")");
    }
    const std::uint32_t stored_crc = get_u32(buf, buf.size() - 4);
    if (stored_crc != crc_of(buf, buf.size() - 4)) {
        throw CorruptFile("CRC32 mismatch; the model file is corrupted");
    }

    const std::size_t n2 = get_u32(buf, 8);
    const std::size_t m = get_u32(buf, 12);
    const std::size_t k = get_u32(buf, 16);
    // Reject counts whose payload could not possibly fit before allocating anything.
    // The division form keeps the products from overflowing.
    const std::size_t max_doubles = (buf.size() - kMinFileSize) / 8;
    if (n2 == 0 || m == 0 || k == 0 || n2 > max_doubles || k > max_doubles ||
        n2 > max_doubles / k || k > max_doubles / m ||
        n2 + k + n2 * k + k * m + 1 > max_doubles) {
        throw CorruptFile("header counts do not fit the file size");
    }

    Reader r{buf, kHeaderSize, buf.size() - 4};
    EigenspaceModel model;
    model.n2 = n2;
    model.k = k;
    model.mean = Vector(n2);
    for (std::size_t i = 0; i < n2; ++i) model.mean[i] = r.f64();
    model.eigenvalues.resize(k);
    for (std::size_t i = 0; i < k; ++i) model.eigenvalues[i] = r.f64();
    model.eigenimages = Matrix(n2, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < n2; ++i) model.eigenimages(i, j) = r.f64();
    }
    model.training_weights = Matrix(k, m);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < k; ++i) model.training_weights(i, j) = r.f64();
    }
    model.threshold = r.f64();
    model.labels.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::uint32_t len = r.u32();
        model.labels.push_back(r.bytes(len));
    }
    if (r.pos != r.payload_end) {
        throw CorruptFile("trailing bytes after the label table");
    }

    // The file carries no TrainConfig; echo what can be reconstructed.
    model.config_echo.n = [n2] {
        const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n2))));
        return side * side == n2 ? side : n2;
    }();
    model.config_echo.k_policy = KPolicy::explicit_k(k);

    if (auto violation = model_invariant_violation(model)) {
        throw CorruptFile("model invariant violated: " + *violation);
    }
    return model;
}

std::size_t save_model_file(const EigenspaceModel& model, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw SinkFailure("cannot open " + path.string() + " for writing");
    }
    return save_model(model, out);
}

EigenspaceModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ModelFileError("cannot open " + path.string());
    }
    return load_model(in);
}

}  // namespace eigengesture
