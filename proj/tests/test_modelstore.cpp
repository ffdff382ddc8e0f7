#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "eigengesture/modelstore.hpp"
#include "eigengesture/trainer.hpp"
#include "helpers.hpp"

using namespace eigengesture;

namespace {

EigenspaceModel trained_worked_model() {
    TrainConfig config;
    config.n = 1;
    return train(testutil::worked_corpus(), config);
}

std::string saved_bytes(const EigenspaceModel& model) {
    std::ostringstream sink;
    save_model(model, sink);
    return sink.str();
}

EigenspaceModel load_bytes(const std::string& bytes) {
    std::istringstream source(bytes);
    return load_model(source);
}

void check_equal(const EigenspaceModel& a, const EigenspaceModel& b) {
    CHECK(a.n2 == b.n2);
    CHECK(a.k == b.k);
    CHECK(a.mean == b.mean);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.eigenimages == b.eigenimages);
    CHECK(a.training_weights == b.training_weights);
    CHECK(a.threshold == b.threshold);
    CHECK(a.labels == b.labels);
}

}  // namespace

TEST_CASE("save_model writes the documented byte count and header") {
    const EigenspaceModel model = trained_worked_model();
    std::ostringstream sink;
    const std::size_t written = save_model(model, sink);
    const std::string bytes = sink.str();

    // 20 header + 8*(mean 3 + values 1 + images 3 + weights 2 + threshold 1)
    // + 2*(4+1) label entries + 4 CRC.
    CHECK(written == 114);
    CHECK(bytes.size() == 114);
    CHECK(bytes.substr(0, 4) == "EGSP");
    const std::string header_counts = bytes.substr(4, 16);
    const char expected[16] = {1, 0, 0, 0, 3, 0, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0};
    CHECK(header_counts == std::string(expected, 16));
}

TEST_CASE("a model round-trips bit for bit") {
    const EigenspaceModel model = trained_worked_model();
    const EigenspaceModel back = load_bytes(saved_bytes(model));
    check_equal(model, back);
    CHECK(back.config_echo.k_policy.kind == KPolicy::Kind::ExplicitK);
    CHECK(back.config_echo.k_policy.k == model.k);
}

TEST_CASE("randomized models round-trip bit for bit") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        TrainConfig config;
        config.n = 1;
        config.k_policy = KPolicy::energy_fraction(1.0);
        const auto manifest = testutil::random_corpus(rng, 2 + rng() % 5, 4 + rng() % 20);
        const EigenspaceModel model = train(manifest, config);
        check_equal(model, load_bytes(saved_bytes(model)));
    }
}

TEST_CASE("labels keep their exact bytes, including multibyte UTF-8") {
    EigenspaceModel model = trained_worked_model();
    model.labels = {"gr\xC3\xB6\xC3\x9F" "e", "b"};
    const EigenspaceModel back = load_bytes(saved_bytes(model));
    CHECK(back.labels == model.labels);
}

TEST_CASE("load_model rejects a wrong magic") {
    std::string bytes = saved_bytes(trained_worked_model());
    bytes.replace(0, 4, "XXXX");
    CHECK_THROWS_AS(load_bytes(bytes), BadMagic);
}

TEST_CASE("load_model rejects unknown versions") {
    std::string bytes = saved_bytes(trained_worked_model());
    bytes[4] = 2;
    CHECK_THROWS_AS(load_bytes(bytes), UnsupportedVersion);
}

TEST_CASE("any flipped payload byte reads as corruption") {
    const std::string bytes = saved_bytes(trained_worked_model());
    for (std::size_t pos : {std::size_t{8}, std::size_t{16}, std::size_t{23}, std::size_t{57},
                            std::size_t{100}, std::size_t{111}, bytes.size() - 1}) {
        std::string mutated = bytes;
        mutated[pos] = static_cast<char>(mutated[pos] ^ 0x5a);
        CHECK_THROWS_AS(load_bytes(mutated), CorruptFile);
    }
}

TEST_CASE("load_model distinguishes truncation from corruption") {
    const std::string bytes = saved_bytes(trained_worked_model());
    CHECK_THROWS_AS(load_bytes(""), Truncated);
    CHECK_THROWS_AS(load_bytes(bytes.substr(0, 12)), Truncated);
    CHECK_THROWS_AS(load_bytes(bytes.substr(0, 20)), Truncated);
    // Once the header and CRC footer fit, a cut tail is indistinguishable
    // from corruption and reports as such.
    CHECK_THROWS_AS(load_bytes(bytes.substr(0, 60)), CorruptFile);
    CHECK_THROWS_AS(load_bytes(bytes + "x"), CorruptFile);
}

TEST_CASE("load_model re-checks the structural model invariants") {
    EigenspaceModel model = trained_worked_model();
    Vector col = model.eigenimages.column(0);
    for (std::size_t i = 0; i < col.len(); ++i) {
        col[i] *= 2.0;  // breaks the unit-norm invariant but not the CRC
    }
    model.eigenimages.set_column(0, col);
    CHECK_THROWS_AS(load_bytes(saved_bytes(model)), CorruptFile);

    EigenspaceModel unlabeled = trained_worked_model();
    unlabeled.labels = {"", "b"};
    CHECK_THROWS_AS(load_bytes(saved_bytes(unlabeled)), CorruptFile);
}

TEST_CASE("save_model surfaces sink failures") {
    std::ostringstream sink;
    sink.setstate(std::ios::badbit);
    CHECK_THROWS_AS(save_model(trained_worked_model(), sink), SinkFailure);

    testutil::TempDir dir;
    CHECK_THROWS_AS(save_model_file(trained_worked_model(), dir.path() / "no" / "such" / "dir.egs"),
                    SinkFailure);
}

TEST_CASE("model files round-trip through the filesystem") {
    testutil::TempDir dir;
    const auto path = dir.path() / "m.egs";
    const EigenspaceModel model = trained_worked_model();
    const std::size_t written = save_model_file(model, path);
    CHECK(written == std::filesystem::file_size(path));
    check_equal(model, load_model_file(path));

    CHECK_THROWS_AS(load_model_file(dir.path() / "missing.egs"), ModelFileError);
}
