#include "eigengesture/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eigengesture/errors.hpp"
#include "eigengesture/imageio.hpp"
#include "eigengesture/metrics.hpp"
#include "eigengesture/modelstore.hpp"
#include "eigengesture/recognizer.hpp"
#include "eigengesture/trainer.hpp"

namespace eigengesture::cli {

namespace {

struct TrainArgs {
    std::string data;
    std::string out;
    std::size_t size = 64;
    double energy = 0.95;
    std::size_t k = 0;
    bool k_given = false;
    double threshold_factor = 0.5;
};

struct BenchArgs {
    std::size_t pixels = 0;
    std::size_t images = 0;
    bool direct = false;
    bool force = false;
    std::uint64_t seed = 42;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Models trained by this tool always hold square frames; reject anything else
// before trying to resample input images against it.
std::size_t square_side(const EigenspaceModel& model) {
    const auto side =
        static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(model.n2))));
    if (side * side != model.n2) {
        throw Error("model stores " + std::to_string(model.n2) +
                    " pixels per image, which is not a perfect square");
    }
    return side;
}

Vector load_frame(const std::filesystem::path& path, std::size_t side) {
    return flatten(resize_bilinear(read_pnm_file(path), side));
}

int run_train(const TrainArgs& args, std::ostream& out) {
    TrainConfig config;
    config.n = args.size;
    config.threshold_factor = args.threshold_factor;
    config.k_policy =
        args.k_given ? KPolicy::explicit_k(args.k) : KPolicy::energy_fraction(args.energy);

    const DatasetManifest manifest = scan_dataset(args.data, config.n);
    TrainStats stats;
    const EigenspaceModel model = train(manifest, config, &stats);
    save_model_file(model, args.out);

    out << "images=" << manifest.samples.size() << '\n';
    out << "k=" << model.k << '\n';
    out << "energy=" << format_double(stats.captured_energy / stats.total_energy) << '\n';
    out << "threshold=" << format_double(model.threshold) << '\n';
    out << "model=" << args.out << '\n';
    return kExitOk;
}

int run_recognize(const std::string& model_path, const std::string& image_path,
                  std::ostream& out) {
    const EigenspaceModel model = load_model_file(model_path);
    const Vector frame = load_frame(image_path, square_side(model));
    const Decision decision = recognize(model, frame);
    if (decision.known()) {
        out << "KNOWN " << decision.label << " distance=" << format_double(decision.distance)
            << '\n';
        return kExitOk;
    }
    out << "UNKNOWN distance=" << format_double(decision.distance) << '\n';
    return kExitUnknownGesture;
}

int run_evaluate(const std::string& model_path, const std::string& data_dir, bool json,
                 std::ostream& out) {
    const EigenspaceModel model = load_model_file(model_path);
    const DatasetManifest testset = scan_dataset(data_dir, square_side(model));
    const EvaluationResult result = evaluate(model, testset);
    const MetricsReport report = compute_metrics(result.tally);
    if (json) {
        out << metrics_json(report) << '\n';
    } else {
        out << metrics_text(report);
    }
    return kExitOk;
}

int run_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    if (args.direct && args.pixels > kDirectBenchGuard && !args.force) {
        err << "bench: refusing the direct " << args.pixels << "x" << args.pixels
            << " covariance path (guard is " << kDirectBenchGuard
            << " pixels); pass --force to run it anyway\n";
        return kExitUsage;
    }

    std::mt19937_64 rng(args.seed);
    std::uniform_real_distribution<double> intensity(0.0, 1.0);
    Matrix a(args.pixels, args.images);
    for (std::size_t r = 0; r < args.pixels; ++r) {
        for (std::size_t c = 0; c < args.images; ++c) {
            a(r, c) = intensity(rng);
        }
    }

    out << "pixels=" << args.pixels << '\n';
    out << "images=" << args.images << '\n';

    auto start = std::chrono::steady_clock::now();
    const Matrix small = small_covariance(a);
    const double trick_build = seconds_since(start);
    auto mid = std::chrono::steady_clock::now();
    const EigenDecomposition trick = jacobi_eigh(small);
    const double trick_eigh = seconds_since(mid);
    out << "trick_build_seconds=" << format_double(trick_build) << '\n';
    out << "trick_eigh_seconds=" << format_double(trick_eigh) << '\n';
    out << "trick_total_seconds=" << format_double(trick_build + trick_eigh) << '\n';
    out << "trick_lambda_max=" << format_double(trick.pairs.front().value) << '\n';

    if (args.direct) {
        start = std::chrono::steady_clock::now();
        const Matrix big = mat_mul(a, a.transposed());
        const double direct_build = seconds_since(start);
        mid = std::chrono::steady_clock::now();
        const EigenDecomposition direct = jacobi_eigh(big);
        const double direct_eigh = seconds_since(mid);
        out << "direct_build_seconds=" << format_double(direct_build) << '\n';
        out << "direct_eigh_seconds=" << format_double(direct_eigh) << '\n';
        out << "direct_total_seconds=" << format_double(direct_build + direct_eigh) << '\n';
        out << "direct_lambda_max=" << format_double(direct.pairs.front().value) << '\n';
    }
    return kExitOk;
}

int run_inspect(const std::string& model_path, std::ostream& out) {
    const EigenspaceModel model = load_model_file(model_path);
    out << "magic=EGSP\n";
    out << "version=" << kModelVersion << '\n';
    out << "n2=" << model.n2 << '\n';
    out << "m=" << model.labels.size() << '\n';
    out << "k=" << model.k << '\n';
    out << "threshold=" << format_double(model.threshold) << '\n';
    out << "labels=";
    for (std::size_t i = 0; i < model.labels.size(); ++i) {
        out << (i == 0 ? "" : " ") << model.labels[i];
    }
    out << '\n';
    return kExitOk;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"PCA eigengesture trainer and recognizer"};
    app.require_subcommand(1);

    TrainArgs targs;
    auto* train_cmd = app.add_subcommand("train", "Train an eigenspace from <data>/<label>/*.pgm");
    train_cmd->add_option("--data", targs.data, "dataset root directory")->required();
    train_cmd->add_option("--out", targs.out, "model file to write (EGSP v1)")->required();
    train_cmd->add_option("--size", targs.size, "square side every frame is resized to")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    auto* energy_opt =
        train_cmd
            ->add_option("--energy", targs.energy, "keep the smallest K reaching this energy share")
            ->capture_default_str();
    auto* k_opt = train_cmd->add_option("--k", targs.k, "keep exactly K components")
                      ->check(CLI::PositiveNumber);
    k_opt->excludes(energy_opt);
    train_cmd
        ->add_option("--threshold-factor", targs.threshold_factor,
                     "theta = factor * max pairwise training weight distance")
        ->capture_default_str();

    std::string model_path;
    std::string image_path;
    std::string data_dir;
    bool json = false;
    auto* recog_cmd = app.add_subcommand("recognize", "Classify one image against a model");
    recog_cmd->add_option("--model", model_path, "EGSP model file")->required();
    recog_cmd->add_option("--image", image_path, "PNM image to classify")->required();

    auto* eval_cmd = app.add_subcommand("evaluate", "Score a labeled dataset against a model");
    eval_cmd->add_option("--model", model_path, "EGSP model file")->required();
    eval_cmd->add_option("--data", data_dir, "labeled testset root directory")->required();
    eval_cmd->add_flag("--json", json, "emit the report as JSON");

    BenchArgs bargs;
    auto* bench_cmd =
        app.add_subcommand("bench", "Time the reduced covariance path on synthetic data");
    bench_cmd->add_option("--pixels", bargs.pixels, "pixels per synthetic image (N^2)")
        ->required()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--images", bargs.images, "synthetic image count (M)")
        ->required()
        ->check(CLI::PositiveNumber);
    bench_cmd->add_flag("--direct", bargs.direct, "also time the full N^2 x N^2 path");
    bench_cmd->add_flag("--force", bargs.force, "run the direct path even above the guard");
    bench_cmd->add_option("--seed", bargs.seed, "RNG seed for the synthetic data")
        ->capture_default_str();

    auto* inspect_cmd = app.add_subcommand("inspect", "Print the header of a model file");
    inspect_cmd->add_option("--model", model_path, "EGSP model file")->required();

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("eigengesture");
        for (const auto& arg : args) {
            argv.push_back(arg.c_str());
        }
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);  // --help lands here; prints to out, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*train_cmd) {
            targs.k_given = k_opt->count() > 0;
            if (!targs.k_given && (targs.energy <= 0.0 || targs.energy > 1.0)) {
                err << "train: --energy must lie in (0, 1]\n";
                return kExitUsage;
            }
            if (!(targs.threshold_factor > 0.0) || !std::isfinite(targs.threshold_factor)) {
                err << "train: --threshold-factor must be finite and positive\n";
                return kExitUsage;
            }
            return run_train(targs, out);
        }
        if (*recog_cmd) {
            return run_recognize(model_path, image_path, out);
        }
        if (*eval_cmd) {
            return run_evaluate(model_path, data_dir, json, out);
        }
        if (*bench_cmd) {
            return run_bench(bargs, out, err);
        }
        if (*inspect_cmd) {
            return run_inspect(model_path, out);
        }
        err << "no command selected\n";  // require_subcommand(1) makes this unreachable
        return kExitUsage;
    } catch (const NoConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kExitTraining;
    } catch (const TooFewSamples& e) {
        err << "error: " << e.what() << '\n';
        return kExitTraining;
    } catch (const DegenerateTrainingSet& e) {
        err << "error: " << e.what() << '\n';
        return kExitTraining;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

}  // namespace eigengesture::cli
