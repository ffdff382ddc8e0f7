#include "eigengesture/trainer.hpp"

#include <cmath>
#include <string>

namespace eigengesture {

namespace {

void check_config(const TrainConfig& config) {
    if (config.n == 0) {
        throw Error("side length must be at least 1");
    }
    switch (config.k_policy.kind) {
        case KPolicy::Kind::ExplicitK:
            if (config.k_policy.k == 0) {
                throw Error("explicit k must be at least 1");
            }
            break;
        case KPolicy::Kind::EnergyFraction:
            if (!(config.k_policy.fraction > 0.0 && config.k_policy.fraction <= 1.0)) {
                throw Error("energy fraction must lie in (0, 1]");
            }
            break;
    }
    if (!(config.threshold_factor > 0.0) || !std::isfinite(config.threshold_factor)) {
        throw Error("threshold factor must be finite and positive");
    }
}

}  // namespace

KPolicy KPolicy::explicit_k(std::size_t k) {
    KPolicy p;
    p.kind = Kind::ExplicitK;
    p.k = k;
    return p;
}

KPolicy KPolicy::energy_fraction(double fraction) {
    KPolicy p;
    p.kind = Kind::EnergyFraction;
    p.fraction = fraction;
    return p;
}

NormalizedTraining normalize_training(const DatasetManifest& manifest) {
    const std::size_t m = manifest.samples.size();
    if (m < 2) {
        throw TooFewSamples("training needs at least 2 images, got " + std::to_string(m));
    }
    const std::size_t n2 = manifest.samples.front().vector.len();
    Matrix stacked(n2, m);
    for (std::size_t j = 0; j < m; ++j) {
        const Vector& v = manifest.samples[j].vector;
        if (v.len() != n2) {
            throw DimensionMismatch("sample " + manifest.samples[j].source_path +
                                    " has length " + std::to_string(v.len()) + ", expected " +
                                    std::to_string(n2));
        }
        stacked.set_column(j, v);
    }
    NormalizedTraining out;
    out.mean = column_mean(stacked);
    out.a = Matrix(n2, m);
    for (std::size_t i = 0; i < n2; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out.a(i, j) = stacked(i, j) - out.mean[i];
        }
    }
    return out;
}

Matrix small_covariance(const Matrix& a) {
    const std::size_t n2 = a.rows();
    const std::size_t m = a.cols();
    Matrix c(m, m);
    // Row-by-row rank-1 accumulation; summation order is fixed, so the result
    // is deterministic and exactly symmetric.
    for (std::size_t l = 0; l < n2; ++l) {
        for (std::size_t i = 0; i < m; ++i) {
            const double ali = a(l, i);
            for (std::size_t j = i; j < m; ++j) {
                c(i, j) += ali * a(l, j);
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            c(i, j) = c(j, i);
        }
    }
    return c;
}

std::size_t significant_component_count(const EigenDecomposition& decomp, double drop_epsilon) {
    if (decomp.pairs.empty()) return 0;
    const double lambda_max = decomp.pairs.front().value;
    if (!(lambda_max > 0.0)) return 0;
    const double cutoff = drop_epsilon * lambda_max;
    std::size_t count = 0;
    while (count < decomp.pairs.size() && decomp.pairs[count].value > cutoff) ++count;
    return count;
}

Matrix lift_eigenvectors(const Matrix& a, const EigenDecomposition& decomp, double drop_epsilon) {
    const std::size_t survivors = significant_component_count(decomp, drop_epsilon);
    if (survivors == 0) {
        throw DegenerateTrainingSet(
            "every eigenvalue fell below the drop cutoff; the training set has no variance");
    }
    Matrix lifted(a.rows(), survivors);
    for (std::size_t j = 0; j < survivors; ++j) {
        lifted.set_column(j, unit_normalize(mat_vec(a, decomp.pairs[j].vector)));
    }
    return lifted;
}

std::size_t select_top_k(const std::vector<double>& eigenvalues, const KPolicy& policy) {
    if (eigenvalues.empty()) {
        throw DegenerateTrainingSet("component selection requires at least one eigenvalue");
    }
    if (policy.kind == KPolicy::Kind::ExplicitK) {
        return std::min(policy.k, eigenvalues.size());
    }
    double total = 0.0;
    for (double v : eigenvalues) total += v;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        cumulative += eigenvalues[i];
        if (cumulative / total >= policy.fraction) return i + 1;
    }
    return eigenvalues.size();
}

Vector project_weights(const Matrix& eigenimages, const Vector& mean, const Vector& image) {
    if (image.len() != eigenimages.rows() || mean.len() != eigenimages.rows()) {
        throw DimensionMismatch("projection expects length-" +
                                std::to_string(eigenimages.rows()) + " images");
    }
    return mat_transposed_vec(eigenimages, image - mean);
}

double compute_threshold(const Matrix& training_weights, double factor) {
    const std::size_t m = training_weights.cols();
    if (m < 2) {
        throw TooFewSamples("threshold needs at least 2 weight columns");
    }
    double max_dist = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const Vector wi = training_weights.column(i);
        for (std::size_t j = i + 1; j < m; ++j) {
            max_dist = std::max(max_dist, euclidean_distance(wi, training_weights.column(j)));
        }
    }
    return factor * max_dist;
}

EigenspaceModel train(const DatasetManifest& manifest, const TrainConfig& config,
                      TrainStats* stats) {
    check_config(config);
    auto normalized = normalize_training(manifest);
    const std::size_t m = normalized.a.cols();

    const EigenDecomposition decomp = jacobi_eigh(small_covariance(normalized.a));
    std::size_t available = significant_component_count(decomp, config.eigen_drop_epsilon);
    if (available == 0) {
        throw DegenerateTrainingSet(
            "training images are identical up to the mean; no principal components remain");
    }
    // Mean-centering forces rank <= m-1; cap so the invariant holds even for
    // an epsilon too small to drop the zero mode.
    available = std::min(available, m - 1);

    std::vector<double> surviving(available);
    for (std::size_t i = 0; i < available; ++i) surviving[i] = decomp.pairs[i].value;

    const std::size_t k = select_top_k(surviving, config.k_policy);
    const Matrix lifted = lift_eigenvectors(normalized.a, decomp, config.eigen_drop_epsilon);

    EigenspaceModel model;
    model.n2 = normalized.a.rows();
    model.mean = normalized.mean;
    model.eigenimages = lifted.first_columns(k);
    model.k = k;
    model.eigenvalues.assign(surviving.begin(), surviving.begin() + static_cast<long>(k));
    model.training_weights = Matrix(k, m);
    model.labels.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        model.labels.push_back(manifest.samples[j].label);
        model.training_weights.set_column(
            j, project_weights(model.eigenimages, model.mean, manifest.samples[j].vector));
    }
    model.threshold = compute_threshold(model.training_weights, config.threshold_factor);
    model.config_echo = config;

    if (auto violation = model_invariant_violation(model)) {
        throw Error("trained model failed its own invariants: " + *violation);
    }
    // Cross-check the stored weights against the batched product U^T A.
    const Matrix batched = mat_mul(model.eigenimages.transposed(), normalized.a);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (std::abs(batched(i, j) - model.training_weights(i, j)) > 1e-12) {
                throw Error("trained model failed its own invariants: weight mismatch at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }

    if (stats != nullptr) {
        stats->available_components = available;
        stats->total_energy = 0.0;
        for (double v : surviving) stats->total_energy += v;
        stats->captured_energy = 0.0;
        for (double v : model.eigenvalues) stats->captured_energy += v;
    }
    return model;
}

std::optional<std::string> model_invariant_violation(const EigenspaceModel& model) {
    const std::size_t n2 = model.n2;
    const std::size_t k = model.k;
    const std::size_t m = model.labels.size();

    if (n2 == 0) return "n2 is zero";
    if (k == 0) return "k is zero";
    if (m < 2) return "fewer than 2 training columns";
    if (k > m - 1) return "k exceeds m-1";
    if (model.mean.len() != n2) return "mean length does not match n2";
    if (model.eigenimages.rows() != n2 || model.eigenimages.cols() != k) {
        return "eigenimage bank is not n2 x k";
    }
    if (model.training_weights.rows() != k || model.training_weights.cols() != m) {
        return "training weights are not k x m";
    }
    if (model.eigenvalues.size() != k) return "eigenvalue count does not match k";
    if (!(model.threshold >= 0.0) || !std::isfinite(model.threshold)) {
        return "threshold is negative or not finite";
    }
    for (const auto& label : model.labels) {
        if (label.empty()) return "empty label";
    }
    for (double x : model.mean) {
        if (!std::isfinite(x)) return "non-finite mean entry";
    }
    for (double x : model.eigenimages.elems()) {
        if (!std::isfinite(x)) return "non-finite eigenimage entry";
    }
    for (double x : model.training_weights.elems()) {
        if (!std::isfinite(x)) return "non-finite weight entry";
    }
    for (std::size_t i = 0; i < k; ++i) {
        const double v = model.eigenvalues[i];
        if (!(v > 0.0) || !std::isfinite(v)) return "eigenvalue not strictly positive";
        if (i > 0 && v > model.eigenvalues[i - 1]) return "eigenvalues not non-increasing";
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Vector ui = model.eigenimages.column(i);
        if (std::abs(norm2(ui) - 1.0) > 1e-9) return "eigenimage column is not unit norm";
        for (std::size_t j = i + 1; j < k; ++j) {
            if (std::abs(dot(ui, model.eigenimages.column(j))) > 1e-6) {
                return "eigenimage columns are not orthogonal";
            }
        }
    }
    return std::nullopt;
}

}  // namespace eigengesture
