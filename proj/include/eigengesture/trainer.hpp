#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eigengesture/imageio.hpp"
#include "eigengesture/linalg.hpp"

namespace eigengesture {

/// How many principal components to keep: an explicit count, or the smallest
/// count whose eigenvalues capture a given fraction of the total energy.
struct KPolicy {
    enum class Kind { ExplicitK, EnergyFraction };

    Kind kind = Kind::EnergyFraction;
    std::size_t k = 0;
    double fraction = 0.95;

    static KPolicy explicit_k(std::size_t k);
    static KPolicy energy_fraction(double fraction);
};

struct TrainConfig {
    std::size_t n = 64;               // square side length for every frame
    KPolicy k_policy;                 // defaults to EnergyFraction(0.95)
    double threshold_factor = 0.5;    // theta = factor * max pairwise training distance
    double eigen_drop_epsilon = 1e-12;  // relative cutoff for numerically-zero modes
};

/// Trained eigenspace: the mean image, K unit-norm eigenimages, the stored
/// training weight columns, and the acceptance threshold.
struct EigenspaceModel {
    std::size_t n2 = 0;                  // pixels per image
    Vector mean;                         // length n2
    Matrix eigenimages;                  // n2 x k, orthonormal columns
    std::size_t k = 0;
    std::vector<double> eigenvalues;     // k values, strictly positive, non-increasing
    std::vector<std::string> labels;     // one per training column, manifest order
    Matrix training_weights;             // k x m, column j is the weight vector of image j
    double threshold = 0.0;
    TrainConfig config_echo;
};

struct NormalizedTraining {
    Vector mean;  // the average image vector
    Matrix a;     // n2 x m, column i holds image_i - mean
};

/// Side information train() can report beyond the model itself.
struct TrainStats {
    std::size_t available_components = 0;  // positive modes surviving the drop cutoff
    double total_energy = 0.0;             // sum of surviving eigenvalues
    double captured_energy = 0.0;          // sum of the k selected eigenvalues
};

/// Stack the manifest vectors, compute the mean image, and mean-center every
/// column. Throws TooFewSamples below two images.
NormalizedTraining normalize_training(const DatasetManifest& manifest);

/// The reduced m x m covariance A^T A (no 1/m factor; eigenvectors and their
/// ordering are scale-invariant).
Matrix small_covariance(const Matrix& a);

/// Number of leading eigenpairs with value above drop_epsilon * lambda_max.
std::size_t significant_component_count(const EigenDecomposition& decomp, double drop_epsilon);

/// Lift the surviving low-dimensional eigenvectors back to image space:
/// U_i = A * V_i, then unit- and sign-normalize each column. Throws
/// DegenerateTrainingSet when every eigenvalue falls below the cutoff.
Matrix lift_eigenvectors(const Matrix& a, const EigenDecomposition& decomp,
                         double drop_epsilon = 1e-12);

/// Resolve a KPolicy against a descending positive eigenvalue list.
/// Result is always in [1, eigenvalues.size()].
std::size_t select_top_k(const std::vector<double>& eigenvalues, const KPolicy& policy);

/// Weight vector of an image: U^T (image - mean).
Vector project_weights(const Matrix& eigenimages, const Vector& mean, const Vector& image);

/// theta = factor * max pairwise Euclidean distance among training weight columns.
double compute_threshold(const Matrix& training_weights, double factor);

/// Full training pipeline: mean-center, reduced covariance, Jacobi
/// eigendecomposition, component selection, lifting, per-image projection,
/// threshold. Deterministic: identical inputs give a bit-identical model.
EigenspaceModel train(const DatasetManifest& manifest, const TrainConfig& config,
                      TrainStats* stats = nullptr);

/// Check every structural model invariant; returns a description of the first
/// violation, or nullopt when the model is sound.
std::optional<std::string> model_invariant_violation(const EigenspaceModel& model);

}  // namespace eigengesture
