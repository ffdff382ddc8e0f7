#include "eigengesture/recognizer.hpp"

#include <string>
#include <unordered_set>

namespace eigengesture {

Decision Decision::make_known(std::string label, std::size_t index, double distance) {
    Decision d;
    d.kind = Kind::Known;
    d.label = std::move(label);
    d.matched_index = index;
    d.distance = distance;
    return d;
}

Decision Decision::make_unknown(double distance) {
    Decision d;
    d.kind = Kind::Unknown;
    d.distance = distance;
    return d;
}

Decision recognize(const EigenspaceModel& model, const Vector& image) {
    if (image.len() != model.n2) {
        throw DimensionMismatch("test image has length " + std::to_string(image.len()) +
                                ", model expects " + std::to_string(model.n2));
    }
    const Vector weights = project_weights(model.eigenimages, model.mean, image);

    std::size_t best = 0;
    double best_dist = euclidean_distance(weights, model.training_weights.column(0));
    for (std::size_t j = 1; j < model.training_weights.cols(); ++j) {
        const double d = euclidean_distance(weights, model.training_weights.column(j));
        if (d < best_dist) {  // strict: ties keep the lowest index
            best_dist = d;
            best = j;
        }
    }
    if (best_dist <= model.threshold) {
        return Decision::make_known(model.labels[best], best, best_dist);
    }
    return Decision::make_unknown(best_dist);
}

EvaluationResult evaluate(const EigenspaceModel& model, const DatasetManifest& testset) {
    std::unordered_set<std::string> known_labels(model.labels.begin(), model.labels.end());

    EvaluationResult result;
    result.decisions.reserve(testset.samples.size());
    for (const auto& sample : testset.samples) {
        Decision decision = recognize(model, sample.vector);
        if (decision.known()) {
            if (decision.label == sample.label) {
                ++result.tally.true_positive;
            } else {
                ++result.tally.false_positive;
            }
        } else {
            if (known_labels.contains(sample.label)) {
                ++result.tally.false_negative;
            } else {
                ++result.tally.true_negative;
            }
        }
        result.decisions.push_back(std::move(decision));
    }
    return result;
}

}  // namespace eigengesture
