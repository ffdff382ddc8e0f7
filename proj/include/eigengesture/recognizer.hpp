#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "eigengesture/imageio.hpp"
#include "eigengesture/trainer.hpp"

namespace eigengesture {

/// Outcome of matching one image against the model. distance is the minimum
/// weight-space distance found; Known iff it is within the model threshold.
struct Decision {
    enum class Kind { Known, Unknown };

    Kind kind = Kind::Unknown;
    std::string label;              // Known only
    std::size_t matched_index = 0;  // Known only
    double distance = 0.0;

    bool known() const { return kind == Kind::Known; }

    static Decision make_known(std::string label, std::size_t index, double distance);
    static Decision make_unknown(double distance);
};

struct ConfusionTally {
    std::uint64_t true_positive = 0;
    std::uint64_t true_negative = 0;
    std::uint64_t false_positive = 0;
    std::uint64_t false_negative = 0;

    std::uint64_t total() const {
        return true_positive + true_negative + false_positive + false_negative;
    }
};

struct EvaluationResult {
    ConfusionTally tally;
    std::vector<Decision> decisions;  // one per testset sample, manifest order
};

/// Project the image and compare against every stored training weight column.
/// Nearest neighbor wins, ties broken by lowest index; distances at or below
/// the threshold are accepted as Known.
Decision recognize(const EigenspaceModel& model, const Vector& image);

/// Batch recognition over a labeled testset. Known with matching label counts
/// as TP, Known with a wrong label as FP; Unknown counts as FN when the true
/// label exists in the model and as TN otherwise.
EvaluationResult evaluate(const EigenspaceModel& model, const DatasetManifest& testset);

}  // namespace eigengesture
