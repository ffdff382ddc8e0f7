#pragma once

#include <optional>
#include <string>

#include "eigengesture/recognizer.hpp"

namespace eigengesture {

/// Confusion counts plus the derived statistics. A metric whose denominator
/// is zero stays unset instead of being coerced to 0 or 1.
struct MetricsReport {
    ConfusionTally tally;
    std::optional<double> accuracy;    // (TP+TN)/total
    std::optional<double> recall;      // TP/(TP+FN)
    std::optional<double> precision;   // TP/(TP+FP)
    std::optional<double> prevalence;  // (TP+FN)/total
};

MetricsReport compute_metrics(const ConfusionTally& tally);

/// Line-oriented "metric=value" rendering; undefined metrics print as
/// "undefined". Doubles carry 17 significant digits.
std::string metrics_text(const MetricsReport& report);

/// Single-object JSON document with keys tp, tn, fp, fn, total, accuracy,
/// recall, precision, prevalence; undefined metrics become null.
std::string metrics_json(const MetricsReport& report);

/// printf "%.17g" rendering used for every number the tools emit, so output
/// is bit-stable and parses back to the same double.
std::string format_double(double value);

}  // namespace eigengesture
