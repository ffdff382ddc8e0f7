#include "eigengesture/metrics.hpp"

#include <cstdio>

namespace eigengesture {

namespace {

std::string value_or(const std::optional<double>& metric, const char* fallback) {
    return metric ? format_double(*metric) : std::string(fallback);
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

MetricsReport compute_metrics(const ConfusionTally& tally) {
    MetricsReport report;
    report.tally = tally;
    const double tp = static_cast<double>(tally.true_positive);
    const double tn = static_cast<double>(tally.true_negative);
    const double fp = static_cast<double>(tally.false_positive);
    const double fn = static_cast<double>(tally.false_negative);
    const double total = static_cast<double>(tally.total());

    if (total > 0.0) {
        report.accuracy = (tp + tn) / total;
        report.prevalence = (tp + fn) / total;
    }
    if (tp + fn > 0.0) {
        report.recall = tp / (tp + fn);
    }
    if (tp + fp > 0.0) {
        report.precision = tp / (tp + fp);
    }
    return report;
}

std::string metrics_text(const MetricsReport& report) {
    std::string out;
    out += "tp=" + std::to_string(report.tally.true_positive) + "\n";
    out += "tn=" + std::to_string(report.tally.true_negative) + "\n";
    out += "fp=" + std::to_string(report.tally.false_positive) + "\n";
    out += "fn=" + std::to_string(report.tally.false_negative) + "\n";
    out += "total=" + std::to_string(report.tally.total()) + "\n";
    out += "accuracy=" + value_or(report.accuracy, "undefined") + "\n";
    out += "recall=" + value_or(report.recall, "undefined") + "\n";
    out += "precision=" + value_or(report.precision, "undefined") + "\n";
    out += "prevalence=" + value_or(report.prevalence, "undefined") + "\n";
    return out;
}

std::string metrics_json(const MetricsReport& report) {
    std::string out = "{";
    out += "\"tp\":" + std::to_string(report.tally.true_positive);
    out += ",\"tn\":" + std::to_string(report.tally.true_negative);
    out += ",\"fp\":" + std::to_string(report.tally.false_positive);
    out += ",\"fn\":" + std::to_string(report.tally.false_negative);
    out += ",\"total\":" + std::to_string(report.tally.total());
    out += ",\"accuracy\":" + value_or(report.accuracy, "null");
    out += ",\"recall\":" + value_or(report.recall, "null");
    out += ",\"precision\":" + value_or(report.precision, "null");
    out += ",\"prevalence\":" + value_or(report.prevalence, "null");
    out += "}";
    return out;
}

}  // namespace eigengesture
