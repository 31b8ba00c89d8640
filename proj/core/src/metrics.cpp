#include "toxspan/metrics.hpp"

#include <stdexcept>

namespace toxspan {

SampleMetrics sample_metrics(const SpanOffsetSet& pred, const SpanOffsetSet& gt,
                             std::string sample_id) {
    SampleMetrics m;
    m.sample_id = std::move(sample_id);

    if (gt.empty()) {
        m.klass = SampleClass::nontoxic;
        const double credit = pred.empty() ? 1.0 : 0.0;
        m.precision = credit;
        m.recall = credit;
        m.f1 = credit;
        return m;
    }

    m.klass = SampleClass::toxic;
    if (pred.empty()) {
        m.precision = 0.0;
        m.recall = 0.0;
        m.f1 = 0.0;
        return m;
    }

    const double tp = static_cast<double>(pred.intersection_size(gt));
    m.precision = tp / static_cast<double>(pred.size());
    m.recall = tp / static_cast<double>(gt.size());
    m.f1 = (m.precision + m.recall > 0.0)
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    return m;
}

std::size_t ClassReport::total() const {
    std::size_t n = 0;
    if (nontoxic) n += nontoxic->count;
    if (toxic) n += toxic->count;
    return n;
}

namespace {

std::optional<double> harmonic(const std::optional<ClassTriple>& t) {
    if (!t) return std::nullopt;
    const double s = t->precision + t->recall;
    if (s <= 0.0) return 0.0;
    return 2.0 * t->precision * t->recall / s;
}

}  // namespace

ClassReport aggregate(std::span<const SampleMetrics> samples) {
    if (samples.empty()) throw std::invalid_argument("aggregate: empty sample list");

    ClassTriple sums[2];
    for (const auto& s : samples) {
        auto& t = sums[s.klass == SampleClass::toxic ? 1 : 0];
        t.precision += s.precision;
        t.recall += s.recall;
        t.f1 += s.f1;
        ++t.count;
    }

    ClassReport report;
    for (int k = 0; k < 2; ++k) {
        if (sums[k].count == 0) continue;
        ClassTriple mean;
        mean.count = sums[k].count;
        const auto n = static_cast<double>(sums[k].count);
        mean.precision = sums[k].precision / n;
        mean.recall = sums[k].recall / n;
        mean.f1 = sums[k].f1 / n;
        if (k == 0) report.nontoxic = mean;
        else report.toxic = mean;
    }
    report.f1_0_harmonic = harmonic(report.nontoxic);
    report.f1_1_harmonic = harmonic(report.toxic);
    return report;
}

ErrorCategory error_category(const SpanOffsetSet& pred, const SpanOffsetSet& gt) {
    if (gt.empty() && !pred.empty()) return ErrorCategory::false_positive;
    if (!gt.empty() && pred.empty()) return ErrorCategory::false_negative;
    if (!gt.empty() && !pred.empty() && !(pred == gt)) return ErrorCategory::partial_disagreement;
    return ErrorCategory::exact_match;
}

const char* to_string(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::exact_match: return "ExactMatch";
        case ErrorCategory::partial_disagreement: return "PartialDisagreement";
        case ErrorCategory::false_positive: return "FalsePositive";
        case ErrorCategory::false_negative: return "FalseNegative";
    }
    return "?";
}

}  // namespace toxspan
