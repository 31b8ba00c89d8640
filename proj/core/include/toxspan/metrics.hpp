#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "toxspan/span_offsets.hpp"

namespace toxspan {

enum class SampleClass { nontoxic, toxic };

/// Per-sample span precision/recall/F1 with empty-set credit:
/// both sets empty counts as a correct prediction (P = R = 1), a one-sided
/// empty set scores 0, replacing the undefined 0/0 ratios.
struct SampleMetrics {
    std::string sample_id;
    SampleClass klass = SampleClass::nontoxic;  // determined solely by gt emptiness
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

SampleMetrics sample_metrics(const SpanOffsetSet& pred, const SpanOffsetSet& gt,
                             std::string sample_id = {});

struct ClassTriple {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;  // mean of per-sample F1 (headline number)
    std::size_t count = 0;
};

/// Class-separated aggregation: subscript 0 is the non-toxic class (empty
/// ground truth), subscript 1 the toxic class. A class with no samples is
/// left unset rather than reported as a number.
struct ClassReport {
    std::optional<ClassTriple> nontoxic;  // _0
    std::optional<ClassTriple> toxic;     // _1

    // harmonic mean of the aggregated P and R, emitted as a comparison
    // column next to the mean-of-per-sample-F1 headline
    std::optional<double> f1_0_harmonic;
    std::optional<double> f1_1_harmonic;

    std::size_t total() const;
};

ClassReport aggregate(std::span<const SampleMetrics> samples);

enum class ErrorCategory { exact_match, partial_disagreement, false_positive, false_negative };

ErrorCategory error_category(const SpanOffsetSet& pred, const SpanOffsetSet& gt);

const char* to_string(ErrorCategory c);

/// Counts per ErrorCategory, indexable by the enum value.
using ErrorCounts = std::array<std::size_t, 4>;

}  // namespace toxspan
