#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toxspan {

struct AgreementDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One rater's binary token labels for one sample. All raters of a sample
/// must produce label sequences of the same length.
struct RaterTokenLabels {
    std::string sample_id;
    std::string rater_id;
    std::vector<std::uint8_t> labels;  // one {0,1} entry per token
};

struct MergedRatings {
    std::string rater_a;
    std::string rater_b;
    std::vector<std::uint8_t> a;
    std::vector<std::uint8_t> b;
};

/// Concatenates per-sample token labels into one flat sequence per rater,
/// sample order first, token order within. Requires exactly two raters and
/// both ratings for every sample.
MergedRatings merge_rater_arrays(std::span<const RaterTokenLabels> per_sample);

struct AgreementResult {
    enum class Status { ok, undefined_no_variation };
    Status status = Status::ok;
    double alpha = 0.0;                  // 1 - D_o / D_e, in [-1, 1]
    double observed_disagreement = 0.0;  // D_o
    double expected_disagreement = 0.0;  // D_e
    std::size_t n_ratings = 0;           // total ratings = 2 * sequence length
};

/// Two-rater Krippendorff's alpha with the nominal distance function,
/// coincidence-matrix form, no missing data.
AgreementResult krippendorff_alpha_nominal(std::span<const std::uint8_t> a,
                                           std::span<const std::uint8_t> b);

/// Sample ids with at least one token-label mismatch between the two raters,
/// in first-appearance order.
std::vector<std::string> find_conflicts(std::span<const RaterTokenLabels> per_sample);

}  // namespace toxspan
