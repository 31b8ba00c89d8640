#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toxspan {

struct CorpusFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One code-review comment with its toxic-span annotation: a sorted list of
/// character (code point) indices into text. Non-toxic comments carry an
/// empty span list.
struct AnnotatedComment {
    std::string id;
    std::string text;
    bool is_toxic = false;
    std::vector<int> char_spans;
};

/// Returns a violation message, or nullopt when all invariants hold:
/// indices in bounds, strictly increasing, empty when is_toxic is false.
std::optional<std::string> validate(const AnnotatedComment& comment);

enum class CorpusFormat { csv, annotation_json };

struct RejectedRow {
    std::size_t row = 0;  // 1-based data row (or array index for json)
    std::string reason;
};

struct LoadResult {
    std::vector<AnnotatedComment> comments;
    std::vector<RejectedRow> rejected;
};

/// Reads a comment corpus. CSV needs a header with `text` and `char_spans`
/// columns (`id` and `is_toxic` optional); the span column is a bracketed
/// integer list as exported by the annotation tooling. Malformed rows are
/// reported in `rejected` with their row number; structural problems
/// (missing file, missing columns, bad JSON) throw CorpusFormatError.
LoadResult load_comments(const std::filesystem::path& path, CorpusFormat format);

/// A sentence cut out of a comment, with spans remapped to sentence-local
/// character indices. parent_char_offset + local index recovers the parent
/// position.
struct SentenceSample {
    std::string parent_id;
    int sentence_index = 0;
    std::string text;
    int parent_char_offset = 0;
    std::vector<int> char_spans;

    bool has_span() const { return !char_spans.empty(); }
    std::string sample_id() const {
        return parent_id + "#" + std::to_string(sentence_index);
    }
};

/// Splitter adapter. segments() must partition [0, n) — every character of
/// the comment belongs to exactly one sentence, so no span character can be
/// lost in remapping.
class SentenceSplitter {
public:
    virtual ~SentenceSplitter() = default;
    virtual std::string name() const = 0;
    virtual std::vector<std::pair<int, int>> segments(std::u32string_view text) const = 0;
};

/// Default rule-based splitter: sentence ends at a run of terminal
/// punctuation (. ! ?) followed by whitespace or end of text, or at a
/// newline. Trailing whitespace stays with the preceding sentence.
class RuleSplitter final : public SentenceSplitter {
public:
    std::string name() const override { return "rule"; }
    std::vector<std::pair<int, int>> segments(std::u32string_view text) const override;
};

std::vector<SentenceSample> split_sentences(const AnnotatedComment& comment,
                                            const SentenceSplitter& splitter);

/// Cross-validation assignment. fold_of[i] is the fold in which sample i
/// plays the test role; it validates in fold (fold_of[i]+1) mod k and
/// trains everywhere else.
struct FoldAssignment {
    enum class Role { train, validation, test };

    int k = 0;
    std::vector<int> fold_of;

    Role role(std::size_t sample, int fold) const {
        if (fold_of[sample] == fold) return Role::test;
        if (fold_of[sample] == (fold + 1) % k) return Role::validation;
        return Role::train;
    }
    std::vector<std::size_t> members(int fold, Role r) const;
};

/// Deterministic stratified k-fold over the has-span / no-span strata.
/// Throws std::invalid_argument if k < 2 or either stratum has fewer than
/// k samples.
FoldAssignment stratified_kfold(std::span<const SentenceSample> samples, int k,
                                std::uint64_t seed);

// canonical JSON-lines sentence corpus
void write_sentences_jsonl(std::ostream& out, std::span<const SentenceSample> samples);
void write_sentences_jsonl(const std::filesystem::path& path,
                           std::span<const SentenceSample> samples);
std::vector<SentenceSample> read_sentences_jsonl(const std::filesystem::path& path);

}  // namespace toxspan
