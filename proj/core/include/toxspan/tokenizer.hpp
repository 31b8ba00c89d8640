#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace toxspan {

/// [begin, end) range of code point indices into the source text.
/// Special tokens carry an empty range.
struct TokenRange {
    int begin = 0;
    int end = 0;
    bool empty() const { return begin == end; }
    bool operator==(const TokenRange&) const = default;
};

struct Tokenization {
    std::vector<std::string> tokens;
    std::vector<int> ids;
    std::vector<TokenRange> offsets;
    std::vector<bool> special;  // sequence-start / sequence-end markers

    std::size_t size() const { return tokens.size(); }
};

struct TokenizerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maps text to token strings, ids, per-token character offset ranges and
/// special-token flags. Implementations must keep non-special offsets
/// non-overlapping, in bounds and non-decreasing in start position.
class TokenizerAdapter {
public:
    virtual ~TokenizerAdapter() = default;
    virtual std::string name() const = 0;
    virtual Tokenization tokenize(std::string_view text) const = 0;
    virtual int pad_id() const = 0;
    /// Adapters are expected to be safe for concurrent read-only use.
    virtual bool thread_safe() const { return true; }
};

/// Plain word tokenizer: splits on whitespace, strips leading/trailing
/// punctuation from each token and keeps internal apostrophes. Tokens that
/// are punctuation-only disappear. Emits no special tokens; used by the
/// lexicon baseline and the inter-annotator agreement arrays.
class WordTokenizer final : public TokenizerAdapter {
public:
    std::string name() const override { return "word"; }
    Tokenization tokenize(std::string_view text) const override;
    int pad_id() const override { return 0; }
};

/// Deterministic vocabulary-free subword stand-in for the tiny test encoder:
/// lowercased basic tokenization (words and single punctuation marks) with
/// ids assigned by hashing into a fixed-size id space. Emits start/end
/// special tokens like the pretrained tokenizers do.
class HashSubwordTokenizer final : public TokenizerAdapter {
public:
    explicit HashSubwordTokenizer(int vocab_size = 8192);
    std::string name() const override { return "tiny-test"; }
    Tokenization tokenize(std::string_view text) const override;
    int pad_id() const override { return kPadId; }
    int vocab_size() const { return vocab_size_; }

    static constexpr int kPadId = 0;
    static constexpr int kStartId = 1;
    static constexpr int kEndId = 2;
    static constexpr int kUnkId = 3;

private:
    int vocab_size_;
};

/// WordPiece tokenizer over a vocab.txt file (one piece per line, "##"
/// continuation prefix). Covers the bert-base / distilbert-base families.
class WordPieceTokenizer final : public TokenizerAdapter {
public:
    WordPieceTokenizer(const std::filesystem::path& vocab_file, bool lowercase,
                       std::string display_name = "wordpiece");
    std::string name() const override { return name_; }
    Tokenization tokenize(std::string_view text) const override;
    int pad_id() const override { return pad_id_; }

private:
    int id_of(const std::string& token) const;

    std::string name_;
    bool lowercase_;
    std::unordered_map<std::string, int> vocab_;
    int cls_id_ = -1, sep_id_ = -1, pad_id_ = -1, unk_id_ = -1;
};

/// Byte-level BPE tokenizer (vocab.json + merges.txt) with the GPT-2 byte
/// encoder and pretokenizer. Covers the roberta-base family.
class ByteBpeTokenizer final : public TokenizerAdapter {
public:
    ByteBpeTokenizer(const std::filesystem::path& vocab_json,
                     const std::filesystem::path& merges_txt,
                     std::string display_name = "byte-bpe");
    std::string name() const override { return name_; }
    Tokenization tokenize(std::string_view text) const override;
    int pad_id() const override { return pad_id_; }

private:
    std::string name_;
    std::unordered_map<std::string, int> vocab_;
    std::unordered_map<std::string, int> merge_rank_;  // "left right" -> rank
    int bos_id_ = -1, eos_id_ = -1, pad_id_ = -1, unk_id_ = -1;
};

/// Greedy longest-match piece tokenizer over a sentencepiece-style piece
/// list (metaspace convention, one piece per line with optional tab-separated
/// score). Approximates the albert-base / xlnet-base unigram tokenizers.
class PieceTokenizer final : public TokenizerAdapter {
public:
    PieceTokenizer(const std::filesystem::path& piece_file, bool lowercase,
                   std::string display_name = "piece");
    std::string name() const override { return name_; }
    Tokenization tokenize(std::string_view text) const override;
    int pad_id() const override { return pad_id_; }

private:
    std::string name_;
    bool lowercase_;
    std::unordered_map<std::string, int> vocab_;
    std::size_t max_piece_cps_ = 1;
    int bos_id_ = -1, eos_id_ = -1, pad_id_ = -1, unk_id_ = -1;
};

/// Resolves an encoder family name to its tokenizer. Vocabulary files are
/// looked up under resource_dir/<encoder-name>/ (vocab.txt, or vocab.json +
/// merges.txt, or pieces.txt). tiny-test-encoder and word need no files.
std::unique_ptr<TokenizerAdapter> tokenizer_for_encoder(
    std::string_view encoder_name, const std::filesystem::path& resource_dir);

}  // namespace toxspan
