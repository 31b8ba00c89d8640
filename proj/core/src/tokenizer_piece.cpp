#include <fstream>

#include "tokenizer_util.hpp"
#include "toxspan/tokenizer.hpp"
#include "toxspan/utf8.hpp"

namespace toxspan {

namespace {

constexpr char32_t kMetaspace = 0x2581;  // '▁'

int find_any(const std::unordered_map<std::string, int>& vocab,
             std::initializer_list<const char*> names) {
    for (const char* n : names) {
        auto it = vocab.find(n);
        if (it != vocab.end()) return it->second;
    }
    return -1;
}

}  // namespace

PieceTokenizer::PieceTokenizer(const std::filesystem::path& piece_file, bool lowercase,
                               std::string display_name)
    : name_(std::move(display_name)), lowercase_(lowercase) {
    std::ifstream in(piece_file);
    if (!in) throw TokenizerError("cannot open piece file: " + piece_file.string());
    std::string line;
    int id = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // sentencepiece .vocab dumps are "piece<TAB>score"
        const auto tab = line.find('\t');
        std::string piece = tab == std::string::npos ? line : line.substr(0, tab);
        if (piece.empty()) continue;
        max_piece_cps_ = std::max(max_piece_cps_, utf8::length(piece));
        vocab_.emplace(std::move(piece), id++);
    }

    bos_id_ = find_any(vocab_, {"[CLS]", "<s>", "<cls>"});
    eos_id_ = find_any(vocab_, {"[SEP]", "</s>", "<sep>"});
    pad_id_ = find_any(vocab_, {"<pad>", "[PAD]"});
    unk_id_ = find_any(vocab_, {"<unk>", "[UNK]"});
    if (bos_id_ < 0 || eos_id_ < 0 || pad_id_ < 0 || unk_id_ < 0)
        throw TokenizerError(name_ + ": piece list must define bos/eos/pad/unk pieces");
}

Tokenization PieceTokenizer::tokenize(std::string_view text) const {
    const auto d = utf8::decode(text);

    // metaspace transform: word boundaries become '▁'; the marker itself
    // maps to no source character so token offsets cover words only
    std::u32string transformed;
    std::vector<TokenRange> source;  // per transformed char; empty = marker
    transformed.push_back(kMetaspace);
    source.push_back({0, 0});
    bool in_space = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const char32_t c = d.points[i];
        if (utf8::is_space(c)) {
            if (!in_space) {
                transformed.push_back(kMetaspace);
                source.push_back({0, 0});
                in_space = true;
            }
            continue;
        }
        in_space = false;
        transformed.push_back(lowercase_ ? utf8::to_lower(c) : c);
        source.push_back({static_cast<int>(i), static_cast<int>(i) + 1});
    }

    Tokenization out;
    const bool cls_style = vocab_.count("[CLS]") > 0;
    out.tokens.push_back(cls_style ? "[CLS]" : "<s>");
    out.ids.push_back(bos_id_);
    out.offsets.push_back({0, 0});
    out.special.push_back(true);

    std::size_t pos = 0;
    while (pos < transformed.size()) {
        std::size_t best_len = 0;
        const std::string* best_piece = nullptr;
        int best_id = -1;
        const std::size_t window = std::min(max_piece_cps_, transformed.size() - pos);
        for (std::size_t len = window; len >= 1; --len) {
            const std::string candidate =
                utf8::encode(std::u32string_view(transformed).substr(pos, len));
            auto it = vocab_.find(candidate);
            if (it != vocab_.end()) {
                best_len = len;
                best_piece = &it->first;
                best_id = it->second;
                break;
            }
        }

        std::size_t len = best_len > 0 ? best_len : 1;
        TokenRange range{0, 0};
        for (std::size_t k = pos; k < pos + len; ++k) {
            if (source[k].empty()) continue;
            if (range.empty()) range = source[k];
            else range.end = source[k].end;
        }
        if (best_piece) {
            out.tokens.push_back(*best_piece);
            out.ids.push_back(best_id);
        } else {
            out.tokens.push_back(cls_style ? "[UNK]" : "<unk>");
            out.ids.push_back(unk_id_);
        }
        out.offsets.push_back(range);
        out.special.push_back(false);
        pos += len;
    }

    out.tokens.push_back(cls_style ? "[SEP]" : "</s>");
    out.ids.push_back(eos_id_);
    out.offsets.push_back({0, 0});
    out.special.push_back(true);
    return out;
}

}  // namespace toxspan
