#include <fstream>

#include "tokenizer_util.hpp"
#include "toxspan/tokenizer.hpp"
#include "toxspan/utf8.hpp"

namespace toxspan {

WordPieceTokenizer::WordPieceTokenizer(const std::filesystem::path& vocab_file,
                                       bool lowercase, std::string display_name)
    : name_(std::move(display_name)), lowercase_(lowercase) {
    std::ifstream in(vocab_file);
    if (!in) throw TokenizerError("cannot open vocab file: " + vocab_file.string());
    std::string line;
    int id = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        vocab_.emplace(line, id++);
    }
    cls_id_ = id_of("[CLS]");
    sep_id_ = id_of("[SEP]");
    pad_id_ = id_of("[PAD]");
    unk_id_ = id_of("[UNK]");
}

int WordPieceTokenizer::id_of(const std::string& token) const {
    auto it = vocab_.find(token);
    if (it == vocab_.end())
        throw TokenizerError(name_ + ": vocab is missing required token " + token);
    return it->second;
}

Tokenization WordPieceTokenizer::tokenize(std::string_view text) const {
    const auto d = utf8::decode(text);
    const auto basic = detail::basic_tokenize(d, lowercase_);

    Tokenization out;
    out.tokens.push_back("[CLS]");
    out.ids.push_back(cls_id_);
    out.offsets.push_back({0, 0});
    out.special.push_back(true);

    constexpr std::size_t kMaxWordCps = 100;
    for (const auto& word : basic) {
        if (word.text.size() > kMaxWordCps) {
            out.tokens.push_back("[UNK]");
            out.ids.push_back(unk_id_);
            out.offsets.push_back(word.range);
            out.special.push_back(false);
            continue;
        }

        // greedy longest-match-first over the word's code points
        std::vector<std::string> pieces;
        std::vector<TokenRange> ranges;
        std::size_t start = 0;
        bool ok = true;
        while (start < word.text.size()) {
            std::size_t end = word.text.size();
            std::string found;
            while (end > start) {
                std::string candidate =
                    utf8::encode(std::u32string_view(word.text).substr(start, end - start));
                if (start > 0) candidate = "##" + candidate;
                if (vocab_.count(candidate)) {
                    found = std::move(candidate);
                    break;
                }
                --end;
            }
            if (found.empty()) {
                ok = false;
                break;
            }
            pieces.push_back(std::move(found));
            ranges.push_back({word.range.begin + static_cast<int>(start),
                              word.range.begin + static_cast<int>(end)});
            start = end;
        }

        if (!ok) {
            out.tokens.push_back("[UNK]");
            out.ids.push_back(unk_id_);
            out.offsets.push_back(word.range);
            out.special.push_back(false);
            continue;
        }
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            out.ids.push_back(vocab_.at(pieces[k]));
            out.tokens.push_back(std::move(pieces[k]));
            out.offsets.push_back(ranges[k]);
            out.special.push_back(false);
        }
    }

    out.tokens.push_back("[SEP]");
    out.ids.push_back(sep_id_);
    out.offsets.push_back({0, 0});
    out.special.push_back(true);
    return out;
}

}  // namespace toxspan
