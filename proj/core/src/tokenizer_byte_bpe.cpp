#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "tokenizer_util.hpp"
#include "toxspan/tokenizer.hpp"
#include "toxspan/utf8.hpp"

namespace toxspan {

namespace {

// GPT-2 byte <-> unicode table: printable latin-1 bytes map to themselves,
// the rest are shifted into 0x100+.
const std::array<char32_t, 256>& byte_to_unicode() {
    static const std::array<char32_t, 256> table = [] {
        std::array<char32_t, 256> t{};
        std::array<bool, 256> direct{};
        auto mark = [&](int lo, int hi) {
            for (int b = lo; b <= hi; ++b) direct[b] = true;
        };
        mark(0x21, 0x7e);
        mark(0xa1, 0xac);
        mark(0xae, 0xff);
        char32_t next = 256;
        for (int b = 0; b < 256; ++b)
            t[b] = direct[b] ? static_cast<char32_t>(b) : next++;
        return t;
    }();
    return table;
}

enum class CharClass { space, letter, number, other };

CharClass classify(char32_t c) {
    if (utf8::is_space(c)) return CharClass::space;
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return CharClass::letter;
    if (c >= U'0' && c <= U'9') return CharClass::number;
    // approximate \p{L} for non-ASCII: anything that is not punctuation
    if (c >= 0x80 && !utf8::is_punct(c)) return CharClass::letter;
    return CharClass::other;
}

// GPT-2 pretokenizer: contractions, optional-space + class runs, and
// whitespace runs that leave one space attached to the following token.
std::vector<TokenRange> pretokenize(const std::u32string& cps) {
    std::vector<TokenRange> out;
    const int n = static_cast<int>(cps.size());
    static const std::u32string contractions[] = {U"'s", U"'t", U"'re", U"'ve",
                                                  U"'m", U"'ll", U"'d"};
    int i = 0;
    while (i < n) {
        if (cps[i] == U'\'') {
            int len = 0;
            for (const auto& suffix : contractions) {
                if (cps.compare(i, suffix.size(), suffix) == 0) {
                    len = static_cast<int>(suffix.size());
                    break;
                }
            }
            if (len > 0) {
                out.push_back({i, i + len});
                i += len;
                continue;
            }
        }

        const bool leading_space = cps[i] == U' ' && i + 1 < n &&
                                   classify(cps[i + 1]) != CharClass::space;
        const int content = leading_space ? i + 1 : i;
        const CharClass cls = classify(cps[content]);

        if (cls != CharClass::space) {
            int j = content;
            while (j < n && classify(cps[j]) == cls) ++j;
            out.push_back({i, j});
            i = j;
            continue;
        }

        // whitespace run; when content follows, the run's last whitespace
        // char is left to attach to the next token
        int j = i;
        while (j < n && classify(cps[j]) == CharClass::space) ++j;
        if (j == n || j - 1 == i) {
            out.push_back({i, j});
            i = j;
        } else {
            out.push_back({i, j - 1});
            i = j - 1;
        }
    }
    return out;
}

}  // namespace

ByteBpeTokenizer::ByteBpeTokenizer(const std::filesystem::path& vocab_json,
                                   const std::filesystem::path& merges_txt,
                                   std::string display_name)
    : name_(std::move(display_name)) {
    std::ifstream vin(vocab_json);
    if (!vin) throw TokenizerError("cannot open vocab file: " + vocab_json.string());
    nlohmann::json j;
    try {
        vin >> j;
    } catch (const nlohmann::json::exception& e) {
        throw TokenizerError("bad vocab json " + vocab_json.string() + ": " + e.what());
    }
    if (!j.is_object()) throw TokenizerError("vocab json must be an object");
    for (auto& [token, id] : j.items()) vocab_.emplace(token, id.get<int>());

    auto require = [&](const char* token) {
        auto it = vocab_.find(token);
        if (it == vocab_.end())
            throw TokenizerError(name_ + ": vocab is missing required token " +
                                 std::string(token));
        return it->second;
    };
    bos_id_ = require("<s>");
    eos_id_ = require("</s>");
    pad_id_ = require("<pad>");
    unk_id_ = require("<unk>");

    std::ifstream min(merges_txt);
    if (!min) throw TokenizerError("cannot open merges file: " + merges_txt.string());
    std::string line;
    int rank = 0;
    while (std::getline(min, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        merge_rank_.emplace(line, rank++);
    }
}

Tokenization ByteBpeTokenizer::tokenize(std::string_view text) const {
    const auto d = utf8::decode(text);
    const auto& b2u = byte_to_unicode();

    Tokenization out;
    out.tokens.push_back("<s>");
    out.ids.push_back(bos_id_);
    out.offsets.push_back({0, 0});
    out.special.push_back(true);

    for (const TokenRange& pre : pretokenize(d.points)) {
        // expand the pretoken to byte-level unicode chars, remembering the
        // source code point of every byte
        std::vector<std::u32string> parts;
        std::vector<TokenRange> part_cps;
        for (int cp = pre.begin; cp < pre.end; ++cp) {
            std::string bytes;
            utf8::append(bytes, d.points[cp]);
            for (unsigned char byte : bytes) {
                parts.push_back(std::u32string(1, b2u[byte]));
                part_cps.push_back({cp, cp + 1});
            }
        }

        // iterative lowest-rank pair merging
        while (parts.size() > 1) {
            int best_rank = std::numeric_limits<int>::max();
            std::size_t best_at = 0;
            for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
                const std::string key =
                    utf8::encode(parts[k]) + " " + utf8::encode(parts[k + 1]);
                auto it = merge_rank_.find(key);
                if (it != merge_rank_.end() && it->second < best_rank) {
                    best_rank = it->second;
                    best_at = k;
                }
            }
            if (best_rank == std::numeric_limits<int>::max()) break;
            parts[best_at] += parts[best_at + 1];
            part_cps[best_at].end = part_cps[best_at + 1].end;
            parts.erase(parts.begin() + best_at + 1);
            part_cps.erase(part_cps.begin() + best_at + 1);
        }

        for (std::size_t k = 0; k < parts.size(); ++k) {
            std::string piece = utf8::encode(parts[k]);
            auto it = vocab_.find(piece);
            out.ids.push_back(it != vocab_.end() ? it->second : unk_id_);
            out.tokens.push_back(std::move(piece));
            out.offsets.push_back(part_cps[k]);
            out.special.push_back(false);
        }
    }

    out.tokens.push_back("</s>");
    out.ids.push_back(eos_id_);
    out.offsets.push_back({0, 0});
    out.special.push_back(true);
    return out;
}

}  // namespace toxspan
