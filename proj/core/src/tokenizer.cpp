#include "toxspan/tokenizer.hpp"

#include "tokenizer_util.hpp"
#include "toxspan/utf8.hpp"

namespace toxspan {

namespace detail {

std::vector<BasicToken> basic_tokenize(const utf8::Decoded& d, bool lowercase) {
    std::vector<BasicToken> out;
    const auto n = static_cast<int>(d.size());
    int i = 0;
    while (i < n) {
        const char32_t c = d.points[i];
        if (utf8::is_space(c)) {
            ++i;
            continue;
        }
        if (utf8::is_punct(c)) {
            BasicToken t;
            t.text.push_back(lowercase ? utf8::to_lower(c) : c);
            t.range = {i, i + 1};
            out.push_back(std::move(t));
            ++i;
            continue;
        }
        int j = i;
        BasicToken t;
        while (j < n && !utf8::is_space(d.points[j]) && !utf8::is_punct(d.points[j])) {
            t.text.push_back(lowercase ? utf8::to_lower(d.points[j]) : d.points[j]);
            ++j;
        }
        t.range = {i, j};
        out.push_back(std::move(t));
        i = j;
    }
    return out;
}

}  // namespace detail

Tokenization WordTokenizer::tokenize(std::string_view text) const {
    const auto d = utf8::decode(text);
    const auto n = static_cast<int>(d.size());

    Tokenization out;
    int i = 0;
    while (i < n) {
        if (utf8::is_space(d.points[i])) {
            ++i;
            continue;
        }
        int j = i;
        while (j < n && !utf8::is_space(d.points[j])) ++j;
        // strip punctuation off both edges of the whitespace-delimited chunk
        int b = i, e = j;
        while (b < e && utf8::is_punct(d.points[b])) ++b;
        while (e > b && utf8::is_punct(d.points[e - 1])) --e;
        if (b < e) {
            std::string tok = utf8::encode(std::u32string_view(d.points).substr(b, e - b));
            out.ids.push_back(static_cast<int>(1 + detail::fnv1a(tok) % 2147483000ull));
            out.tokens.push_back(std::move(tok));
            out.offsets.push_back({b, e});
            out.special.push_back(false);
        }
        i = j;
    }
    return out;
}

HashSubwordTokenizer::HashSubwordTokenizer(int vocab_size) : vocab_size_(vocab_size) {
    if (vocab_size_ < 16) throw TokenizerError("hash tokenizer vocab too small");
}

Tokenization HashSubwordTokenizer::tokenize(std::string_view text) const {
    const auto d = utf8::decode(text);
    const auto basic = detail::basic_tokenize(d, /*lowercase=*/true);

    Tokenization out;
    out.tokens.push_back("<s>");
    out.ids.push_back(kStartId);
    out.offsets.push_back({0, 0});
    out.special.push_back(true);

    const auto reserved = 4ull;
    for (const auto& t : basic) {
        std::string tok = utf8::encode(t.text);
        out.ids.push_back(static_cast<int>(
            reserved + detail::fnv1a(tok) % (static_cast<std::uint64_t>(vocab_size_) - reserved)));
        out.tokens.push_back(std::move(tok));
        out.offsets.push_back(t.range);
        out.special.push_back(false);
    }

    out.tokens.push_back("</s>");
    out.ids.push_back(kEndId);
    out.offsets.push_back({0, 0});
    out.special.push_back(true);
    return out;
}

std::unique_ptr<TokenizerAdapter> tokenizer_for_encoder(
    std::string_view encoder_name, const std::filesystem::path& resource_dir) {
    const std::string name(encoder_name);
    const auto dir = resource_dir / name;

    auto require = [&](const std::filesystem::path& p) {
        if (!std::filesystem::exists(p))
            throw TokenizerError("tokenizer resource not found: " + p.string() +
                                 " (set the resource directory via --resources or TOXSPAN_CACHE)");
        return p;
    };

    if (name == "word") return std::make_unique<WordTokenizer>();
    if (name == "tiny-test-encoder" || name == "tiny-test")
        return std::make_unique<HashSubwordTokenizer>();
    if (name == "bert-base" || name == "distilbert-base")
        return std::make_unique<WordPieceTokenizer>(require(dir / "vocab.txt"),
                                                    /*lowercase=*/true, name);
    if (name == "roberta-base")
        return std::make_unique<ByteBpeTokenizer>(require(dir / "vocab.json"),
                                                  require(dir / "merges.txt"), name);
    if (name == "albert-base")
        return std::make_unique<PieceTokenizer>(require(dir / "pieces.txt"),
                                                /*lowercase=*/true, name);
    if (name == "xlnet-base")
        return std::make_unique<PieceTokenizer>(require(dir / "pieces.txt"),
                                                /*lowercase=*/false, name);
    throw TokenizerError("unknown encoder/tokenizer name: " + name);
}

}  // namespace toxspan
