#include "toxspan/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "toxspan/utf8.hpp"

namespace toxspan {

std::optional<std::string> validate(const AnnotatedComment& comment) {
    std::size_t n_cps = 0;
    try {
        n_cps = utf8::length(comment.text);
    } catch (const utf8::Utf8Error& e) {
        return std::string(e.what());
    }
    int prev = -1;
    for (int idx : comment.char_spans) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= n_cps)
            return "span index " + std::to_string(idx) + " out of bounds for text of length " +
                   std::to_string(n_cps);
        if (idx <= prev) return "span indices not strictly increasing at " + std::to_string(idx);
        prev = idx;
    }
    if (!comment.is_toxic && !comment.char_spans.empty())
        return "non-toxic comment carries span annotations";
    return std::nullopt;
}

namespace {

// RFC 4180-ish CSV: quoted fields with "" escapes, embedded newlines, and
// either \n or \r\n record separators. Returns one record per call.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(static_cast<char>(c));
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                break;
            case ',':
                fields.push_back(std::move(field));
                field.clear();
                break;
            case '\r':
                if (in.peek() == '\n') in.get();
                [[fallthrough]];
            case '\n':
                fields.push_back(std::move(field));
                return true;
            default:
                field.push_back(static_cast<char>(c));
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

// "[10, 11, 12]" or "[]" / "[ ]" -> indices. Throws std::invalid_argument.
std::vector<int> parse_span_list(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string_view::npos || s[b] != '[' || s[e] != ']')
        throw std::invalid_argument("span list must be bracketed: '" + std::string(s) + "'");
    std::string inner(s.substr(b + 1, e - b - 1));
    std::vector<int> out;
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto ib = item.find_first_not_of(" \t");
        if (ib == std::string::npos) {
            if (out.empty() && ss.eof()) break;  // "[ ]"
            throw std::invalid_argument("empty entry in span list");
        }
        const auto ie = item.find_last_not_of(" \t");
        std::size_t used = 0;
        const std::string tok = item.substr(ib, ie - ib + 1);
        int value = 0;
        try {
            value = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("non-integer span entry '" + tok + "'");
        }
        if (used != tok.size())
            throw std::invalid_argument("non-integer span entry '" + tok + "'");
        out.push_back(value);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool parse_bool(std::string_view s) {
    const std::string t = utf8::to_lower(s);
    if (t == "1" || t == "true" || t == "yes" || t == "y") return true;
    if (t == "0" || t == "false" || t == "no" || t == "n" || t.empty()) return false;
    throw std::invalid_argument("unrecognized boolean '" + std::string(s) + "'");
}

LoadResult load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusFormatError("cannot open " + path.string());

    std::vector<std::string> header;
    if (!read_csv_record(in, header)) throw CorpusFormatError(path.string() + ": empty file");

    auto column = [&](std::string_view name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i) {
            std::string h = header[i];
            // strip a UTF-8 BOM on the first header cell
            if (i == 0 && h.size() >= 3 && h.compare(0, 3, "\xef\xbb\xbf") == 0) h = h.substr(3);
            if (h == name) return static_cast<int>(i);
        }
        return -1;
    };
    const int col_text = column("text");
    const int col_spans = column("char_spans");
    const int col_id = column("id");
    const int col_toxic = column("is_toxic");
    if (col_text < 0 || col_spans < 0)
        throw CorpusFormatError(path.string() + ": header must contain 'text' and 'char_spans'");

    LoadResult result;
    std::vector<std::string> fields;
    std::size_t row = 1;  // header is record 1
    while (read_csv_record(in, fields)) {
        ++row;
        if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
        if (fields.size() != header.size()) {
            result.rejected.push_back({row, "expected " + std::to_string(header.size()) +
                                                " fields, got " + std::to_string(fields.size())});
            continue;
        }
        AnnotatedComment c;
        c.id = col_id >= 0 ? fields[col_id] : std::to_string(row);
        c.text = fields[col_text];
        try {
            c.char_spans = parse_span_list(fields[col_spans]);
            c.is_toxic = col_toxic >= 0 ? parse_bool(fields[col_toxic]) : !c.char_spans.empty();
        } catch (const std::invalid_argument& e) {
            result.rejected.push_back({row, e.what()});
            continue;
        }
        if (auto err = validate(c)) {
            result.rejected.push_back({row, *err});
            continue;
        }
        result.comments.push_back(std::move(c));
    }
    return result;
}

LoadResult load_annotation_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusFormatError("cannot open " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw CorpusFormatError(path.string() + ": " + e.what());
    }
    if (!doc.is_array())
        throw CorpusFormatError(path.string() + ": annotation export must be a JSON array");

    LoadResult result;
    std::size_t row = 0;
    for (const auto& item : doc) {
        ++row;
        try {
            AnnotatedComment c;
            c.id = item.contains("id") ? std::string(item.at("id").is_string()
                                                         ? item.at("id").get<std::string>()
                                                         : item.at("id").dump())
                                       : std::to_string(row);
            c.text = item.at("text").get<std::string>();
            std::vector<int> spans;
            for (const auto& range : item.value("ranges", nlohmann::json::array())) {
                const int begin = range.at(0).get<int>();
                const int end = range.at(1).get<int>();
                if (end < begin) throw std::invalid_argument("range end before begin");
                for (int p = begin; p < end; ++p) spans.push_back(p);
            }
            std::sort(spans.begin(), spans.end());
            spans.erase(std::unique(spans.begin(), spans.end()), spans.end());
            c.char_spans = std::move(spans);
            c.is_toxic = item.contains("is_toxic") ? item.at("is_toxic").get<bool>()
                                                   : !c.char_spans.empty();
            if (auto err = validate(c)) {
                result.rejected.push_back({row, *err});
                continue;
            }
            result.comments.push_back(std::move(c));
        } catch (const std::exception& e) {
            result.rejected.push_back({row, e.what()});
        }
    }
    return result;
}

}  // namespace

LoadResult load_comments(const std::filesystem::path& path, CorpusFormat format) {
    switch (format) {
        case CorpusFormat::csv: return load_csv(path);
        case CorpusFormat::annotation_json: return load_annotation_json(path);
    }
    throw CorpusFormatError("unknown corpus format");
}

std::vector<std::pair<int, int>> RuleSplitter::segments(std::u32string_view text) const {
    const int n = static_cast<int>(text.size());
    std::vector<std::pair<int, int>> out;

    auto is_terminal = [](char32_t c) { return c == U'.' || c == U'!' || c == U'?'; };
    auto is_closer = [](char32_t c) {
        return c == U')' || c == U']' || c == U'}' || c == U'"' || c == U'\'' ||
               c == 0x201d || c == 0x2019 || c == 0x00bb;
    };

    int start = 0;
    int i = 0;
    while (i < n) {
        if (text[i] == U'\n') {
            int k = i + 1;
            while (k < n && utf8::is_space(text[k])) ++k;
            out.emplace_back(start, k);
            start = k;
            i = k;
            continue;
        }
        if (is_terminal(text[i])) {
            int j = i + 1;
            while (j < n && is_terminal(text[j])) ++j;
            while (j < n && is_closer(text[j])) ++j;
            if (j == n || utf8::is_space(text[j])) {
                int k = j;
                while (k < n && utf8::is_space(text[k])) ++k;
                out.emplace_back(start, k);
                start = k;
                i = k;
                continue;
            }
            i = j;  // e.g. "3.14" or "syscall.S": not a sentence boundary
            continue;
        }
        ++i;
    }
    if (start < n) out.emplace_back(start, n);
    return out;
}

std::vector<SentenceSample> split_sentences(const AnnotatedComment& comment,
                                            const SentenceSplitter& splitter) {
    if (auto err = validate(comment))
        throw std::invalid_argument("split_sentences: invalid comment '" + comment.id +
                                    "': " + *err);
    const auto d = utf8::decode(comment.text);
    const auto segs = splitter.segments(d.points);

    // the splitter must partition the text or span conservation breaks
    int expect = 0;
    for (const auto& [b, e] : segs) {
        if (b != expect || e < b || e > static_cast<int>(d.size()))
            throw std::logic_error("sentence splitter '" + splitter.name() +
                                   "' did not partition the text");
        expect = e;
    }
    if (expect != static_cast<int>(d.size()))
        throw std::logic_error("sentence splitter '" + splitter.name() +
                               "' did not cover the text");

    std::vector<SentenceSample> out;
    out.reserve(segs.size());
    std::size_t span_cursor = 0;
    for (std::size_t si = 0; si < segs.size(); ++si) {
        const auto [b, e] = segs[si];
        SentenceSample s;
        s.parent_id = comment.id;
        s.sentence_index = static_cast<int>(si);
        s.parent_char_offset = b;
        s.text = utf8::encode(std::u32string_view(d.points).substr(b, e - b));
        while (span_cursor < comment.char_spans.size() && comment.char_spans[span_cursor] < e) {
            s.char_spans.push_back(comment.char_spans[span_cursor] - b);
            ++span_cursor;
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::size_t> FoldAssignment::members(int fold, Role r) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i)
        if (role(i, fold) == r) out.push_back(i);
    return out;
}

FoldAssignment stratified_kfold(std::span<const SentenceSample> samples, int k,
                                std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_kfold: k must be at least 2");

    std::vector<std::size_t> strata[2];
    for (std::size_t i = 0; i < samples.size(); ++i)
        strata[samples[i].has_span() ? 1 : 0].push_back(i);
    for (int s = 0; s < 2; ++s) {
        if (strata[s].size() < static_cast<std::size_t>(k))
            throw std::invalid_argument(
                "stratified_kfold: stratum " + std::string(s ? "has-span" : "no-span") +
                " has " + std::to_string(strata[s].size()) + " samples, need at least " +
                std::to_string(k));
    }

    std::mt19937_64 rng(seed);
    FoldAssignment fa;
    fa.k = k;
    fa.fold_of.assign(samples.size(), 0);
    for (auto& stratum : strata) {
        // Fisher-Yates with explicit draws so assignments are stable across
        // standard library implementations
        for (std::size_t i = stratum.size(); i > 1; --i) {
            const std::size_t j = rng() % i;
            std::swap(stratum[i - 1], stratum[j]);
        }
        for (std::size_t pos = 0; pos < stratum.size(); ++pos)
            fa.fold_of[stratum[pos]] = static_cast<int>(pos % k);
    }
    return fa;
}

void write_sentences_jsonl(std::ostream& out, std::span<const SentenceSample> samples) {
    for (const auto& s : samples) {
        nlohmann::json j{{"parent_id", s.parent_id},
                         {"sentence_index", s.sentence_index},
                         {"text", s.text},
                         {"parent_char_offset", s.parent_char_offset},
                         {"char_spans", s.char_spans}};
        out << j.dump() << '\n';
    }
}

void write_sentences_jsonl(const std::filesystem::path& path,
                           std::span<const SentenceSample> samples) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusFormatError("cannot write " + path.string());
    write_sentences_jsonl(out, samples);
}

std::vector<SentenceSample> read_sentences_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorpusFormatError("cannot open " + path.string());
    std::vector<SentenceSample> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            SentenceSample s;
            s.parent_id = j.at("parent_id").get<std::string>();
            s.sentence_index = j.at("sentence_index").get<int>();
            s.text = j.at("text").get<std::string>();
            s.parent_char_offset = j.at("parent_char_offset").get<int>();
            s.char_spans = j.at("char_spans").get<std::vector<int>>();
            out.push_back(std::move(s));
        } catch (const nlohmann::json::exception& e) {
            throw CorpusFormatError(path.string() + ":" + std::to_string(lineno) + ": " +
                                    e.what());
        }
    }
    return out;
}

}  // namespace toxspan
