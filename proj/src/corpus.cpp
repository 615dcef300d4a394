#include "colsnn/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace colsnn {

std::string_view to_string(Label label) {
    return label == Label::Positive ? "pos" : "neg";
}

bool Corpus::trainable() const {
    return count(Label::Positive) > 0 && count(Label::Negative) > 0;
}

std::size_t Corpus::count(Label label) const {
    return static_cast<std::size_t>(
        std::count_if(samples.begin(), samples.end(), [label](const Sample& s) { return s.label == label; }));
}

Corpus parse_corpus(std::istream& in, std::string name) {
    Corpus corpus;
    corpus.name = std::move(name);
    std::string line;
    std::size_t line_no = 0;
    bool seen_row = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!seen_row && line == "text\tlabel") {
            seen_row = true;
            continue;
        }
        seen_row = true;
        const auto tab = line.rfind('\t');
        if (tab == std::string::npos) throw ParseError("expected 'text<TAB>label'", line_no);
        std::string text = line.substr(0, tab);
        const std::string label = line.substr(tab + 1);
        if (text.empty() || text.find('\t') != std::string::npos) {
            throw ParseError("malformed sample text", line_no);
        }
        Label parsed;
        if (label == "pos") {
            parsed = Label::Positive;
        } else if (label == "neg") {
            parsed = Label::Negative;
        } else {
            throw ParseError("unknown label '" + label + "'", line_no);
        }
        corpus.samples.push_back({std::move(text), parsed});
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open corpus " + path.string());
    auto corpus = parse_corpus(in, path.stem().string());
    corpus.source = path;
    return corpus;
}

void save_corpus(const Corpus& corpus, std::ostream& out) {
    out << "text\tlabel\n";
    for (const auto& s : corpus.samples) out << s.text << '\t' << to_string(s.label) << '\n';
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot write corpus " + path.string());
    save_corpus(corpus, out);
}

const std::vector<Sample>& reference_samples() {
    static const std::vector<Sample> samples = {
        {"The humor was forced, not really funny. Disappointed.", Label::Negative},
        {"Stunning animation brought the characters to life!", Label::Positive},
        {"Spectacular visuals but the plot fell flat. Unimpressed.", Label::Negative},
        {"Engaging from start to finish, highly recommend it.", Label::Positive},
        {"Slow pacing made it hard to stay interested. Boring.", Label::Negative},
        {"A brilliant twist ending that I didn't see coming.", Label::Positive},
        {"The plot holes were too glaring to ignore. Poor.", Label::Negative},
        {"Excellent direction and superb acting. A must-watch!", Label::Positive},
        {"Terrible dialogue, felt very unnatural. Bad writing.", Label::Negative},
        {"Intriguing plot with unexpected twists. Great film!", Label::Positive},
    };
    return samples;
}

Tokens tokenize(std::string_view text) {
    auto punct = [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; };
    Tokens out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view word = text.substr(i, j - i);
        while (!word.empty() && punct(word.front())) word.remove_prefix(1);
        while (!word.empty() && punct(word.back())) word.remove_suffix(1);
        if (!word.empty()) {
            std::string token(word);
            std::transform(token.begin(), token.end(), token.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            out.push_back(std::move(token));
        }
        i = j;
    }
    return out;
}

Dictionary build_dictionary(const std::vector<Sample>& samples, std::size_t v_max) {
    std::map<std::string, std::size_t> counts;
    for (const auto& s : samples) {
        for (auto& t : tokenize(s.text)) ++counts[t];
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
    // std::map iteration is already lexicographic; the stable sort keeps that for ties.
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (ranked.size() > v_max) ranked.resize(v_max);
    std::vector<std::string> words;
    words.reserve(ranked.size());
    for (auto& [w, c] : ranked) words.push_back(std::move(w));
    return Dictionary(std::move(words));
}

Dictionary build_dictionary(const Corpus& corpus, std::size_t v_max) {
    return build_dictionary(corpus.samples, v_max);
}

void save_dictionary(const Dictionary& dict, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot write dictionary '" + path.string() + "'");
    for (const auto& w : dict.words()) out << w << '\n';
    if (!out) throw FileError("failed writing dictionary '" + path.string() + "'");
}

Dictionary load_dictionary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open dictionary '" + path.string() + "'");
    std::vector<std::string> words;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) throw ParseError("empty dictionary entry", line_no);
        words.push_back(line);
    }
    return Dictionary(std::move(words));
}

namespace {

// Next whitespace-delimited header token, skipping `#` comments.
std::string header_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.peek()) != EOF) {
        if (c == '#') {
            std::string ignored;
            std::getline(in, ignored);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    while ((c = in.peek()) != EOF && !std::isspace(c) && c != '#') tok.push_back(static_cast<char>(in.get()));
    return tok;
}

std::size_t header_number(std::istream& in, const char* field) {
    const auto tok = header_token(in);
    if (tok.empty()) throw PgmError(PgmError::Kind::Truncated, std::string("missing PGM ") + field);
    if (!std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw PgmError(PgmError::Kind::Malformed, std::string("bad PGM ") + field + " '" + tok + "'");
    }
    return std::stoul(tok);
}

}  // namespace

GrayscaleImage parse_pgm(std::istream& in) {
    const auto magic = header_token(in);
    if (magic != "P2" && magic != "P5") {
        throw PgmError(PgmError::Kind::BadMagic, "unsupported image format '" + magic + "' (need P2 or P5)");
    }
    GrayscaleImage img;
    img.width = header_number(in, "width");
    img.height = header_number(in, "height");
    const auto maxval = header_number(in, "maxval");
    if (maxval != 255) throw PgmError(PgmError::Kind::BadMaxval, "PGM maxval must be 255");

    const auto count = img.width * img.height;
    img.pixels.reserve(count);
    if (magic == "P5") {
        in.get();  // single whitespace byte after maxval
        std::vector<char> bytes(count);
        in.read(bytes.data(), static_cast<std::streamsize>(count));
        if (static_cast<std::size_t>(in.gcount()) != count) {
            throw PgmError(PgmError::Kind::Truncated, "PGM payload truncated");
        }
        for (char b : bytes) img.pixels.push_back(static_cast<unsigned char>(b));
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            const auto tok = header_token(in);
            if (tok.empty()) throw PgmError(PgmError::Kind::Truncated, "PGM payload truncated");
            if (!std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }) ||
                tok.size() > 3 || std::stoi(tok) > 255) {
                throw PgmError(PgmError::Kind::Malformed, "bad PGM pixel '" + tok + "'");
            }
            img.pixels.push_back(std::stoi(tok));
        }
    }
    return img;
}

GrayscaleImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open image " + path.string());
    return parse_pgm(in);
}

}  // namespace colsnn
