#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "colsnn/encoders.hpp"
#include "colsnn/errors.hpp"

namespace colsnn {

enum class Label { Positive, Negative };

std::string_view to_string(Label label);  // "pos" / "neg"

struct Sample {
    std::string text;
    Label label{Label::Positive};

    friend bool operator==(const Sample&, const Sample&) = default;
};

struct Corpus {
    std::string name;
    std::filesystem::path source;
    std::vector<Sample> samples;

    // True when both labels are present.
    bool trainable() const;
    std::size_t count(Label label) const;
};

// Tab-separated `text<TAB>label` rows; `#` comment lines and a
// `text<TAB>label` header are skipped.
Corpus parse_corpus(std::istream& in, std::string name = {});
Corpus load_corpus(const std::filesystem::path& path);
void save_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// The ten labelled review sentences shipped in data/table1.tsv.
const std::vector<Sample>& reference_samples();

// Lowercase, split on whitespace, strip leading/trailing punctuation.
Tokens tokenize(std::string_view text);

// The v_max most frequent tokens; ties broken lexicographically.
Dictionary build_dictionary(const std::vector<Sample>& samples, std::size_t v_max);
Dictionary build_dictionary(const Corpus& corpus, std::size_t v_max);

// One word per line, in index order.
void save_dictionary(const Dictionary& dict, const std::filesystem::path& path);
Dictionary load_dictionary(const std::filesystem::path& path);

// P2 (ASCII) or P5 (binary) graymap with maxval 255.
GrayscaleImage parse_pgm(std::istream& in);
GrayscaleImage load_pgm(const std::filesystem::path& path);

// Distinct failure kinds reported by the PGM reader.
class PgmError : public ParseError {
public:
    enum class Kind { BadMagic, BadMaxval, Truncated, Malformed };
    PgmError(Kind kind, const std::string& what) : ParseError(what, 0), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace colsnn
