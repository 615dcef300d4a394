#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "colsnn/rng.hpp"
#include "colsnn/spike_train.hpp"

namespace colsnn {

// Word -> index map with indices exactly 0..size()-1.
class Dictionary {
public:
    Dictionary() = default;
    explicit Dictionary(std::vector<std::string> words);

    std::optional<std::size_t> index_of(std::string_view word) const;
    const std::string& word(std::size_t index) const { return words_.at(index); }
    const std::vector<std::string>& words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool empty() const noexcept { return words_.empty(); }

    friend bool operator==(const Dictionary& a, const Dictionary& b) { return a.words_ == b.words_; }

private:
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct EncoderConfig {
    Step window{200};               // steps spanned by a full-length input
    std::size_t max_tokens{20};     // slot / position-code capacity
    std::size_t n_word_neurons{100};
    std::size_t n_pos_neurons{100};
    double poisson_rate{0.1};       // expected spikes per neuron per step
    double sparsity{0.10};
    double gaussian_sigma{2.0};     // in position-neuron units
    std::uint64_t seed{0};

    void validate() const;

    // Step at which token slot i starts: round(i * window / max_tokens).
    Step slot_step(std::size_t i) const;
    // Horizon of a slot-encoded input of `tokens` tokens (at least one slot).
    Step slot_horizon(std::size_t tokens) const;
};

// ceil(sparsity * n), at least one neuron.
std::size_t code_size(double sparsity, std::size_t n);

// Fixed random sparse codes: one per dictionary word over [0, n_word) and
// one per token position over [n_word, n_word + n_pos).
class Codebook {
public:
    Codebook(std::size_t vocabulary, const EncoderConfig& config);

    std::size_t vocabulary() const noexcept { return word_codes_.size(); }
    std::size_t positions() const noexcept { return pos_codes_.size(); }
    std::size_t n_word_neurons() const noexcept { return n_word_; }
    std::size_t n_pos_neurons() const noexcept { return n_pos_; }
    std::size_t neuron_space() const noexcept { return n_word_ + n_pos_; }

    const std::vector<NeuronIndex>& word_code(std::size_t word) const;
    const std::vector<NeuronIndex>& position_code(std::size_t position) const;

    friend bool operator==(const Codebook&, const Codebook&) = default;

private:
    std::size_t n_word_;
    std::size_t n_pos_;
    std::vector<std::vector<NeuronIndex>> word_codes_;
    std::vector<std::vector<NeuronIndex>> pos_codes_;
};

struct GrayscaleImage {
    std::size_t width{0};
    std::size_t height{0};
    std::vector<int> pixels;  // row-major
};

enum class EncoderKind { Ttfs, Poisson, PosFixed, PosWord, Codebook, GaussPosWord };

std::string_view to_string(EncoderKind kind);
std::optional<EncoderKind> parse_encoder_kind(std::string_view name);
std::span<const std::string_view> encoder_names();

// Neuron-space size produced by a text encoder.
std::size_t encoder_neuron_space(EncoderKind kind, std::size_t vocabulary, const EncoderConfig& config);

using Tokens = std::vector<std::string>;

// One spike per pixel at round(window * pixel / 255), or at
// round(window * (1 - pixel / 255)) when inverted. Horizon window + 1.
SpikeTrain ttfs_encode(const GrayscaleImage& image, Step window, bool invert = false);

// Bernoulli(min(rate, 1)) per step for every dictionary word in the input.
SpikeTrain poisson_encode(const Tokens& tokens, const Dictionary& dict, const EncoderConfig& config, Rng& rng);

// Word neuron fires once at round(window * i / max(L - 1, 1)). Horizon window + 1.
SpikeTrain position_fixed_encode(const Tokens& tokens, const Dictionary& dict, const EncoderConfig& config);

// Word neuron w and position neuron V + i fire together at slot i.
SpikeTrain pos_word_encode(const Tokens& tokens, const Dictionary& dict, const EncoderConfig& config);

// Union of the word code and the position code at slot i.
SpikeTrain codebook_encode(const Tokens& tokens, const Dictionary& dict, const Codebook& codebook,
                           const EncoderConfig& config);

// Rounded, clamped draws from Normal(mu, sigma) over [0, n_pos), not deduplicated.
std::vector<std::size_t> gaussian_position_indices(double mu, double sigma, std::size_t count, std::size_t n_pos,
                                                   Rng& rng);

// Word code as codebook_encode; position neurons sampled around the
// token's relative position.
SpikeTrain gaussian_pos_word_encode(const Tokens& tokens, const Dictionary& dict, const Codebook& codebook,
                                    const EncoderConfig& config, Rng& rng);

// Concatenates items, item j shifted by j * (common item horizon).
SpikeTrain encode_sequence(std::span<const SpikeTrain> items);

// Dispatch for the text encoders; `codebook` is required by the codebook family.
SpikeTrain encode_text(EncoderKind kind, const Tokens& tokens, const Dictionary& dict, const Codebook* codebook,
                       const EncoderConfig& config, Rng& rng);

}  // namespace colsnn
