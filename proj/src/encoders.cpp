#include "colsnn/encoders.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "colsnn/errors.hpp"

namespace colsnn {

Dictionary::Dictionary(std::vector<std::string> words) : words_(std::move(words)) {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        if (!index_.emplace(words_[i], i).second) throw ConfigError("duplicate dictionary word '" + words_[i] + "'");
    }
}

std::optional<std::size_t> Dictionary::index_of(std::string_view word) const {
    auto it = index_.find(std::string(word));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void EncoderConfig::validate() const {
    if (window < 1) throw ConfigError("encoder.window must be >= 1");
    if (max_tokens < 1) throw ConfigError("encoder.max_tokens must be >= 1");
    if (n_word_neurons < 1) throw ConfigError("encoder.n_word_neurons must be >= 1");
    if (n_pos_neurons < 1) throw ConfigError("encoder.n_pos_neurons must be >= 1");
    if (!(poisson_rate >= 0.0) || !std::isfinite(poisson_rate)) throw ConfigError("encoder.poisson_rate must be >= 0");
    if (!(sparsity > 0.0 && sparsity <= 1.0)) throw ConfigError("encoder.sparsity must lie in (0, 1]");
    if (!(gaussian_sigma > 0.0) || !std::isfinite(gaussian_sigma)) {
        throw ConfigError("encoder.gaussian_sigma must be > 0");
    }
}

Step EncoderConfig::slot_step(std::size_t i) const {
    return std::lround(static_cast<double>(i) * static_cast<double>(window) / static_cast<double>(max_tokens));
}

Step EncoderConfig::slot_horizon(std::size_t tokens) const {
    return std::max<Step>(1, slot_step(std::max<std::size_t>(tokens, 1)));
}

std::size_t code_size(double sparsity, std::size_t n) {
    // The epsilon absorbs representation error such as 0.1 * 30 = 3.0000000000000004.
    const auto k = static_cast<std::size_t>(std::ceil(sparsity * static_cast<double>(n) - 1e-9));
    return std::clamp<std::size_t>(k, 1, n);
}

namespace {

std::vector<NeuronIndex> sample_code(std::size_t n, std::size_t k, std::size_t offset, Rng& rng) {
    std::vector<NeuronIndex> all(n);
    std::iota(all.begin(), all.end(), static_cast<NeuronIndex>(offset));
    std::vector<NeuronIndex> code;
    code.reserve(k);
    std::sample(all.begin(), all.end(), std::back_inserter(code), k, rng);
    return code;
}

constexpr std::array<std::string_view, 6> kEncoderNames = {"ttfs",     "poisson",  "pos-fixed",
                                                           "pos-word", "codebook", "gauss-pos-word"};

double relative_position(std::size_t i, std::size_t length) {
    return static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(length, 2) - 1);
}

}  // namespace

Codebook::Codebook(std::size_t vocabulary, const EncoderConfig& config)
    : n_word_(config.n_word_neurons), n_pos_(config.n_pos_neurons) {
    config.validate();
    auto rng = derive_rng(config.seed, stream::kCodebook);
    const auto kw = code_size(config.sparsity, n_word_);
    const auto kp = code_size(config.sparsity, n_pos_);
    word_codes_.reserve(vocabulary);
    for (std::size_t w = 0; w < vocabulary; ++w) word_codes_.push_back(sample_code(n_word_, kw, 0, rng));
    pos_codes_.reserve(config.max_tokens);
    for (std::size_t p = 0; p < config.max_tokens; ++p) pos_codes_.push_back(sample_code(n_pos_, kp, n_word_, rng));
}

const std::vector<NeuronIndex>& Codebook::word_code(std::size_t word) const {
    if (word >= word_codes_.size()) throw CapacityError("no code for word index " + std::to_string(word));
    return word_codes_[word];
}

const std::vector<NeuronIndex>& Codebook::position_code(std::size_t position) const {
    if (position >= pos_codes_.size()) throw CapacityError("no code for position " + std::to_string(position));
    return pos_codes_[position];
}

std::string_view to_string(EncoderKind kind) {
    return kEncoderNames[static_cast<std::size_t>(kind)];
}

std::optional<EncoderKind> parse_encoder_kind(std::string_view name) {
    for (std::size_t i = 0; i < kEncoderNames.size(); ++i) {
        if (kEncoderNames[i] == name) return static_cast<EncoderKind>(i);
    }
    return std::nullopt;
}

std::span<const std::string_view> encoder_names() {
    return kEncoderNames;
}

std::size_t encoder_neuron_space(EncoderKind kind, std::size_t vocabulary, const EncoderConfig& config) {
    switch (kind) {
        case EncoderKind::Poisson:
        case EncoderKind::PosFixed: return vocabulary;
        case EncoderKind::PosWord: return vocabulary + config.n_pos_neurons;
        case EncoderKind::Codebook:
        case EncoderKind::GaussPosWord: return config.n_word_neurons + config.n_pos_neurons;
        case EncoderKind::Ttfs: break;
    }
    throw ConfigError("ttfs is an image encoder; its neuron space is the pixel count");
}

SpikeTrain ttfs_encode(const GrayscaleImage& image, Step window, bool invert) {
    if (window < 1) throw InputError("ttfs window must be >= 1");
    if (image.pixels.size() != image.width * image.height) throw InputError("pixel count != width * height");
    std::vector<SpikeEvent> events;
    events.reserve(image.pixels.size());
    for (std::size_t p = 0; p < image.pixels.size(); ++p) {
        const int v = image.pixels[p];
        if (v < 0 || v > 255) throw InputError("pixel value " + std::to_string(v) + " outside [0, 255]");
        const double frac = invert ? 1.0 - v / 255.0 : v / 255.0;
        const Step t = std::clamp<Step>(std::lround(static_cast<double>(window) * frac), 0, window);
        events.push_back({static_cast<NeuronIndex>(p), t});
    }
    return SpikeTrain::from_events(image.pixels.size(), window + 1, std::move(events));
}

SpikeTrain poisson_encode(const Tokens& tokens, const Dictionary& dict, const EncoderConfig& config, Rng& rng) {
    config.validate();
    std::vector<char> present(dict.size(), 0);
    for (const auto& t : tokens) {
        if (auto w = dict.index_of(t)) present[*w] = 1;
    }
    const double p = std::min(config.poisson_rate, 1.0);
    std::vector<SpikeEvent> events;
    if (p > 0.0) {
        std::bernoulli_distribution fire(p);
        for (std::size_t w = 0; w < dict.size(); ++w) {
            if (!present[w]) continue;
            for (Step s = 0; s < config.window; ++s) {
                if (fire(rng)) events.push_back({static_cast<NeuronIndex>(w), s});
            }
        }
    }
    return SpikeTrain::from_events(dict.size(), config.window, std::move(events));
}

SpikeTrain position_fixed_encode(const Tokens& tokens, const Dictionary& dict, const EncoderConfig& config) {
    config.validate();
    if (tokens.empty()) throw InputError("position encoding needs at least one token");
    std::vector<SpikeEvent> events;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto w = dict.index_of(tokens[i]);
        if (!w) continue;
        const Step t = std::lround(static_cast<double>(config.window) * relative_position(i, tokens.size()));
        events.push_back({static_cast<NeuronIndex>(*w), t});
    }
    return SpikeTrain::from_events(dict.size(), config.window + 1, std::move(events));
}

SpikeTrain pos_word_encode(const Tokens& tokens, const Dictionary& dict, const EncoderConfig& config) {
    config.validate();
    if (tokens.size() > config.n_pos_neurons || tokens.size() > config.max_tokens) {
        throw CapacityError(std::to_string(tokens.size()) + " tokens exceed the position capacity");
    }
    const auto v = dict.size();
    std::vector<SpikeEvent> events;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto w = dict.index_of(tokens[i]);
        if (!w) continue;
        const Step t = config.slot_step(i);
        events.push_back({static_cast<NeuronIndex>(*w), t});
        events.push_back({static_cast<NeuronIndex>(v + i), t});
    }
    return SpikeTrain::from_events(v + config.n_pos_neurons, config.slot_horizon(tokens.size()), std::move(events));
}

namespace {

void check_codebook(const Dictionary& dict, const Codebook& codebook, const EncoderConfig& config) {
    if (codebook.vocabulary() != dict.size() || codebook.n_word_neurons() != config.n_word_neurons ||
        codebook.n_pos_neurons() != config.n_pos_neurons) {
        throw ConfigError("codebook was built for a different dictionary or encoder config");
    }
}

}  // namespace

SpikeTrain codebook_encode(const Tokens& tokens, const Dictionary& dict, const Codebook& codebook,
                           const EncoderConfig& config) {
    config.validate();
    check_codebook(dict, codebook, config);
    std::vector<SpikeEvent> events;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto w = dict.index_of(tokens[i]);
        if (!w) continue;
        const Step t = config.slot_step(i);
        for (auto n : codebook.word_code(*w)) events.push_back({n, t});
        for (auto n : codebook.position_code(i)) events.push_back({n, t});
    }
    return SpikeTrain::from_events(codebook.neuron_space(), config.slot_horizon(tokens.size()), std::move(events));
}

std::vector<std::size_t> gaussian_position_indices(double mu, double sigma, std::size_t count, std::size_t n_pos,
                                                   Rng& rng) {
    if (!(sigma > 0.0)) throw DomainError("gaussian sigma must be > 0");
    if (n_pos == 0) throw DomainError("no position neurons");
    std::normal_distribution<double> draw(mu, sigma);
    std::vector<std::size_t> out;
    out.reserve(count);
    const auto top = static_cast<long>(n_pos) - 1;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(static_cast<std::size_t>(std::clamp<long>(std::lround(draw(rng)), 0, top)));
    }
    return out;
}

SpikeTrain gaussian_pos_word_encode(const Tokens& tokens, const Dictionary& dict, const Codebook& codebook,
                                    const EncoderConfig& config, Rng& rng) {
    config.validate();
    check_codebook(dict, codebook, config);
    if (tokens.size() > config.max_tokens) {
        throw CapacityError(std::to_string(tokens.size()) + " tokens exceed max_tokens");
    }
    const auto k = code_size(config.sparsity, config.n_pos_neurons);
    const double span = static_cast<double>(config.n_pos_neurons - 1);
    std::vector<SpikeEvent> events;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto w = dict.index_of(tokens[i]);
        if (!w) continue;
        const Step t = config.slot_step(i);
        for (auto n : codebook.word_code(*w)) events.push_back({n, t});
        const double mu = relative_position(i, tokens.size()) * span;
        for (auto p : gaussian_position_indices(mu, config.gaussian_sigma, k, config.n_pos_neurons, rng)) {
            events.push_back({static_cast<NeuronIndex>(config.n_word_neurons + p), t});
        }
    }
    return SpikeTrain::from_events(codebook.neuron_space(), config.slot_horizon(tokens.size()), std::move(events));
}

SpikeTrain encode_sequence(std::span<const SpikeTrain> items) {
    if (items.empty()) return {};
    const auto neurons = items.front().neurons();
    const auto window = items.front().horizon();
    std::vector<SpikeEvent> events;
    for (std::size_t j = 0; j < items.size(); ++j) {
        if (items[j].neurons() != neurons || items[j].horizon() != window) {
            throw ConfigError("sequence items must share neuron space and horizon");
        }
        const Step offset = static_cast<Step>(j) * window;
        for (const auto& e : items[j].events()) events.push_back({e.neuron, e.step + offset});
    }
    return SpikeTrain::from_events(neurons, window * static_cast<Step>(items.size()), std::move(events));
}

SpikeTrain encode_text(EncoderKind kind, const Tokens& tokens, const Dictionary& dict, const Codebook* codebook,
                       const EncoderConfig& config, Rng& rng) {
    switch (kind) {
        case EncoderKind::Poisson: return poisson_encode(tokens, dict, config, rng);
        case EncoderKind::PosFixed: return position_fixed_encode(tokens, dict, config);
        case EncoderKind::PosWord: return pos_word_encode(tokens, dict, config);
        case EncoderKind::Codebook:
            if (!codebook) throw ConfigError("codebook encoder needs a codebook");
            return codebook_encode(tokens, dict, *codebook, config);
        case EncoderKind::GaussPosWord:
            if (!codebook) throw ConfigError("gauss-pos-word encoder needs a codebook");
            return gaussian_pos_word_encode(tokens, dict, *codebook, config, rng);
        case EncoderKind::Ttfs: break;
    }
    throw ConfigError("ttfs encodes images, not tokens");
}

}  // namespace colsnn
