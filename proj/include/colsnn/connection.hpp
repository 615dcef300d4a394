#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "colsnn/spike_train.hpp"

namespace colsnn {

enum class Sign : int { Excitatory = 1, Inhibitory = -1 };
enum class PlasticityMode { None, Stdp, Rstdp };

std::string_view to_string(Sign sign);
std::string_view to_string(PlasticityMode mode);
Sign parse_sign(std::string_view text);
PlasticityMode parse_plasticity_mode(std::string_view text);

struct WeightBounds {
    double w_min{0.0};
    double w_max{1.0};

    friend bool operator==(const WeightBounds&, const WeightBounds&) = default;
};

// Dense pre x post synapse matrix with a fixed sign.
//
// Magnitudes are non-negative and always clamped into [w_min, w_max]; the
// current delivered by a presynaptic spike is sign * gain * weight.
class Connection {
public:
    Connection(PopulationId pre, PopulationId post, std::size_t pre_size, std::size_t post_size, Sign sign,
               PlasticityMode mode = PlasticityMode::None, WeightBounds bounds = {}, double gain = 1.0);

    PopulationId pre() const noexcept { return pre_; }
    PopulationId post() const noexcept { return post_; }
    std::size_t pre_size() const noexcept { return pre_size_; }
    std::size_t post_size() const noexcept { return post_size_; }
    Sign sign() const noexcept { return sign_; }
    PlasticityMode mode() const noexcept { return mode_; }
    const WeightBounds& bounds() const noexcept { return bounds_; }
    double gain() const noexcept { return gain_; }

    // Signed current per unit weight.
    double efficacy() const noexcept { return static_cast<int>(sign_) * gain_; }

    double weight(std::size_t pre, std::size_t post) const { return weights_[pre * post_size_ + post]; }
    std::span<const double> row(std::size_t pre) const {
        return {weights_.data() + pre * post_size_, post_size_};
    }
    std::span<const double> weights() const noexcept { return weights_; }

    double clamp(double w) const noexcept;
    void set(std::size_t pre, std::size_t post, double w) { weights_[pre * post_size_ + post] = clamp(w); }
    void add(std::size_t pre, std::size_t post, double dw) { set(pre, post, weight(pre, post) + dw); }
    void fill(double w);
    // Replaces the whole matrix; values are clamped.
    void assign(std::span<const double> values);
    void scale(double factor);

    friend bool operator==(const Connection&, const Connection&) = default;

private:
    PopulationId pre_;
    PopulationId post_;
    std::size_t pre_size_;
    std::size_t post_size_;
    Sign sign_;
    PlasticityMode mode_;
    WeightBounds bounds_;
    double gain_;
    std::vector<double> weights_;
};

// Snapshot as `<stem>.csv` (rows = presynaptic, columns = postsynaptic)
// plus `<stem>.json` holding sign, mode, bounds, gain and endpoints.
void save_connection(const Connection& conn, const std::filesystem::path& dir, const std::string& stem);
Connection load_connection(const std::filesystem::path& dir, const std::string& stem);

}  // namespace colsnn
