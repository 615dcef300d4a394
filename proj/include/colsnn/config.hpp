#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "colsnn/train.hpp"

namespace colsnn {

// TOML-style configuration:
//
//   # comment
//   [section]
//   key = value      # numbers, true/false, or "quoted" / bare strings
//
// Sections: train, encoding, network, neuron, hidden_stdp, eligibility_stdp,
// experiment. Every key is optional; unknown keys, repeated keys, bad values
// and failed validation raise ConfigError naming the field path.
TrainConfig parse_config(std::istream& in);
TrainConfig parse_config_text(std::string_view text);
TrainConfig load_config(const std::filesystem::path& path);

// Full config in the same format; parse_config reads it back exactly.
void write_config(std::ostream& out, const TrainConfig& config);
std::string config_text(const TrainConfig& config);

// Every accepted field path, in write order.
std::vector<std::string> config_keys();

// Validate each section, prefixing errors with its name.
void validate_config(const TrainConfig& config);

}  // namespace colsnn
