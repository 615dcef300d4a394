#pragma once

#include <nlohmann/json.hpp>

#include "colsnn/column_net.hpp"
#include "colsnn/encoders.hpp"
#include "colsnn/lif.hpp"
#include "colsnn/stdp.hpp"
#include "colsnn/train.hpp"

namespace colsnn {

void to_json(nlohmann::json& j, const NeuronParams& p);
void from_json(const nlohmann::json& j, NeuronParams& p);
void to_json(nlohmann::json& j, const StdpParams& p);
void from_json(const nlohmann::json& j, StdpParams& p);
void to_json(nlohmann::json& j, const EncoderConfig& c);
void from_json(const nlohmann::json& j, EncoderConfig& c);
void to_json(nlohmann::json& j, const ColumnNetConfig& c);
void from_json(const nlohmann::json& j, ColumnNetConfig& c);

// Output only.
void to_json(nlohmann::json& j, const TrainConfig& c);
void to_json(nlohmann::json& j, const EpochMetrics& m);
void to_json(nlohmann::json& j, const EvalReport& r);
void to_json(nlohmann::json& j, const ExperimentReport& r);

}  // namespace colsnn
