#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmcq/channel.hpp"
#include "dmcq/merge.hpp"

namespace dmcq {

/// Raised for malformed channel files; the message names the first invalid
/// field (e.g. "channel[2][5]: negative entry").
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChannelFile {
  Channel channel;
  InputDistribution input;
  /// Original input indices whose probability was exactly zero; they are
  /// stripped (with their channel rows) before validation.
  std::vector<std::uint32_t> removed_inputs;
};

/// Parses the channel file schema: {"input_dist": [|X| numbers],
/// "channel": [|X| rows of |Y| numbers]}. Rejects NaN/Inf, negative entries,
/// ragged rows, and size mismatches.
ChannelFile parse_channel_json(const nlohmann::json& doc,
                               bool renormalize = false);

ChannelFile load_channel_file(const std::string& path,
                              bool renormalize = false);

nlohmann::json channel_to_json(const Channel& channel,
                               const InputDistribution& input);

void save_json(const std::string& path, const nlohmann::json& doc);

/// Serializes a degrade report: map, total_delta_nats, steps, and the merged
/// channel in the channel file format. With `include_bounds`, each step also
/// carries the per-step bound at its alphabet size (null once the size is at
/// or below 2|X|, where no bound is claimed).
nlohmann::json report_to_json(const DegradeReport& report,
                              const InputDistribution& input,
                              const Channel& merged, bool include_bounds);

}  // namespace dmcq
