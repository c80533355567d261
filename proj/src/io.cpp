#include "dmcq/io.hpp"

#include <cmath>
#include <fstream>

#include "dmcq/bounds.hpp"

namespace dmcq {

namespace {

double number_at(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number()) {
    throw parse_error(where + ": not a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw parse_error(where + ": not finite");
  }
  if (d < 0.0) {
    throw parse_error(where + ": negative entry");
  }
  return d;
}

}  // namespace

ChannelFile parse_channel_json(const nlohmann::json& doc, bool renormalize) {
  if (!doc.is_object()) {
    throw parse_error("root: expected a JSON object");
  }
  if (!doc.contains("input_dist") || !doc["input_dist"].is_array()) {
    throw parse_error("input_dist: missing or not an array");
  }
  if (!doc.contains("channel") || !doc["channel"].is_array()) {
    throw parse_error("channel: missing or not an array");
  }

  const nlohmann::json& dist = doc["input_dist"];
  std::vector<double> probs;
  probs.reserve(dist.size());
  for (std::size_t x = 0; x < dist.size(); ++x) {
    probs.push_back(
        number_at(dist[x], "input_dist[" + std::to_string(x) + "]"));
  }

  const nlohmann::json& rows_json = doc["channel"];
  if (rows_json.size() != probs.size()) {
    throw parse_error("channel: has " + std::to_string(rows_json.size()) +
                      " rows but input_dist has " +
                      std::to_string(probs.size()) + " entries");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(rows_json.size());
  for (std::size_t x = 0; x < rows_json.size(); ++x) {
    const std::string field = "channel[" + std::to_string(x) + "]";
    if (!rows_json[x].is_array()) {
      throw parse_error(field + ": not an array");
    }
    std::vector<double> row;
    row.reserve(rows_json[x].size());
    for (std::size_t y = 0; y < rows_json[x].size(); ++y) {
      row.push_back(number_at(rows_json[x][y],
                              field + "[" + std::to_string(y) + "]"));
    }
    rows.push_back(std::move(row));
  }

  // Zero-probability input letters are stripped with their rows; nothing
  // downstream can use them and the validated types require positive mass.
  std::vector<std::uint32_t> removed;
  std::vector<double> kept_probs;
  std::vector<std::vector<double>> kept_rows;
  for (std::size_t x = 0; x < probs.size(); ++x) {
    if (probs[x] == 0.0) {
      removed.push_back(static_cast<std::uint32_t>(x));
    } else {
      kept_probs.push_back(probs[x]);
      kept_rows.push_back(std::move(rows[x]));
    }
  }

  try {
    Channel channel = Channel::validated(std::move(kept_rows), renormalize);
    InputDistribution input =
        InputDistribution::validated(std::move(kept_probs), renormalize);
    if (channel.num_inputs() != input.size()) {
      throw parse_error("channel: row count does not match input_dist");
    }
    return ChannelFile{std::move(channel), std::move(input),
                       std::move(removed)};
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

ChannelFile load_channel_file(const std::string& path, bool renormalize) {
  std::ifstream in(path);
  if (!in) {
    throw parse_error("cannot open channel file: " + path);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(path + ": " + e.what());
  }
  return parse_channel_json(doc, renormalize);
}

nlohmann::json channel_to_json(const Channel& channel,
                               const InputDistribution& input) {
  nlohmann::json doc;
  doc["input_dist"] = input.probs();
  doc["channel"] = channel.rows();
  return doc;
}

void save_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write to " + path);
  }
  out << doc.dump(2) << '\n';
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

nlohmann::json report_to_json(const DegradeReport& report,
                              const InputDistribution& input,
                              const Channel& merged, bool include_bounds) {
  nlohmann::json doc;
  doc["map"] = report.map.assignment();
  doc["total_delta_nats"] = report.total_loss;
  nlohmann::json steps = nlohmann::json::array();
  const std::size_t k = input.size();
  for (const DegradeStep& step : report.steps) {
    nlohmann::json row;
    row["a"] = step.a;
    row["b"] = step.b;
    row["delta"] = step.loss;
    row["size_before"] = step.size_before;
    if (include_bounds) {
      if (step.size_before > 2 * k) {
        row["bound"] = per_step_bound(k, step.size_before);
      } else {
        row["bound"] = nullptr;
      }
    }
    steps.push_back(std::move(row));
  }
  doc["steps"] = std::move(steps);
  doc["merged_channel"] = channel_to_json(merged, input);
  return doc;
}

}  // namespace dmcq
