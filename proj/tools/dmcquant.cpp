// dmcquant: degrade a discrete memoryless channel to a small output
// alphabet by greedy pairwise merging, check the analytic loss bounds, and
// run power-law sweep experiments.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmcq/bounds.hpp"
#include "dmcq/experiment.hpp"
#include "dmcq/info.hpp"
#include "dmcq/io.hpp"
#include "dmcq/merge.hpp"
#include "dmcq/oracles.hpp"
#include "dmcq/random.hpp"
#include "dmcq/verify.hpp"

namespace {

struct RandomSpec {
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
  std::uint64_t seed = 0;
};

RandomSpec parse_random_spec(const std::string& spec) {
  RandomSpec out;
  bool have_x = false;
  bool have_y = false;
  std::size_t pos = 0;
  while (pos < spec.size()) {
    std::size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    const std::string item = spec.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("--random: expected key=value, got '" +
                                  item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "X" || key == "x") {
        out.num_inputs = std::stoull(value);
        have_x = true;
      } else if (key == "Y" || key == "y") {
        out.num_outputs = std::stoull(value);
        have_y = true;
      } else if (key == "seed") {
        out.seed = std::stoull(value);
      } else {
        throw std::invalid_argument("--random: unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("--random: bad value for '" + key + "'");
    }
    pos = comma + 1;
  }
  if (!have_x || !have_y) {
    throw std::invalid_argument("--random: both X= and Y= are required");
  }
  return out;
}

struct Instance {
  dmcq::Channel channel;
  dmcq::InputDistribution input;
};

Instance resolve_instance(const std::string& path, const std::string& random,
                          bool renormalize) {
  if (!path.empty() && !random.empty()) {
    throw std::invalid_argument("give either --in or --random, not both");
  }
  if (!random.empty()) {
    const RandomSpec spec = parse_random_spec(random);
    dmcq::RandomInstance inst =
        dmcq::random_channel(spec.num_inputs, spec.num_outputs, spec.seed);
    return Instance{std::move(inst.channel), std::move(inst.input)};
  }
  if (path.empty()) {
    throw std::invalid_argument("need a channel: --in FILE or --random SPEC");
  }
  dmcq::ChannelFile file = dmcq::load_channel_file(path, renormalize);
  if (!file.removed_inputs.empty()) {
    std::cerr << "note: stripped " << file.removed_inputs.size()
              << " zero-probability input letter(s)\n";
  }
  return Instance{std::move(file.channel), std::move(file.input)};
}

const char* status_word(dmcq::CheckStatus s) {
  switch (s) {
    case dmcq::CheckStatus::pass: return "PASS";
    case dmcq::CheckStatus::fail: return "FAIL";
    default: return "SKIP";
  }
}

std::string format_blocks(const dmcq::Partition& partition) {
  std::string out;
  for (const auto& block : partition.blocks) {
    out += '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(block[i]);
    }
    out += "} ";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Channel degrading toolkit: greedy output-letter merging with "
               "exact loss accounting, bound verification, optimality "
               "oracles, and sweep experiments"};
  app.require_subcommand(1);

  std::string in_path;
  std::string random_spec;
  std::string out_path;
  bool renormalize = false;
  bool trace = false;
  std::size_t target = 2;
  std::size_t num_inputs = 2;
  std::size_t num_outputs = 64;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::vector<std::size_t> targets;
  std::string method = "brute";
  double coeff_scale = 1.0;

  CLI::App* gen = app.add_subcommand("gen", "emit a seeded random channel file");
  gen->add_option("-x,--inputs", num_inputs, "input alphabet size")->required();
  gen->add_option("-y,--outputs", num_outputs, "output alphabet size")->required();
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("-o,--out", out_path, "output file")->required();

  CLI::App* degrade =
      app.add_subcommand("degrade", "greedily degrade a channel to L letters");
  degrade->add_option("--in", in_path, "channel file");
  degrade->add_option("--random", random_spec, "generate instead: X=2,Y=64,seed=7");
  degrade->add_option("-L,--target", target, "output letters to keep")->required();
  degrade->add_option("-o,--out", out_path, "report file")->required();
  degrade->add_flag("--trace", trace, "include per-step bound values");
  degrade->add_flag("--renormalize", renormalize, "rescale slightly-off rows");

  CLI::App* verify =
      app.add_subcommand("verify", "check the degrading bounds on a channel");
  verify->add_option("--in", in_path, "channel file");
  verify->add_option("--random", random_spec, "generate instead: X=2,Y=64,seed=7");
  verify->add_option("-L,--target", targets, "targets for the cumulative check");
  verify->add_flag("--renormalize", renormalize, "rescale slightly-off rows");
  verify->add_option("--bound-scale", coeff_scale,
                     "testing hook: scale the bound coefficients")
      ->group("");

  CLI::App* oracle =
      app.add_subcommand("oracle", "optimal degrading loss on small instances");
  oracle->add_option("--in", in_path, "channel file");
  oracle->add_option("--random", random_spec, "generate instead: X=2,Y=8,seed=7");
  oracle->add_option("-L,--target", target, "block budget")->required();
  oracle->add_option("--method", method, "brute (any |X|) or dp (|X| = 2)")
      ->check(CLI::IsMember({"brute", "dp"}));
  oracle->add_flag("--renormalize", renormalize, "rescale slightly-off rows");

  CLI::App* sweep =
      app.add_subcommand("sweep", "greedy loss vs. bound over seeded trials");
  sweep->add_option("-x,--inputs", num_inputs, "input alphabet size")->required();
  sweep->add_option("-y,--outputs", num_outputs, "output alphabet size")->required();
  sweep->add_option("-L,--target", targets, "target sizes")->required();
  sweep->add_option("--trials", trials, "number of seeded trials")->required();
  sweep->add_option("--seed", seed, "master seed");
  sweep->add_option("-o,--out", out_path, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      dmcq::RandomInstance inst =
          dmcq::random_channel(num_inputs, num_outputs, seed);
      dmcq::save_json(out_path, dmcq::channel_to_json(inst.channel, inst.input));
      std::cout << "wrote " << num_inputs << "x" << num_outputs
                << " channel to " << out_path << "\n";
      return 0;
    }

    if (*degrade) {
      Instance inst = resolve_instance(in_path, random_spec, renormalize);
      const dmcq::PosteriorChannel pc =
          dmcq::to_posterior_form(inst.channel, inst.input);
      const dmcq::DegradeReport report = dmcq::greedy_degrade(pc, target);
      const dmcq::Channel merged =
          dmcq::apply_degrading_map(inst.channel, report.map);
      dmcq::save_json(out_path, dmcq::report_to_json(report, inst.input,
                                                     merged, trace));
      const double before = dmcq::mutual_information(pc);
      const double after = dmcq::mutual_information(report.result);
      std::cout << "letters: " << pc.size() << " -> " << report.result.size()
                << " (" << report.steps.size() << " merges)\n"
                << "I before = " << dmcq::format_sig12(before) << " nats ("
                << dmcq::format_sig12(dmcq::nats_to_bits(before)) << " bits)\n"
                << "I after  = " << dmcq::format_sig12(after) << " nats ("
                << dmcq::format_sig12(dmcq::nats_to_bits(after)) << " bits)\n"
                << "loss     = " << dmcq::format_sig12(report.total_loss)
                << " nats ("
                << dmcq::format_sig12(dmcq::nats_to_bits(report.total_loss))
                << " bits)\n"
                << "report written to " << out_path << "\n";
      return 0;
    }

    if (*verify) {
      Instance inst = resolve_instance(in_path, random_spec, renormalize);
      const dmcq::PosteriorChannel pc =
          dmcq::to_posterior_form(inst.channel, inst.input);
      if (targets.empty()) {
        const std::size_t k = pc.num_inputs();
        targets = {2 * k, 4 * k, 8 * k};
      }
      dmcq::VerifyOptions options;
      options.targets = targets;
      options.coeff_scale = coeff_scale;
      const dmcq::VerifyReport report = dmcq::run_verification(pc, options);
      for (const dmcq::CheckResult& check : report.checks) {
        std::printf("%-4s  %-24s  %s\n", status_word(check.status),
                    check.name.c_str(), check.detail.c_str());
      }
      if (report.any_fail()) {
        std::printf("RESULT: FAIL\n");
        return 1;
      }
      std::printf("RESULT: PASS\n");
      return 0;
    }

    if (*oracle) {
      Instance inst = resolve_instance(in_path, random_spec, renormalize);
      const dmcq::PosteriorChannel pc =
          dmcq::to_posterior_form(inst.channel, inst.input);
      const dmcq::OracleResult best = method == "dp"
                                          ? dmcq::optimal_binary_dp(pc, target)
                                          : dmcq::brute_force_optimal(pc, target);
      const dmcq::DegradeReport greedy = dmcq::greedy_degrade(pc, target);
      const double gap = greedy.total_loss - best.loss;
      std::cout << "delta_star_nats  = " << dmcq::format_sig12(best.loss) << "\n"
                << "blocks           = " << format_blocks(best.partition) << "\n"
                << "greedy_loss_nats = " << dmcq::format_sig12(greedy.total_loss)
                << "\n"
                << "greedy_gap_nats  = " << dmcq::format_sig12(gap) << "\n";
      if (gap < -1e-10) {
        throw dmcq::bound_violation(
            "greedy beat the exhaustive optimum; implementation bug");
      }
      return 0;
    }

    if (*sweep) {
      dmcq::SweepConfig config;
      config.num_inputs = num_inputs;
      config.num_outputs = num_outputs;
      config.targets = targets;
      config.trials = trials;
      config.seed = seed;
      std::ofstream csv(out_path);
      if (!csv) {
        throw std::runtime_error("cannot write to " + out_path);
      }
      dmcq::run_sweep(config, csv);
      if (!csv) {
        throw std::runtime_error("write failed: " + out_path);
      }
      std::cout << "wrote " << trials * targets.size() << " rows to "
                << out_path << "\n";
      return 0;
    }
  } catch (const dmcq::guard_error& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const dmcq::bound_violation& e) {
    std::cerr << "bound violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
