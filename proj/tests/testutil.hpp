#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dmcq/channel.hpp"
#include "dmcq/info.hpp"
#include "dmcq/random.hpp"

namespace testutil {

inline bool close_abs(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

inline dmcq::PosteriorChannel random_posterior(std::size_t num_inputs,
                                               std::size_t num_outputs,
                                               std::uint64_t seed) {
  dmcq::RandomInstance inst =
      dmcq::random_channel(num_inputs, num_outputs, seed);
  return dmcq::to_posterior_form(inst.channel, inst.input);
}

// Flat-Dirichlet sample as a plain vector.
inline std::vector<double> random_simplex(dmcq::Rng& rng, std::size_t k) {
  std::vector<double> v(k);
  rng.fill_simplex(v);
  return v;
}

inline std::filesystem::path temp_dir() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("dmcq_tests_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

#ifdef DMCQ_CLI_PATH
// Runs the CLI binary with `args`, returns its exit status; stdout+stderr
// are captured into `output` when given.
inline int run_cli(const std::string& args, std::string* output = nullptr) {
  static int counter = 0;
  const auto capture = temp_dir() / ("cli_out_" + std::to_string(counter++));
  const std::string cmd =
      std::string(DMCQ_CLI_PATH) + " " + args + " > " + capture.string() +
      " 2>&1";
  const int raw = std::system(cmd.c_str());
  if (output) *output = read_file(capture);
  if (raw == -1) return -1;
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}
#endif

}  // namespace testutil
