#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fekete_dyn/errors.hpp"
#include "fekete_dyn/fekete_lab.hpp"
#include "fekete_dyn/serialize.hpp"

namespace fekete_dyn {

struct ExperimentConfig {
  std::string command;
  std::string map_path;
  int n = 0;
  int n_max = 0;
  std::vector<std::string> observables;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 20000;
  int burn_in = MeasureSampler::kDefaultBurnIn;
  int precision = 53;
  std::string out;
  Normalization norm = Normalization::DPow;
  bool distinct = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTheory = 3;
inline constexpr int kExitNumeric = 4;

int exit_code_for(ErrorCode code);

/// Throws InvalidArgument when a field is outside its documented range.
void validate(const ExperimentConfig& cfg);

Json to_json(const ExperimentConfig& cfg);

/// Runs one subcommand. Results go to cfg.out when set, else to `out`;
/// failures print an error JSON document to `err`.
int run_command(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fekete_dyn
