#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hurwitz::app {

/// Effective settings of one command run.
struct JobConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::uint32_t prime = 31;
  std::optional<std::string> alpha;
  unsigned precision_bits = 128;
  std::uint64_t seed = 1;
  /// Candidate cap for Nielsen enumeration, orbit cap for braid orbits.
  std::uint64_t budget_elements = 200'000'000;
  /// Newton iteration cap for cover refinement.
  std::uint64_t budget_iterations = 40;
  unsigned threads = 1;
  std::optional<std::filesystem::path> out;

  // Command-specific options.
  std::vector<std::string> words;        ///< extra braid words
  std::vector<std::string> pins;         ///< cover normalisation pins
  std::vector<std::string> targets;      ///< deform targets, "re" or "re,im"
  std::optional<std::string> target_alpha;
  std::optional<std::filesystem::path> cover_out;
  std::optional<std::pair<unsigned, unsigned>> degrees;
  std::optional<std::string> value;      ///< recognize a number, "re" or "re,im"
  unsigned max_degree = 4;
  std::string height = "1000000";

  /// Throws InvalidArgument naming the first out-of-range field.
  void validate() const;
  /// `key=value` lines, threads excluded (see Report::render).
  std::vector<std::string> echo() const;
};

struct Report {
  std::vector<std::string> lines;
  std::vector<std::pair<std::string, std::string>> trailer;
  /// Names of failed checks.
  std::vector<std::string> failures;

  void line(std::string text) { lines.push_back(std::move(text)); }
  void key(std::string k, std::string v) { trailer.emplace_back(std::move(k), std::move(v)); }
  /// Records a check in the prose and the trailer.
  void check(const std::string &name, bool pass, const std::string &detail = {});
  bool passed() const { return failures.empty(); }

  /// Config echo, body, then the KEY=VALUE trailer. The thread count sits
  /// on its own `run` line, the only line allowed to differ between runs.
  std::string render(const JobConfig &config) const;
};

Report nielsen_enum(const JobConfig &config);
Report braid_orbit(const JobConfig &config);
Report verify_family(const JobConfig &config);
Report cover_from_family(const JobConfig &config);
Report monodromy(const JobConfig &config);
Report deform(const JobConfig &config);
Report recognize(const JobConfig &config);

/// Dispatch on config.command ("nielsen enum", "braid orbit", ...).
Report run(const JobConfig &config);

} // namespace hurwitz::app
