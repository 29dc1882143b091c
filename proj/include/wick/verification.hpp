#pragma once

// Named acceptance scenarios. Each scenario is a registered descriptor that
// runs deterministically (fixed seeds) and returns a machine-readable report.

#include "wick/lattice.hpp"
#include "wick/spec_io.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wick {

inline constexpr std::uint64_t kPublishedSeed = 1729;

struct Overrides {
  std::optional<std::uint64_t> seed;
  /// Replaces the generator-derived short-time kernel in lattice scenarios.
  std::optional<ShortTimeKernel> short_time_kernel;
  /// When set, scenarios write CSV/JSON artifacts here.
  std::optional<std::filesystem::path> artifact_dir;
};

struct ScenarioOutcome {
  double measured_error = 0.0;
  double tolerance = 0.0;
  Json details = Json::object();
  std::vector<std::string> notes;
  std::vector<std::string> artifacts;
};

struct Scenario {
  std::string name;
  std::string description;
  std::vector<std::string> references;  ///< anchors of the identities exercised
  std::string tolerance_spec;
  std::optional<std::uint64_t> seed;
  std::function<ScenarioOutcome(const Overrides&)> run;
};

struct VerificationReport {
  std::string scenario;
  double measured_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double runtime_seconds = 0.0;
  std::vector<std::string> artifacts;
  Json details = Json::object();
  std::vector<std::string> notes;
};

class Registry {
 public:
  /// Throws std::invalid_argument on an empty or duplicate name.
  void add(Scenario s);
  /// UsageError for an unknown name.
  const Scenario& find(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  std::vector<std::string> names() const;
  std::size_t size() const { return scenarios_.size(); }

  VerificationReport run(const std::string& name, const Overrides& overrides = {}) const;
  /// Registration order.
  std::vector<VerificationReport> run_all(const Overrides& overrides = {}) const;

 private:
  std::vector<Scenario> scenarios_;
  std::map<std::string, std::size_t> index_;
};

/// Every built-in scenario.
const Registry& default_registry();

VerificationReport run_scenario(const std::string& name, const Overrides& overrides = {});
std::vector<VerificationReport> run_all(const Overrides& overrides = {});

Json to_json(const VerificationReport& r);
Json describe(const Scenario& s);

/// Least-squares slope of log(error) against log(step).
double fitted_order(const std::vector<double>& steps, const std::vector<double>& errors);

}  // namespace wick
