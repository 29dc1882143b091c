#include "wick/verification.hpp"

#include "wick/errors.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace wick {

void Registry::add(Scenario s) {
  if (s.name.empty()) throw std::invalid_argument("scenario name must not be empty");
  if (index_.count(s.name)) throw std::invalid_argument("duplicate scenario name: " + s.name);
  if (!s.run) throw std::invalid_argument("scenario " + s.name + " has no body");
  index_.emplace(s.name, scenarios_.size());
  scenarios_.push_back(std::move(s));
}

const Scenario& Registry::find(const std::string& name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) throw UsageError("unknown scenario: " + name);
  return scenarios_[it->second];
}

std::vector<std::string> Registry::names() const {
  std::vector<std::string> out;
  for (const auto& s : scenarios_) out.push_back(s.name);
  return out;
}

VerificationReport Registry::run(const std::string& name, const Overrides& overrides) const {
  const Scenario& s = find(name);
  const auto start = std::chrono::steady_clock::now();
  ScenarioOutcome o = s.run(overrides);
  const auto stop = std::chrono::steady_clock::now();
  if (!(o.tolerance > 0)) throw std::logic_error("scenario " + name + " reported a non-positive tolerance");
  VerificationReport r;
  r.scenario = s.name;
  r.measured_error = o.measured_error;
  r.tolerance = o.tolerance;
  r.passed = std::isfinite(o.measured_error) && o.measured_error <= o.tolerance;
  r.runtime_seconds = std::chrono::duration<double>(stop - start).count();
  r.artifacts = std::move(o.artifacts);
  r.details = std::move(o.details);
  r.notes = std::move(o.notes);
  return r;
}

std::vector<VerificationReport> Registry::run_all(const Overrides& overrides) const {
  std::vector<VerificationReport> out;
  for (const auto& s : scenarios_) out.push_back(run(s.name, overrides));
  return out;
}

VerificationReport run_scenario(const std::string& name, const Overrides& overrides) {
  return default_registry().run(name, overrides);
}

std::vector<VerificationReport> run_all(const Overrides& overrides) { return default_registry().run_all(overrides); }

Json to_json(const VerificationReport& r) {
  return {{"scenario", r.scenario},
          {"measured_error", r.measured_error},
          {"tolerance", r.tolerance},
          {"passed", r.passed},
          {"runtime_seconds", r.runtime_seconds},
          {"artifacts", r.artifacts},
          {"details", r.details},
          {"notes", r.notes}};
}

Json describe(const Scenario& s) {
  Json j{{"name", s.name},
         {"description", s.description},
         {"references", s.references},
         {"tolerance", s.tolerance_spec}};
  j["seed"] = s.seed ? Json(*s.seed) : Json(nullptr);
  return j;
}

double fitted_order(const std::vector<double>& steps, const std::vector<double>& errors) {
  if (steps.size() != errors.size() || steps.size() < 2) {
    throw std::invalid_argument("fitted_order needs at least two matching (step, error) pairs");
  }
  const double n = static_cast<double>(steps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double x = std::log(steps[i]);
    const double y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace wick
