#pragma once

// JSON system-description documents. Every document carries a "type" tag:
//   {"type": "hamiltonian", "mu_h": 1, "hbar": 1, "potential": {"polynomial": [0, 0, 0.5]}}
//   {"type": "generator", "mu": 1, "form": "potential", "W": {"polynomial": [...]}}
//   {"type": "generator", "mu": 0.5, "form": "drift", "Vprime": {...}, "m_gamma": 1}
//   {"type": "quantum", "kind": "free" | "harmonic", "mass": 1, "hbar": 1, "omega": 1}
//   {"type": "euclidean", "kind": "brown" | "drift_brown" | "harmonic_euclid" | "ou", ...}
// A hamiltonian document may also carry "wick": {"mode": "swr" | "gwr_macro" |
// "gwr_strong_damping", "D": ..., "m_gamma": ...}.

#include "wick/wick_maps.hpp"

#include <json.hpp>

#include <istream>
#include <optional>
#include <string>
#include <variant>

namespace wick {

using Json = nlohmann::json;

using SystemDocument = std::variant<HamiltonianSpec, GeneratorSpec, QuantumKernelSpec, EuclideanKernelSpec>;

Json to_json(const Potential& p);
Json to_json(const HamiltonianSpec& h);
Json to_json(const GeneratorSpec& g);
Json to_json(const QuantumKernelSpec& q);
Json to_json(const EuclideanKernelSpec& e);
Json to_json(const WickMode& m);
Json to_json(const SystemDocument& doc);

Potential parse_potential(const Json& j);
WickMode parse_wick_mode(const Json& j);
SystemDocument parse_system(const Json& j);
SystemDocument load_system(std::istream& is);

/// Wick mode attached to a hamiltonian document, if any.
std::optional<WickMode> attached_wick_mode(const Json& j);

}  // namespace wick
