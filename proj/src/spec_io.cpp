#include "wick/spec_io.hpp"

#include <stdexcept>

namespace wick {

namespace {

double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw std::invalid_argument(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::string tag(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw std::invalid_argument(std::string("missing string field '") + key + "'");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

Json to_json(const Potential& p) {
  if (!p.is_polynomial()) throw std::invalid_argument("only polynomial potentials serialize to JSON");
  return Json{{"polynomial", p.coefficients()}};
}

Json to_json(const HamiltonianSpec& h) {
  return Json{{"type", "hamiltonian"}, {"mu_h", h.mu_h}, {"hbar", h.hbar}, {"potential", to_json(h.V_h)}};
}

Json to_json(const GeneratorSpec& g) {
  Json j{{"type", "generator"}, {"mu", g.mu}};
  if (const auto* p = std::get_if<PotentialLike>(&g.form)) {
    j["form"] = "potential";
    j["W"] = to_json(p->W);
  } else {
    const auto& d = std::get<DriftForm>(g.form);
    j["form"] = "drift";
    j["Vprime"] = to_json(d.Vprime);
    j["m_gamma"] = d.m_gamma;
  }
  return j;
}

Json to_json(const QuantumKernelSpec& q) {
  return std::visit(
      [](const auto& s) -> Json {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, FreeParticle>) {
          return {{"type", "quantum"}, {"kind", "free"}, {"mass", s.mass}, {"hbar", s.hbar}};
        } else {
          return {{"type", "quantum"}, {"kind", "harmonic"}, {"mass", s.mass}, {"hbar", s.hbar}, {"omega", s.omega}};
        }
      },
      q);
}

Json to_json(const EuclideanKernelSpec& e) {
  return std::visit(
      [](const auto& s) -> Json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Brown>) {
          return {{"type", "euclidean"}, {"kind", "brown"}, {"D", s.D}};
        } else if constexpr (std::is_same_v<S, DriftBrown>) {
          return {{"type", "euclidean"}, {"kind", "drift_brown"}, {"D", s.D}, {"v", s.v}};
        } else if constexpr (std::is_same_v<S, HarmonicEuclid>) {
          return {{"type", "euclidean"}, {"kind", "harmonic_euclid"}, {"mu", s.mu}, {"omega", s.omega}};
        } else {
          return {{"type", "euclidean"}, {"kind", "ou"}, {"D", s.D}, {"eta", s.eta}};
        }
      },
      e);
}

Json to_json(const WickMode& m) {
  return std::visit(
      [](const auto& s) -> Json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, SwrMicro>) {
          return {{"mode", "swr"}};
        } else if constexpr (std::is_same_v<S, GwrMacro>) {
          return {{"mode", "gwr_macro"}, {"D", s.D}};
        } else {
          return {{"mode", "gwr_strong_damping"}, {"D", s.D}, {"m_gamma", s.m_gamma}};
        }
      },
      m);
}

Json to_json(const SystemDocument& doc) {
  return std::visit([](const auto& s) { return to_json(s); }, doc);
}

Potential parse_potential(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "zero") return Potential::zero();
  if (!j.is_object() || !j.contains("polynomial") || !j.at("polynomial").is_array()) {
    throw std::invalid_argument("potential must be {\"polynomial\": [c0, c1, ...]} or \"zero\"");
  }
  return Potential::polynomial(j.at("polynomial").get<std::vector<double>>());
}

WickMode parse_wick_mode(const Json& j) {
  const std::string mode = tag(j, "mode");
  if (mode == "swr") return SwrMicro{};
  if (mode == "gwr_macro") return GwrMacro{number(j, "D")};
  if (mode == "gwr_strong_damping") return GwrStrongDamping{number(j, "D"), number(j, "m_gamma")};
  throw std::invalid_argument("unknown wick mode '" + mode + "'");
}

std::optional<WickMode> attached_wick_mode(const Json& j) {
  if (!j.contains("wick")) return std::nullopt;
  return parse_wick_mode(j.at("wick"));
}

SystemDocument parse_system(const Json& j) {
  const std::string type = tag(j, "type");
  if (type == "hamiltonian") {
    HamiltonianSpec h;
    h.hbar = number_or(j, "hbar", 1.0);
    h.mu_h = j.contains("mu_h") ? number(j, "mu_h") : number(j, "mass") / h.hbar;
    h.V_h = j.contains("potential") ? parse_potential(j.at("potential")) : Potential::zero();
    h.validate();
    return h;
  }
  if (type == "generator") {
    GeneratorSpec g;
    g.mu = j.contains("mu") ? number(j, "mu") : 0.5 / number(j, "D");
    const std::string form = tag(j, "form");
    if (form == "potential") {
      g.form = PotentialLike{j.contains("W") ? parse_potential(j.at("W")) : Potential::zero()};
    } else if (form == "drift") {
      if (!j.contains("Vprime")) throw std::invalid_argument("drift-form generator needs 'Vprime'");
      g.form = DriftForm{parse_potential(j.at("Vprime")), number(j, "m_gamma")};
    } else {
      throw std::invalid_argument("unknown generator form '" + form + "'");
    }
    g.validate();
    return g;
  }
  if (type == "quantum") {
    const std::string kind = tag(j, "kind");
    QuantumKernelSpec q;
    if (kind == "free") {
      q = FreeParticle{number_or(j, "mass", 1.0), number_or(j, "hbar", 1.0)};
    } else if (kind == "harmonic") {
      q = HarmonicOscillator{number_or(j, "mass", 1.0), number_or(j, "hbar", 1.0), number(j, "omega")};
    } else {
      throw std::invalid_argument("unknown quantum kind '" + kind + "'");
    }
    validate(q);
    return q;
  }
  if (type == "euclidean") {
    const std::string kind = tag(j, "kind");
    EuclideanKernelSpec e;
    if (kind == "brown") {
      e = Brown{number(j, "D")};
    } else if (kind == "drift_brown") {
      e = DriftBrown{number(j, "D"), number(j, "v")};
    } else if (kind == "harmonic_euclid") {
      e = HarmonicEuclid{number(j, "mu"), number(j, "omega")};
    } else if (kind == "ou") {
      e = OrnsteinUhlenbeck{number(j, "D"), number(j, "eta")};
    } else {
      throw std::invalid_argument("unknown euclidean kind '" + kind + "'");
    }
    validate(e);
    return e;
  }
  throw std::invalid_argument("unknown system type '" + type + "'");
}

SystemDocument load_system(std::istream& is) {
  Json j;
  try {
    is >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("spec is not valid JSON: ") + e.what());
  }
  return parse_system(j);
}

}  // namespace wick
