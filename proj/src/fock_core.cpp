#include "pbfock/fock_core.hpp"

#include <cmath>
#include <sstream>

namespace pbfock {

std::string to_string(Family f) {
  switch (f) {
    case Family::harmonic: return "harmonic";
    case Family::example3: return "example3";
    case Family::example3b: return "example3b";
    case Family::example4: return "example4";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& name) {
  if (name == "harmonic") return Family::harmonic;
  if (name == "example3") return Family::example3;
  if (name == "example3b") return Family::example3b;
  if (name == "example4") return Family::example4;
  if (name == "custom") return Family::custom;
  throw ConfigError("unknown family '" + name + "'");
}

DeformationParams DeformationParams::harmonic() { return {}; }

DeformationParams DeformationParams::example3(double s) {
  DeformationParams p{1.0, s, s, 1.0 + s * s, Family::example3, s, 0.0};
  return p;
}

DeformationParams DeformationParams::example3b(double s) {
  DeformationParams p{1.0, s, -s, 1.0 - s * s, Family::example3b, s, 0.0};
  return p;
}

DeformationParams DeformationParams::example4(double alpha, double mu) {
  if (alpha == 0.0 || mu == 0.0) throw ConfigError("example4 requires alpha != 0 and mu != 0");
  DeformationParams p{alpha, alpha / mu, mu * (alpha * alpha - 1.0) / alpha, alpha, Family::example4, 0.0, mu};
  return p;
}

DeformationParams DeformationParams::custom(double alpha, double beta, double gamma, double delta) {
  return {alpha, beta, gamma, delta, Family::custom, 0.0, 0.0};
}

DeformationParams DeformationParams::dual() const {
  return custom(delta, gamma, beta, alpha);
}

std::string DeformationParams::label() const {
  std::ostringstream os;
  os.precision(17);
  switch (family) {
    case Family::harmonic: os << "harmonic"; break;
    case Family::example3: os << "example3(s=" << s << ")"; break;
    case Family::example3b: os << "example3b(s=" << s << ")"; break;
    case Family::example4: os << "example4(alpha=" << alpha << ",mu=" << mu << ")"; break;
    case Family::custom:
      os << "custom(" << alpha << "," << beta << "," << gamma << "," << delta << ")";
      break;
  }
  return os.str();
}

void validate(const DeformationParams& p) {
  for (double v : {p.alpha, p.beta, p.gamma, p.delta})
    if (!std::isfinite(v)) throw ConfigError("deformation coefficients must be finite");
  if (p.alpha == 0.0 || p.delta == 0.0) throw ConfigError("alpha and delta must be nonzero");
  if (p.symplectic_defect() > 1e-12) {
    std::ostringstream os;
    os << "not a canonical pair: |alpha delta - beta gamma - 1| = " << p.symplectic_defect();
    throw NotCanonical(os.str());
  }
}

}  // namespace pbfock
