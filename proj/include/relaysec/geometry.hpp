#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "relaysec/errors.hpp"
#include "relaysec/rng.hpp"

namespace relaysec {

// Static description of one link class: distance, reference loss, path loss
// exponent and shadowing spread. Distances are normalized lengths.
struct LinkGeometry {
  double distance = 1.0;             // d > 0
  double reference_loss = 1.0;       // L > 0, linear power gain
  double path_loss_exponent = 3.0;   // rho, conventionally in [2, 5]
  double shadowing_spread_db = 3.0;  // sigma_s, conventionally in [0, 9] dB

  // Hard errors throw; soft range violations are appended to `warnings`.
  void validate(const std::string& name, std::vector<std::string>* warnings) const {
    if (!(distance > 0.0))
      throw ValidationError(name + ": distance must be > 0");
    if (!(reference_loss > 0.0))
      throw ValidationError(name + ": reference_loss must be > 0");
    if (!(path_loss_exponent > 0.0))
      throw ValidationError(name + ": path_loss_exponent must be > 0");
    if (shadowing_spread_db < 0.0)
      throw ValidationError(name + ": shadowing_spread_db must be >= 0");
    if (warnings) {
      if (path_loss_exponent < 2.0 || path_loss_exponent > 5.0)
        warnings->push_back(name + ": path_loss_exponent outside the usual [2, 5] range");
      if (shadowing_spread_db > 9.0)
        warnings->push_back(name + ": shadowing_spread_db above the usual 9 dB");
    }
  }

  bool operator==(const LinkGeometry& o) const {
    return distance == o.distance && reference_loss == o.reference_loss &&
           path_loss_exponent == o.path_loss_exponent &&
           shadowing_spread_db == o.shadowing_spread_db;
  }
};

// Amplitude path-loss gain alpha = sqrt(L) / sqrt(d^rho).
inline double path_loss_gain(const LinkGeometry& geom) {
  std::vector<std::string> warnings;
  geom.validate("geometry", &warnings);
  return std::sqrt(geom.reference_loss) /
         std::sqrt(std::pow(geom.distance, geom.path_loss_exponent));
}

// Log-normal shadowing gain 10^(sigma_s * g / 10) for a given standard
// Gaussian g. Split out so the deterministic part is testable directly.
inline double shadowing_gain_from_normal(double sigma_s_db, double g) {
  if (sigma_s_db < 0.0)
    throw ValidationError("shadowing spread must be >= 0 dB");
  return std::pow(10.0, sigma_s_db * g / 10.0);
}

inline double shadowing_gain(double sigma_s_db, RandomStream& rng) {
  if (sigma_s_db < 0.0)
    throw ValidationError("shadowing spread must be >= 0 dB");
  return shadowing_gain_from_normal(sigma_s_db, rng.normal());
}

}  // namespace relaysec
