#pragma once

#include "fracsim/laplace.hpp"

namespace fracsim {

/// Total energy of a state: bulk elastic term (mu/2)∫|∇u|² plus surface
/// term k·H¹(K). The defaults make the bulk term exactly ∫|∇u|².
struct EnergyModel {
  double mu = 2.0;
  double k = 1.0;
};

struct EnergyBreakdown {
  double bulk = 0.0;
  double surface = 0.0;
  double total = 0.0;
};

EnergyBreakdown total_energy(const EnergyModel& model, const ScalarField& u,
                             const CrackSet& crack);

/// Directional derivative of the bulk energy along a boundary-data
/// direction: mu·∫∇u·∇(Π_h G) where gdir is the interpolated direction.
double energy_differential(const EnergyModel& model, const ScalarField& u,
                           const ScalarField& gdir);

}  // namespace fracsim
