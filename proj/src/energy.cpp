#include "fracsim/energy.hpp"

namespace fracsim {

EnergyBreakdown total_energy(const EnergyModel& model, const ScalarField& u,
                             const CrackSet& crack) {
  EnergyBreakdown e;
  e.bulk = 0.5 * model.mu * dirichlet_energy(u);
  e.surface = model.k * crack_length(crack);
  e.total = e.bulk + e.surface;
  return e;
}

double energy_differential(const EnergyModel& model, const ScalarField& u,
                           const ScalarField& gdir) {
  return model.mu * grad_inner(u, gdir);
}

}  // namespace fracsim
