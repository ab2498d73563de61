#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "limitfrac/estimator.hpp"
#include "limitfrac/fespace.hpp"
#include "limitfrac/mesh.hpp"
#include "limitfrac/sim.hpp"

namespace limitfrac {

/// Legacy ASCII VTK unstructured grid with point data u, v and cell data eta, eta_u, eta_v.
/// Empty indicator arrays are written as zeros. Throws std::runtime_error if `path`
/// cannot be written.
void write_vtk(const Mesh& mesh, const ScalarField& u, const ScalarField& v,
               const IndicatorSet& indicators, const std::string& path);
void write_vtk(const Mesh& mesh, const ScalarField& u, const ScalarField& v,
               const IndicatorSet& indicators, std::ostream& out);

void write_energy_csv(const std::vector<EnergyRow>& log, const std::string& path);
void write_energy_csv(const std::vector<EnergyRow>& log, std::ostream& out);

/// Shortest round-trip decimal form (17 significant digits).
std::string format_real(double x);

}  // namespace limitfrac
