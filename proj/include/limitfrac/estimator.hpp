#pragma once

#include <cstdint>
#include <vector>

#include "limitfrac/fespace.hpp"
#include "limitfrac/mesh.hpp"
#include "limitfrac/model.hpp"

namespace limitfrac {

struct IndicatorSet {
  std::uint64_t mesh_id = 0;
  std::vector<double> eta_u;  // displacement indicator per element
  std::vector<double> eta_v;  // phase-field indicator per element
  std::vector<double> eta;    // sqrt(eta_u^2 + eta_v^2)
  double global = 0.0;        // sqrt(sum eta^2)
};

/// Normal-flux jump of a P1 field across edge `e`: (grad on tri[1] - grad on tri[0]) . n
/// with n pointing from tri[0] to tri[1]. On boundary edges, the outward normal flux.
double jump(const ScalarField& field, const Mesh& mesh, int e);

/// The three squared contributions of one indicator on every element.
struct IndicatorTerms {
  std::vector<double> term1;
  std::vector<double> term2;
  std::vector<double> term3;
};

IndicatorTerms indicator_u_terms(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                 const ModelParams& p);
IndicatorTerms indicator_v_terms(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                 const ModelParams& p);

std::vector<double> indicator_u(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                const ModelParams& p);
std::vector<double> indicator_v(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                const ModelParams& p);

IndicatorSet assemble_indicators(const ScalarField& u, const ScalarField& v, const Mesh& mesh,
                                 const ModelParams& p);

}  // namespace limitfrac
