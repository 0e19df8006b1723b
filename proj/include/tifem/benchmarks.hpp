#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tifem/assembly.hpp"
#include "tifem/element.hpp"
#include "tifem/material.hpp"

namespace tifem {

/// Fibre angles 0, pi/8, pi/6, pi/4, pi/3, 3pi/8, pi/2, 5pi/8, 3pi/4, 7pi/8, pi.
std::vector<double> default_angles();

/// The five displacement formulations compared in the locking studies.
std::vector<FormulationVariant> default_variants();

/// Tapered panel clamped on the left, sheared on the right by a uniform
/// vertical traction of resultant f.
struct CookConfig {
  double E_t = 250.0;
  double f = 100.0;
  double nu_t = 0.49995;
  double nu_l = 0.49995;
  double q = 1.0;
  std::vector<double> p_list{1.0001, 3.0, 1e4};
  std::vector<double> angles = default_angles();
  std::vector<int> refinements{16};
  std::vector<FormulationVariant> variants = default_variants();
};

/// Beam [0, L] x [-H/2, H/2] under a linearly varying end load with peak f.
/// Refinement nx uses ny = max(1, nx / 5) cells through the height.
struct BeamConfig {
  double L = 10.0;
  double H = 2.0;
  double f = 3000.0;
  double E_t = 1500.0;
  double nu_t = 0.49995;
  double nu_l = 0.49995;
  double q = 1.0;
  std::vector<double> p_list{1.0001, 3.0, 1e4};
  std::vector<double> angles = default_angles();
  std::vector<int> refinements{5, 10, 20, 40};
  std::vector<FormulationVariant> variants = default_variants();

  EngineeringConstants constants(double p) const { return {E_t, p, q, nu_t, nu_l}; }
};

struct ReportRow {
  FormulationVariant variant = FormulationVariant::Q1_CG;
  double p = 0.0;
  double q = 0.0;
  double nu_t = 0.0;
  double nu_l = 0.0;
  double angle = 0.0;
  int refine = 0;
  double h = 0.0;
  int dofs = 0;
  double tip_u = 0.0;
  double tip_v = 0.0;
  std::optional<double> h1_error;  // relative to the exact field's H1 norm
  std::optional<double> l2_error;  // relative to the exact field's L2 norm
  std::optional<double> rate;      // observed H1 rate against the previous row
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// Rows sorted by (variant, p, angle, refinement); refinement ascending means
/// h descending, so each rate compares a row with the next coarser one.
struct ErrorReport {
  std::vector<ReportRow> rows;

  bool all_ok() const;
};

/// log(e1 / e2) / log(h1 / h2); nullopt unless all inputs are finite and
/// positive and h1 != h2.
std::optional<double> observed_rate(double e1, double h1, double e2, double h2);

/// Sorts rows canonically and fills the rate column.
void finalize_report(ErrorReport& report);

ErrorReport run_cook(const CookConfig& cfg);

/// Closed-form beam field: stress sigma_11 = -(2f/H) y, all other in-plane
/// stresses zero, strains from the plane-strain compliance.
ExactField beam_exact(const BeamConfig& cfg, const MaterialParameters& mp, const FibreFrame& frame,
                      const Eigen::Vector2d& point);
ExactSolution beam_exact_solution(const BeamConfig& cfg, const MaterialParameters& mp,
                                  const FibreFrame& frame);
/// Uses the engineering-constant compliance; preferred for badly conditioned
/// materials.
ExactSolution beam_exact_solution(const BeamConfig& cfg, const EngineeringConstants& ec,
                                  const FibreFrame& frame);

/// Dirichlet data and traction of the beam problem: horizontal component
/// g(y) on the left edge, vertical component pinned at corner A, traction
/// (-(2f/H) y, 0) on the right edge.
std::vector<DirichletCondition> beam_dirichlet(const BeamConfig& cfg, const MaterialParameters& mp,
                                               const FibreFrame& frame);
std::vector<DirichletCondition> beam_dirichlet(const BeamConfig& cfg, const EngineeringConstants& ec,
                                               const FibreFrame& frame);
std::vector<TractionLoad> beam_tractions(const BeamConfig& cfg);

/// Solves one beam configuration; shared by run_beam and the tests.
struct BeamRun {
  LinearSystem system;
  FieldSolution solution;
  ErrorNorms errors;
};
BeamRun solve_beam(const BeamConfig& cfg, double p, double angle, int nx, FormulationVariant variant);

ErrorReport run_beam(const BeamConfig& cfg);

struct LockingRow {
  FormulationVariant variant = FormulationVariant::Q1_CG;
  double p = 0.0;
  double angle = 0.0;
  int refine = 0;
  double ratio = 0.0;  // tip_v(variant) / tip_v(reference)
  bool locked = false;
};

/// Compares every successful row against the reference variant at the same
/// (p, angle, refinement). Throws MissingReference when that row is absent
/// or failed.
std::vector<LockingRow> locking_diagnostic(const ErrorReport& report, FormulationVariant reference,
                                           double threshold = 0.9);

inline constexpr const char* kReportHeader =
    "variant,p,q,nu_t,nu_l,angle_rad,refine,h,dofs,tip_u,tip_v,h1_error,l2_error,rate,status";

/// CSV with kReportHeader, LF line endings, 17 significant digits.
void write_report_csv(std::ostream& out, const ErrorReport& report);

}  // namespace tifem
