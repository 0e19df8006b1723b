#include "tifem/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <tuple>

#include <fmt/format.h>

#include "tifem/errors.hpp"

namespace tifem {

std::vector<double> default_angles() {
  constexpr double pi = std::numbers::pi;
  return {0.0,        pi / 8.0,       pi / 6.0,       pi / 4.0, pi / 3.0, 3.0 * pi / 8.0,
          pi / 2.0,   5.0 * pi / 8.0, 3.0 * pi / 4.0, 7.0 * pi / 8.0, pi};
}

std::vector<FormulationVariant> default_variants() {
  return {FormulationVariant::Q1_CG, FormulationVariant::Q2_CG, FormulationVariant::Q1_CG_UI_lambda,
          FormulationVariant::Q1_CG_UI_beta, FormulationVariant::Q1_CG_UI_betalambda};
}

bool ErrorReport::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.ok(); });
}

std::optional<double> observed_rate(double e1, double h1, double e2, double h2) {
  const bool valid = std::isfinite(e1) && std::isfinite(e2) && std::isfinite(h1) &&
                     std::isfinite(h2) && e1 > 0.0 && e2 > 0.0 && h1 > 0.0 && h2 > 0.0 && h1 != h2;
  if (!valid) return std::nullopt;
  return std::log(e1 / e2) / std::log(h1 / h2);
}

namespace {

auto row_key(const ReportRow& r) {
  return std::make_tuple(static_cast<int>(r.variant), r.p, r.q, r.nu_t, r.nu_l, r.angle, r.refine);
}

bool same_series(const ReportRow& a, const ReportRow& b) {
  return a.variant == b.variant && a.p == b.p && a.q == b.q && a.nu_t == b.nu_t &&
         a.nu_l == b.nu_l && a.angle == b.angle;
}

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

// Runs `body` and converts library failures into an error-marked status.
template <typename Fn>
void guarded(ReportRow& row, Fn&& body) {
  try {
    body();
  } catch (const DegenerateDenominator& e) {
    row.status = "error:degenerate_material";
  } catch (const SingularStiffness& e) {
    row.status = "error:singular_stiffness";
  } catch (const SingularSystem& e) {
    row.status = "error:singular_system";
  } catch (const NonPositiveJacobian& e) {
    row.status = "error:nonpositive_jacobian";
  } catch (const std::exception& e) {
    row.status = "error:" + sanitize(e.what());
  }
}

std::string inadmissible_status(const StabilityVerdict& v) {
  std::string s = "error:inadmissible";
  for (StabilityCondition c : v.violated) s += ":" + std::string(to_string(c));
  return s;
}

}  // namespace

void finalize_report(ErrorReport& report) {
  auto& rows = report.rows;
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) { return row_key(a) < row_key(b); });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].rate.reset();
    if (i == 0 || !same_series(rows[i - 1], rows[i])) continue;
    const ReportRow& prev = rows[i - 1];
    if (!prev.ok() || !rows[i].ok() || !prev.h1_error || !rows[i].h1_error) continue;
    rows[i].rate = observed_rate(*prev.h1_error, prev.h, *rows[i].h1_error, rows[i].h);
  }
}

ErrorReport run_cook(const CookConfig& cfg) {
  ErrorReport report;
  std::map<std::pair<int, int>, std::shared_ptr<const QuadMesh>> meshes;
  auto mesh_for = [&](int n, int order) {
    auto& m = meshes[{n, order}];
    if (!m) m = std::make_shared<const QuadMesh>(cook_mesh(n, order));
    return m;
  };

  for (FormulationVariant variant : cfg.variants) {
    for (double p : cfg.p_list) {
      for (double angle : cfg.angles) {
        for (int n : cfg.refinements) {
          ReportRow row;
          row.variant = variant;
          row.p = p;
          row.q = cfg.q;
          row.nu_t = cfg.nu_t;
          row.nu_l = cfg.nu_l;
          row.angle = angle;
          row.refine = n;
          const EngineeringConstants ec{cfg.E_t, p, cfg.q, cfg.nu_t, cfg.nu_l};
          const StabilityVerdict verdict = check_stability(ec);
          if (!verdict.admissible) {
            row.status = inadmissible_status(verdict);
            report.rows.push_back(row);
            continue;
          }
          guarded(row, [&] {
            const auto mesh = mesh_for(n, element_order(variant));
            row.h = mesh->h;
            row.dofs = mesh->num_dofs();
            const FibreFrame frame = FibreFrame::from_angle(angle);
            const MaterialParameters mp = derive_parameters(ec);
            double edge_length = 0.0;
            for (const auto& edge : mesh->boundary_edges.at("right")) {
              const auto ids = mesh->edge_nodes(edge);
              edge_length += (mesh->nodes[ids[1]] - mesh->nodes[ids[0]]).norm();
            }
            const double shear = cfg.f / edge_length;
            LinearSystem sys = assemble(mesh, mp, frame, variant, nullptr,
                                        {{"right", [shear](const Eigen::Vector2d&) {
                                            return Eigen::Vector2d(0.0, shear);
                                          }}});
            sys = apply_dirichlet(std::move(sys), {{"left", true, true, nullptr}});
            const FieldSolution sol = solve(sys);
            const Eigen::Vector2d tip = sol.at_node(mesh->tagged_node("tip"));
            row.tip_u = tip.x();
            row.tip_v = tip.y();
          });
          report.rows.push_back(row);
        }
      }
    }
  }
  finalize_report(report);
  return report;
}

namespace {

ExactSolution beam_field(const BeamConfig& cfg, const Eigen::Matrix3d& S) {
  const double s11 = S(0, 0);
  const double s21 = S(1, 0);
  const double s31 = S(2, 0);
  const double f = cfg.f;
  const double H = cfg.H;
  return [=](const Eigen::Vector2d& x) {
    const double X = x.x();
    const double Y = x.y();
    const double c = Y * Y - H * H / 4.0;
    ExactField out;
    out.u.x() = -(2.0 * f / H) * (s11 * X * Y + 0.5 * s31 * c);
    out.u.y() = -(f / H) * (s21 * c - s11 * X * X);
    out.grad(0, 0) = -(2.0 * f / H) * s11 * Y;
    out.grad(0, 1) = -(2.0 * f / H) * (s11 * X + s31 * Y);
    out.grad(1, 0) = (2.0 * f / H) * s11 * X;
    out.grad(1, 1) = -(2.0 * f / H) * s21 * Y;
    return out;
  };
}

std::vector<DirichletCondition> beam_conditions(const ExactSolution& exact) {
  return {
      {"left", true, false,
       [exact](const Eigen::Vector2d& x) {
         // g(y) = u(0, y); the vertical component is not prescribed here.
         return Eigen::Vector2d(exact(Eigen::Vector2d(0.0, x.y())).u.x(), 0.0);
       }},
      {"A", false, true, nullptr},
  };
}

}  // namespace

ExactSolution beam_exact_solution(const BeamConfig& cfg, const MaterialParameters& mp,
                                  const FibreFrame& frame) {
  return beam_field(cfg, plane_strain_compliance(mp, frame));
}

ExactSolution beam_exact_solution(const BeamConfig& cfg, const EngineeringConstants& ec,
                                  const FibreFrame& frame) {
  return beam_field(cfg, plane_strain_compliance(ec, frame));
}

ExactField beam_exact(const BeamConfig& cfg, const MaterialParameters& mp, const FibreFrame& frame,
                      const Eigen::Vector2d& point) {
  return beam_exact_solution(cfg, mp, frame)(point);
}

std::vector<DirichletCondition> beam_dirichlet(const BeamConfig& cfg, const MaterialParameters& mp,
                                               const FibreFrame& frame) {
  return beam_conditions(beam_exact_solution(cfg, mp, frame));
}

std::vector<DirichletCondition> beam_dirichlet(const BeamConfig& cfg, const EngineeringConstants& ec,
                                               const FibreFrame& frame) {
  return beam_conditions(beam_exact_solution(cfg, ec, frame));
}

std::vector<TractionLoad> beam_tractions(const BeamConfig& cfg) {
  const double slope = -2.0 * cfg.f / cfg.H;
  return {{"right", [slope](const Eigen::Vector2d& x) { return Eigen::Vector2d(slope * x.y(), 0.0); }}};
}

BeamRun solve_beam(const BeamConfig& cfg, double p, double angle, int nx, FormulationVariant variant) {
  const int ny = std::max(1, nx / 5);
  auto mesh = std::make_shared<const QuadMesh>(rectangle_mesh(cfg.L, cfg.H, nx, ny, element_order(variant)));
  const FibreFrame frame = FibreFrame::from_angle(angle);
  const EngineeringConstants ec = cfg.constants(p);
  const MaterialParameters mp = derive_parameters(ec);
  const ExactSolution exact = beam_exact_solution(cfg, ec, frame);
  LinearSystem sys = assemble(mesh, mp, frame, variant, nullptr, beam_tractions(cfg));
  sys = apply_dirichlet(std::move(sys), beam_conditions(exact));
  FieldSolution sol = solve(sys);
  const ErrorNorms errors = h1_error(sol, exact);
  return {std::move(sys), std::move(sol), errors};
}

ErrorReport run_beam(const BeamConfig& cfg) {
  ErrorReport report;
  for (FormulationVariant variant : cfg.variants) {
    for (double p : cfg.p_list) {
      for (double angle : cfg.angles) {
        for (int nx : cfg.refinements) {
          ReportRow row;
          row.variant = variant;
          row.p = p;
          row.q = cfg.q;
          row.nu_t = cfg.nu_t;
          row.nu_l = cfg.nu_l;
          row.angle = angle;
          row.refine = nx;
          const StabilityVerdict verdict = check_stability(cfg.constants(p));
          if (!verdict.admissible) {
            row.status = inadmissible_status(verdict);
            report.rows.push_back(row);
            continue;
          }
          guarded(row, [&] {
            const BeamRun run = solve_beam(cfg, p, angle, nx, variant);
            const QuadMesh& mesh = *run.solution.mesh;
            row.h = mesh.h;
            row.dofs = mesh.num_dofs();
            const Eigen::Vector2d tip = run.solution.at_node(mesh.tagged_node("tip"));
            row.tip_u = tip.x();
            row.tip_v = tip.y();
            row.h1_error = run.errors.relative_h1();
            row.l2_error = run.errors.relative_l2();
          });
          report.rows.push_back(row);
        }
      }
    }
  }
  finalize_report(report);
  return report;
}

std::vector<LockingRow> locking_diagnostic(const ErrorReport& report, FormulationVariant reference,
                                           double threshold) {
  std::map<std::tuple<double, double, int>, const ReportRow*> refs;
  for (const ReportRow& r : report.rows)
    if (r.variant == reference) refs[{r.p, r.angle, r.refine}] = &r;

  std::vector<LockingRow> out;
  for (const ReportRow& r : report.rows) {
    if (!r.ok()) continue;
    auto it = refs.find({r.p, r.angle, r.refine});
    if (it == refs.end() || !it->second->ok()) {
      throw MissingReference(fmt::format("no usable {} row at p={}, angle={}, refine={}",
                                         to_string(reference), r.p, r.angle, r.refine));
    }
    LockingRow lr;
    lr.variant = r.variant;
    lr.p = r.p;
    lr.angle = r.angle;
    lr.refine = r.refine;
    lr.ratio = r.tip_v / it->second->tip_v;
    lr.locked = lr.ratio < threshold;
    out.push_back(lr);
  }
  return out;
}

void write_report_csv(std::ostream& out, const ErrorReport& report) {
  auto num = [](double v) { return fmt::format("{:.17g}", v); };
  auto opt = [&](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  out << kReportHeader << '\n';
  for (const ReportRow& r : report.rows) {
    const bool ok = r.ok();
    out << to_string(r.variant) << ',' << num(r.p) << ',' << num(r.q) << ',' << num(r.nu_t) << ','
        << num(r.nu_l) << ',' << num(r.angle) << ',' << r.refine << ','
        << (ok ? num(r.h) : "") << ',' << (ok ? std::to_string(r.dofs) : "") << ','
        << (ok ? num(r.tip_u) : "") << ',' << (ok ? num(r.tip_v) : "") << ','
        << opt(r.h1_error) << ',' << opt(r.l2_error) << ',' << opt(r.rate) << ',' << r.status
        << '\n';
  }
}

}  // namespace tifem
