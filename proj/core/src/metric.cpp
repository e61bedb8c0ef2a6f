#include "hsx/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "hsx/errors.hpp"
#include "hsx/evolution.hpp"
#include "hsx/parallel.hpp"

namespace hsx {

GSolution solve_g(const LagrangianState& x, const BanachTriple& v) {
  const GalerkinSystem system(x);
  const auto coeffs = system.solve(system.rhs(v));
  GSolution out;
  out.g = system.reconstruct(coeffs);
  BanachTriple residual = v - system.multiply(out.g);
  residual.h.tail_minus = 0.0;
  out.residual_norm = b_norm(residual);
  return out;
}

double seminorm(const LagrangianState& x, const BanachTriple& v) { return solve_g(x, v).residual_norm; }

Quadrature gauss_legendre(std::size_t q) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "quadrature needs at least one point");
  Quadrature rule{std::vector<double>(q), std::vector<double>(q)};
  const double n = static_cast<double>(q);
  for (std::size_t i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= q; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = q == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    if (q == 1) x = 0.0;
    const double w = q == 1 ? 2.0 : 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[q - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[q - 1 - i] = 0.5 * w;
  }
  return rule;
}

LagrangianState interpolate(const LagrangianState& a, const LagrangianState& b, double s) {
  if (!(a.grid == b.grid)) throw Error(ErrorKind::GridMismatch, "states live on different grids");
  LagrangianState out = a;
  const double r = 1.0 - s;
  for (std::size_t i = 0; i < a.grid.size(); ++i) {
    out.y[i] = r * a.y[i] + s * b.y[i];
    out.U[i] = r * a.U[i] + s * b.U[i];
    out.H[i] = r * a.H[i] + s * b.H[i];
  }
  out.tails.zeta_minus = r * a.tails.zeta_minus + s * b.tails.zeta_minus;
  out.tails.zeta_plus = r * a.tails.zeta_plus + s * b.tails.zeta_plus;
  out.tails.u_minus = r * a.tails.u_minus + s * b.tails.u_minus;
  out.tails.u_plus = r * a.tails.u_plus + s * b.tails.u_plus;
  out.tails.h_inf = r * a.tails.h_inf + s * b.tails.h_inf;
  return out;
}

double segment_length(const LagrangianState& a, const LagrangianState& b, const Quadrature& rule) {
  const BanachTriple tangent = b.to_triple() - a.to_triple();
  double total = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    total += rule.weights[k] * seminorm(interpolate(a, b, rule.nodes[k]), tangent);
  }
  return total;
}

namespace {

void require_g0(const LagrangianState& x, const char* what) {
  const ClassReport r = validate(x);
  if (!r.in_G0) {
    std::ostringstream msg;
    msg << what << " is not in G0 (identity defect " << r.identity_defect << ", g defect " << r.g_defect << ")";
    throw Error(ErrorKind::NotInG0, msg.str());
  }
}

}  // namespace

double path_length(const CurvePath& path) {
  if (path.controls.size() < 2) throw Error(ErrorKind::InvalidArgument, "a path needs at least two controls");
  for (const auto& c : path.controls) require_g0(c, "path control");
  const Quadrature rule = gauss_legendre(path.quadrature);
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.controls.size(); ++k) {
    total += segment_length(path.controls[k], path.controls[k + 1], rule);
  }
  return total;
}

LagrangianState project_g0(const LagrangianState& x) {
  const Grid& grid = x.grid;
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  LagrangianState out = x;
  out.y[0] = grid.node(0);
  out.U[0] = x.U[0];
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dy = std::clamp((x.y[i + 1] - x.y[i]) / h, 0.0, 1.0);
    const double lim = std::sqrt(dy * (1.0 - dy));
    const double du = std::clamp((x.U[i + 1] - x.U[i]) / h, -lim, lim);
    out.y[i + 1] = out.y[i] + h * dy;
    out.U[i + 1] = out.U[i] + h * du;
  }
  for (std::size_t i = 0; i < n; ++i) out.H[i] = grid.node(i) - out.y[i];
  out.tails = Tails{0.0, out.y.back() - grid.xi_max(), out.U.front(), out.U.back(), out.H.back()};
  return out;
}

namespace {

constexpr double kGolden = 0.6180339887498949;

// Straight-segment lengths of a working path, kept in sync with its controls.
struct WorkPath {
  std::vector<LagrangianState> controls;
  std::vector<double> lengths;
  Quadrature rule;

  double total() const {
    double s = 0.0;
    for (double l : lengths) s += l;
    return s;
  }
};

// Moves in the slice y + H = id: y and U change, H follows -y.
LagrangianState displaced(const LagrangianState& base, const std::vector<double>& dy, const std::vector<double>& du,
                          double tau) {
  LagrangianState out = base;
  for (std::size_t i = 0; i < base.grid.size(); ++i) {
    out.y[i] += tau * dy[i];
    out.U[i] += tau * du[i];
  }
  return project_g0(out);
}

void optimize_control(WorkPath& path, std::size_t j) {
  const LagrangianState& prev = path.controls[j - 1];
  const LagrangianState& next = path.controls[j + 1];
  const LagrangianState current = path.controls[j];
  const std::size_t n = current.grid.size();

  const auto objective = [&](const LagrangianState& c) {
    return segment_length(prev, c, path.rule) + segment_length(c, next, path.rule);
  };

  struct Direction {
    std::vector<double> dy, du;
    double lo, hi;
  };
  std::vector<Direction> directions;

  Direction smooth{std::vector<double>(n), std::vector<double>(n), -0.5, 1.5};
  for (std::size_t i = 0; i < n; ++i) {
    smooth.dy[i] = 0.5 * (prev.y[i] + next.y[i]) - current.y[i];
    smooth.du[i] = 0.5 * (prev.U[i] + next.U[i]) - current.U[i];
  }
  directions.push_back(std::move(smooth));

  try {
    const GalerkinSystem system(current);
    const BanachTriple chord = next.to_triple() - prev.to_triple();
    const TailedFunction g = system.reconstruct(system.solve(system.rhs(chord)));
    const auto dx = nodal_derivative(current);
    Direction relabel_dir{std::vector<double>(n), std::vector<double>(n), -1.0, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
      relabel_dir.dy[i] = g.samples[i] * dx[0][i];
      relabel_dir.du[i] = g.samples[i] * dx[1][i];
    }
    constexpr std::size_t kBlocks = 4;
    for (std::size_t b = 0; b < kBlocks; ++b) {
      Direction part{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), -1.0, 1.0};
      const std::size_t lo = b * n / kBlocks;
      const std::size_t hi = (b + 1) * n / kBlocks;
      for (std::size_t i = lo; i < hi; ++i) {
        part.dy[i] = relabel_dir.dy[i];
        part.du[i] = relabel_dir.du[i];
      }
      directions.push_back(std::move(part));
    }
    directions.push_back(std::move(relabel_dir));
  } catch (const Error&) {
    // A degenerate control only gets the smoothing direction.
  }

  double best_value = path.lengths[j - 1] + path.lengths[j];
  LagrangianState best = current;
  for (const Direction& d : directions) {
    const auto eval = [&](double tau) {
      try {
        return objective(displaced(best, d.dy, d.du, tau));
      } catch (const Error&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    double a = d.lo;
    double b = d.hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = eval(x1);
    double f2 = eval(x2);
    for (int it = 0; it < 12; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kGolden * (b - a);
        f1 = eval(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kGolden * (b - a);
        f2 = eval(x2);
      }
    }
    const double tau = f1 < f2 ? x1 : x2;
    const double value = std::min(f1, f2);
    if (value < best_value) {
      best_value = value;
      best = displaced(best, d.dy, d.du, tau);
    }
  }
  path.controls[j] = std::move(best);
  path.lengths[j - 1] = segment_length(prev, path.controls[j], path.rule);
  path.lengths[j] = segment_length(path.controls[j], next, path.rule);
}

}  // namespace

DistanceResult distance_upper(const LagrangianState& x0, const LagrangianState& x1, const DistanceBudget& budget) {
  if (!(x0.grid == x1.grid)) throw Error(ErrorKind::GridMismatch, "states live on different grids");
  require_g0(x0, "first state");
  require_g0(x1, "second state");

  WorkPath work{{x0, x1}, {}, gauss_legendre(budget.quadrature)};
  work.lengths.push_back(segment_length(x0, x1, work.rule));

  DistanceResult result;
  result.straight = work.lengths.front();
  result.d_upper = result.straight;
  result.path = CurvePath{work.controls, budget.quadrature};
  result.stage_values.push_back(result.d_upper);

  for (std::size_t stage = 0; stage < budget.controls; ++stage) {
    const auto longest = std::max_element(work.lengths.begin(), work.lengths.end());
    const auto k = static_cast<std::size_t>(longest - work.lengths.begin());
    LagrangianState mid = project_g0(interpolate(work.controls[k], work.controls[k + 1], 0.5));
    work.controls.insert(work.controls.begin() + static_cast<std::ptrdiff_t>(k + 1), std::move(mid));
    work.lengths[k] = segment_length(work.controls[k], work.controls[k + 1], work.rule);
    work.lengths.insert(work.lengths.begin() + static_cast<std::ptrdiff_t>(k + 1),
                        segment_length(work.controls[k + 1], work.controls[k + 2], work.rule));
    for (std::size_t sweep = 0; sweep < budget.sweeps; ++sweep) {
      for (const std::size_t j : {k + 1, k, k + 2}) {
        if (j >= 1 && j + 1 < work.controls.size()) optimize_control(work, j);
      }
    }
    const double total = work.total();
    if (total < result.d_upper) {
      result.d_upper = total;
      result.path = CurvePath{work.controls, budget.quadrature};
    }
    result.stage_values.push_back(result.d_upper);
  }
  return result;
}

double distance_eulerian(const EulerianState& s0, const EulerianState& s1, const Grid& grid,
                         const DistanceBudget& budget) {
  return distance_upper(to_lagrangian(s0, grid), to_lagrangian(s1, grid), budget).d_upper;
}

LipschitzCertificate lipschitz_certificate(const std::vector<std::pair<LagrangianState, LagrangianState>>& pairs,
                                           const std::vector<double>& times, const DistanceBudget& budget) {
  std::vector<std::vector<LipschitzRow>> per_pair(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto& [x0, x1] = pairs[p];
    const double d0 = distance_upper(x0, x1, budget).d_upper;
    for (double t : times) {
      LipschitzRow row{p, t, d0, 0.0, 0.0, false};
      if (d0 == 0.0) {
        row.skipped = true;
      } else {
        const LagrangianState a = project_pi(evolve(x0, t));
        const LagrangianState b = project_pi(evolve(x1, t));
        row.dt = t == 0.0 ? d0 : distance_upper(a, b, budget).d_upper;
        row.ratio = row.dt / d0;
      }
      per_pair[p].push_back(row);
    }
  });
  LipschitzCertificate cert;
  double c = -std::numeric_limits<double>::infinity();
  for (auto& rows : per_pair) {
    for (const auto& row : rows) {
      if (!row.skipped && row.t > 0.0) c = std::max(c, std::log(row.ratio) / row.t);
      cert.rows.push_back(row);
    }
  }
  cert.fitted_C = std::isfinite(c) ? c : 0.0;
  return cert;
}

CoercivityReport coercivity_diagnostic(const LagrangianState& x) {
  CoercivityReport report;
  const auto dx = nodal_derivative(x);
  {
    const double base = b_norm(x.to_triple());
    std::vector<double> shifted = dx[0];
    for (double& v : shifted) v -= 1.0;
    report.state_norm = std::sqrt(base * base + h1_norm_sq(shifted, x.grid) + h1_norm_sq(dx[1], x.grid) +
                                  h1_norm_sq(dx[2], x.grid));
  }
  const CellSlopes slopes = cell_slopes(x);
  for (std::size_t i = 0; i < slopes.y.size(); ++i) {
    const double sum = slopes.y[i] + slopes.H[i];
    report.inv_slope_sup = std::max(report.inv_slope_sup, sum > 0.0 ? 1.0 / sum : std::numeric_limits<double>::infinity());
  }

  std::optional<GalerkinSystem> system;
  try {
    system.emplace(x);
  } catch (const Error&) {
    report.lambda_min = 0.0;
    return report;
  }
  // Inverse iteration for the smallest eigenvalue of A c = lambda E c.
  const std::size_t dim = system->dimension();
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i));
  std::vector<double> ev(dim);
  std::vector<double> ex(dim);
  const auto e_norm = [&](const std::vector<double>& a, std::vector<double>& scratch) {
    system->apply_gram(a, scratch);
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += a[i] * scratch[i];
    return std::sqrt(s);
  };
  double scale = e_norm(v, ev);
  for (double& a : v) a /= scale;
  double lambda = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= 5000; ++it) {
    system->apply_gram(v, ev);
    std::vector<double> xk = system->solve(ev);
    double num = 0.0;
    for (std::size_t i = 0; i < dim; ++i) num += xk[i] * ev[i];
    const double norm = e_norm(xk, ex);
    const double next = num / (norm * norm);
    for (std::size_t i = 0; i < dim; ++i) v[i] = xk[i] / norm;
    report.iterations = it;
    if (std::abs(next - lambda) <= 1e-13 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  report.lambda_min = lambda;
  return report;
}

}  // namespace hsx
