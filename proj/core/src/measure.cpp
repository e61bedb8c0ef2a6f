#include "hsx/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hsx/errors.hpp"

namespace hsx {

PiecewiseLinear PiecewiseLinear::constant(double value) { return PiecewiseLinear{{}, value, value}; }

double PiecewiseLinear::operator()(double x) const {
  if (knots.empty()) return tail_minus;
  if (x <= knots.front().x) return knots.front().value;
  if (x >= knots.back().x) return knots.back().value;
  const auto hi = std::upper_bound(knots.begin(), knots.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
  const auto lo = hi - 1;
  if (x == lo->x) return lo->value;
  const double theta = (x - lo->x) / (hi->x - lo->x);
  return lo->value + theta * (hi->value - lo->value);
}

double PiecewiseLinear::slope_between(double a, double b) const {
  if (knots.size() < 2) return 0.0;
  const double mid = 0.5 * (a + b);
  if (mid <= knots.front().x || mid >= knots.back().x) return 0.0;
  const auto hi = std::upper_bound(knots.begin(), knots.end(), mid,
                                   [](double v, const Knot& k) { return v < k.x; });
  const auto lo = hi - 1;
  return (hi->value - lo->value) / (hi->x - lo->x);
}

void PiecewiseLinear::validate(double tol) const {
  for (const Knot& k : knots) {
    if (!std::isfinite(k.x) || !std::isfinite(k.value)) throw Error(ErrorKind::NotInD, "non-finite velocity knot");
  }
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].x > knots[i - 1].x)) throw Error(ErrorKind::NotInD, "velocity knots must be strictly increasing");
  }
  const double lo = knots.empty() ? tail_minus : knots.front().value;
  const double hi = knots.empty() ? tail_minus : knots.back().value;
  if (std::abs(lo - tail_minus) > tol * std::max(1.0, std::abs(lo)) ||
      std::abs(hi - tail_plus) > tol * std::max(1.0, std::abs(hi))) {
    throw Error(ErrorKind::NotInD, "velocity tails disagree with end knots");
  }
}

RadonMeasure::RadonMeasure(std::vector<Atom> atoms, std::vector<Knot> density_knots) {
  for (const Atom& a : atoms) {
    if (!std::isfinite(a.position) || !std::isfinite(a.mass) || a.mass < 0.0) {
      throw Error(ErrorKind::NotInD, "atoms need finite position and nonnegative mass");
    }
  }
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (!(atoms[i].position > atoms[i - 1].position)) {
      throw Error(ErrorKind::NotInD, "atom positions must be strictly increasing");
    }
  }
  std::erase_if(atoms, [](const Atom& a) { return a.mass == 0.0; });
  atoms_ = std::move(atoms);

  for (const Knot& k : density_knots) {
    if (!std::isfinite(k.x) || !std::isfinite(k.value) || k.value < 0.0) {
      throw Error(ErrorKind::NotInD, "density knots need finite x and nonnegative value");
    }
  }
  for (std::size_t i = 1; i < density_knots.size(); ++i) {
    if (density_knots[i].x < density_knots[i - 1].x) throw Error(ErrorKind::NotInD, "density knots must be sorted");
    if (i >= 2 && density_knots[i].x == density_knots[i - 2].x) {
      throw Error(ErrorKind::NotInD, "at most two density knots may share a position");
    }
  }
  if (!density_knots.empty() && (density_knots.front().value != 0.0 || density_knots.back().value != 0.0)) {
    throw Error(ErrorKind::NotInD, "density must vanish at its first and last knot");
  }
  density_ = std::move(density_knots);

  atom_prefix_.assign(atoms_.size() + 1, 0.0);
  for (std::size_t k = 0; k < atoms_.size(); ++k) atom_prefix_[k + 1] = atom_prefix_[k] + atoms_[k].mass;
  density_cumulative_.assign(density_.size(), 0.0);
  for (std::size_t k = 1; k < density_.size(); ++k) {
    const double width = density_[k].x - density_[k - 1].x;
    density_cumulative_[k] =
        density_cumulative_[k - 1] + 0.5 * width * (density_[k].value + density_[k - 1].value);
  }
}

RadonMeasure RadonMeasure::dirac(double position, double mass) { return RadonMeasure({{position, mass}}, {}); }

RadonMeasure RadonMeasure::uniform(double a, double b, double value) {
  if (!(b > a)) throw Error(ErrorKind::NotInD, "uniform density needs a < b");
  return RadonMeasure({}, {{a, 0.0}, {a, value}, {b, value}, {b, 0.0}});
}

double RadonMeasure::mass_below(double x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, double v) { return a.position < v; });
  double mass = atom_prefix_[static_cast<std::size_t>(it - atoms_.begin())];
  if (density_.empty() || x <= density_.front().x) return mass;
  if (x >= density_.back().x) return mass + density_cumulative_.back();
  const auto hi = std::upper_bound(density_.begin(), density_.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
  const auto k = static_cast<std::size_t>(hi - density_.begin()) - 1;
  const double width = density_[k + 1].x - density_[k].x;
  const double rho_x = density_[k].value + (x - density_[k].x) / width * (density_[k + 1].value - density_[k].value);
  return mass + density_cumulative_[k] + 0.5 * (x - density_[k].x) * (density_[k].value + rho_x);
}

double RadonMeasure::total_mass() const {
  return atom_prefix_.back() + (density_cumulative_.empty() ? 0.0 : density_cumulative_.back());
}

double RadonMeasure::atomic_mass() const { return atom_prefix_.back(); }

double RadonMeasure::density_right(double x) const {
  if (density_.empty() || x < density_.front().x || x >= density_.back().x) return 0.0;
  const auto hi = std::upper_bound(density_.begin(), density_.end(), x,
                                   [](double v, const Knot& k) { return v < k.x; });
  const auto lo = hi - 1;
  return lo->value + (x - lo->x) / (hi->x - lo->x) * (hi->value - lo->value);
}

double RadonMeasure::density_left(double x) const {
  if (density_.empty() || x <= density_.front().x || x > density_.back().x) return 0.0;
  const auto hi = std::lower_bound(density_.begin(), density_.end(), x,
                                   [](const Knot& k, double v) { return k.x < v; });
  const auto lo = hi - 1;
  return lo->value + (x - lo->x) / (hi->x - lo->x) * (hi->value - lo->value);
}

std::optional<std::pair<double, double>> RadonMeasure::hull() const {
  std::optional<std::pair<double, double>> out;
  const auto extend = [&out](double x) {
    if (!out) out = std::pair{x, x};
    out->first = std::min(out->first, x);
    out->second = std::max(out->second, x);
  };
  if (!atoms_.empty()) {
    extend(atoms_.front().position);
    extend(atoms_.back().position);
  }
  if (!density_.empty()) {
    extend(density_.front().x);
    extend(density_.back().x);
  }
  return out;
}

double cumulative_plus_id(const RadonMeasure& mu, double x) { return mu.mass_below(x) + x; }

std::optional<std::pair<double, double>> EulerianState::active_hull() const {
  auto out = mu.hull();
  if (!u.knots.empty()) {
    const double lo = u.knots.front().x;
    const double hi = u.knots.back().x;
    if (!out) out = std::pair{lo, hi};
    out->first = std::min(out->first, lo);
    out->second = std::max(out->second, hi);
  }
  return out;
}

double compatibility_defect(const EulerianState& state) {
  std::vector<double> breaks;
  for (const Knot& k : state.u.knots) breaks.push_back(k.x);
  for (const Knot& k : state.mu.density_knots()) breaks.push_back(k.x);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    const double s2 = std::pow(state.u.slope_between(a, b), 2);
    const double scale = std::max(1.0, s2);
    worst = std::max(worst, std::abs(state.mu.density_right(a) - s2) / scale);
    worst = std::max(worst, std::abs(state.mu.density_left(b) - s2) / scale);
  }
  return worst;
}

namespace {

double atom_at(const RadonMeasure& mu, double x) {
  const auto& atoms = mu.atoms();
  const auto it = std::lower_bound(atoms.begin(), atoms.end(), x,
                                   [](const Atom& a, double v) { return a.position < v; });
  return (it != atoms.end() && it->position == x) ? it->mass : 0.0;
}

}  // namespace

EulerianGap eulerian_gap(const EulerianState& a, const EulerianState& b) {
  std::vector<double> xs;
  for (const EulerianState* s : {&a, &b}) {
    for (const Knot& k : s->u.knots) xs.push_back(k.x);
    for (const Knot& k : s->mu.density_knots()) xs.push_back(k.x);
    for (const Atom& at : s->mu.atoms()) xs.push_back(at.position);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  EulerianGap gap;
  gap.u = std::max(std::abs(a.u.tail_minus - b.u.tail_minus), std::abs(a.u.tail_plus - b.u.tail_plus));
  gap.cumulative = std::abs(a.mu.total_mass() - b.mu.total_mass());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    gap.u = std::max(gap.u, std::abs(a.u(x) - b.u(x)));
    const double fa = a.mu.mass_below(x);
    const double fb = b.mu.mass_below(x);
    gap.cumulative = std::max(gap.cumulative, std::abs(fa - fb));
    gap.cumulative = std::max(gap.cumulative, std::abs(fa + atom_at(a.mu, x) - fb - atom_at(b.mu, x)));
    if (i + 1 < xs.size()) {
      const double mid = 0.5 * (x + xs[i + 1]);
      gap.cumulative = std::max(gap.cumulative, std::abs(a.mu.mass_below(mid) - b.mu.mass_below(mid)));
    }
  }
  return gap;
}

void check_in_D(const EulerianState& state, double tol) {
  state.u.validate();
  const double defect = compatibility_defect(state);
  if (defect > tol) {
    std::ostringstream msg;
    msg << "absolutely continuous part differs from u_x^2 (relative defect " << defect << ")";
    throw Error(ErrorKind::NotInD, msg.str());
  }
}

}  // namespace hsx
