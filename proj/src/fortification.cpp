#include "fortify/fortification.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "fortify/kernels.hpp"

namespace fortify {

double bump_phi(double r, double epsilon) { return kernels::bump_phi(r, epsilon); }

FortifiedLandscape::FortifiedLandscape(std::shared_ptr<const Landscape> base,
                                       std::vector<BumpSpec> bumps)
    : base_(std::move(base)), bumps_(std::move(bumps)) {
  for (const auto& b : bumps_) {
    if (b.center.size() != base_->dim()) throw ConfigError("bump center has wrong dimension");
    if (!(b.epsilon > 0.0)) throw ConfigError("bump epsilon must be positive");
    if (!(b.amplitude > 0.0)) throw ConfigError("bump amplitude must be positive");
  }
}

double FortifiedLandscape::value(std::span<const double> x) const {
  double out = base_->value(x);
  for (const auto& b : bumps_) {
    kernels::scalar::subtract_bump({b.center, b.epsilon, b.amplitude}, x.first(b.center.size()),
                                   {&out, 1});
  }
  return out;
}

void FortifiedLandscape::values(const PointBatch& points, std::span<double> out) const {
  base_->values(points, out);
  for (const auto& b : bumps_) {
    kernels::subtract_bump({b.center, b.epsilon, b.amplitude}, points.coords(), out);
  }
}

FortifiedFunction fortify_with(const ObjectiveFunction& base, std::vector<BumpSpec> bumps) {
  for (const auto& b : bumps) {
    if (!base.domain().contains(b.center)) throw ConfigError("bump center outside the domain");
  }
  for (std::size_t i = 0; i < bumps.size(); ++i) {
    for (std::size_t j = i + 1; j < bumps.size(); ++j) {
      const double gap = euclidean_distance(bumps[i].center, bumps[j].center);
      if (gap < bumps[i].support_radius() + bumps[j].support_radius()) {
        throw ConfigError("bump supports overlap");
      }
    }
  }
  auto landscape = std::make_shared<const FortifiedLandscape>(base.landscape_ptr(), bumps);
  ObjectiveFunction objective(base.name() + "+bump", base.domain(), landscape);
  double deepest = std::numeric_limits<double>::infinity();
  for (const auto& b : bumps) deepest = std::min(deepest, objective.peek(b.center));
  return {std::move(objective), base.fresh(), std::move(bumps), deepest};
}

std::pair<FortifiedFunction, std::vector<KnownOptimum>> fortify(
    const ObjectiveFunction& base, std::span<const KnownOptimum> optima, int target_label,
    double epsilon, double amplitude) {
  if (!(epsilon > 0.0)) throw ConfigError("bump epsilon must be positive");
  if (!(amplitude > 0.0)) throw ConfigError("bump amplitude must be positive");
  const KnownOptimum& target = find_optimum(optima, target_label);
  const double radius = 1.0 / epsilon;
  for (const auto& other : optima) {
    if (other.label == target_label) continue;
    if (!(radius < euclidean_distance(target.location, other.location))) {
      throw ConfigError("bump support around optimum " + std::to_string(target_label) +
                        " reaches optimum " + std::to_string(other.label));
    }
  }

  FortifiedFunction fortified =
      fortify_with(base, {BumpSpec{target.location, epsilon, amplitude}});
  std::vector<KnownOptimum> lowered(optima.begin(), optima.end());
  for (auto& o : lowered) {
    if (o.label == target_label) o.value = fortified.fortified_optimum_value;
  }
  return {std::move(fortified), std::move(lowered)};
}

std::vector<SlicePoint> slice_1d(const ObjectiveFunction& function, std::size_t fixed_dim,
                                 double fixed_value, double sweep_lo, double sweep_hi,
                                 std::size_t n_points) {
  const BoxDomain& domain = function.domain();
  if (domain.dim() != 2) throw ConfigError("slices are defined for 2-D functions");
  if (fixed_dim > 1) throw ConfigError("fixed dimension must be 0 or 1");
  if (n_points < 2) throw ConfigError("a slice needs at least two points");
  const std::size_t free_dim = 1 - fixed_dim;
  const auto lo = domain.lower();
  const auto hi = domain.upper();
  if (!(fixed_value >= lo[fixed_dim] && fixed_value <= hi[fixed_dim])) {
    throw ConfigError("fixed coordinate outside the domain");
  }
  if (!(sweep_lo < sweep_hi && sweep_lo >= lo[free_dim] && sweep_hi <= hi[free_dim])) {
    throw ConfigError("sweep range outside the domain");
  }

  PointBatch points(2, n_points);
  const double step = (sweep_hi - sweep_lo) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double t = i + 1 == n_points ? sweep_hi : sweep_lo + step * static_cast<double>(i);
    points.at(i, fixed_dim) = fixed_value;
    points.at(i, free_dim) = t;
  }
  std::vector<double> values(n_points);
  function.landscape().values(points, values);

  std::vector<SlicePoint> out(n_points);
  for (std::size_t i = 0; i < n_points; ++i) out[i] = {points.at(i, free_dim), values[i]};
  return out;
}

}  // namespace fortify
