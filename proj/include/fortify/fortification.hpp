#pragma once
// Compactly supported radial bumps subtracted from a base objective.

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fortify/test_functions.hpp"

namespace fortify {

struct BumpSpec {
  std::vector<double> center;
  double epsilon = 1.0;
  double amplitude = 10.0;

  double support_radius() const { return 1.0 / epsilon; }
};

/// exp(-1/(1-(eps*r)^2)) inside the support r < 1/eps and exactly 0 outside.
/// Peaks at 1/e for r = 0.
double bump_phi(double r, double epsilon);

/// base(x) - sum_j A_j * phi_j(|x - c_j|). Outside every support the base
/// value is returned unchanged, bit for bit.
class FortifiedLandscape final : public Landscape {
 public:
  FortifiedLandscape(std::shared_ptr<const Landscape> base, std::vector<BumpSpec> bumps);

  std::size_t dim() const override { return base_->dim(); }
  double value(std::span<const double> x) const override;
  void values(const PointBatch& points, std::span<double> out) const override;

  const Landscape& base() const { return *base_; }
  std::span<const BumpSpec> bumps() const { return bumps_; }

 private:
  std::shared_ptr<const Landscape> base_;
  std::vector<BumpSpec> bumps_;
};

struct FortifiedFunction {
  ObjectiveFunction objective;
  ObjectiveFunction base;
  std::vector<BumpSpec> bumps;
  double fortified_optimum_value = 0.0;
};

/// Subtracts amplitude*phi at the optimum labelled target_label. The returned
/// optima carry the target's lowered value; all others are unchanged.
/// Throws ConfigError when the label is unknown, epsilon or amplitude is not
/// positive, or the bump support reaches any other registered optimum.
std::pair<FortifiedFunction, std::vector<KnownOptimum>> fortify(
    const ObjectiveFunction& base, std::span<const KnownOptimum> optima, int target_label,
    double epsilon, double amplitude);

/// General form with several bumps; supports must not overlap one another.
FortifiedFunction fortify_with(const ObjectiveFunction& base, std::vector<BumpSpec> bumps);

struct SlicePoint {
  double coordinate;
  double value;
};

/// Samples a 2-D function along the free axis with the other axis held at
/// fixed_value. Both the fixed value and the sweep must lie in the domain.
std::vector<SlicePoint> slice_1d(const ObjectiveFunction& function, std::size_t fixed_dim,
                                 double fixed_value, double sweep_lo, double sweep_hi,
                                 std::size_t n_points);

}  // namespace fortify
