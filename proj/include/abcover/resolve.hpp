#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abcover/chargroup.hpp"
#include "abcover/cover.hpp"
#include "abcover/picard.hpp"

namespace abcover {

/// A point of the branch locus to be blown up. `fix` names the slot D_sigma
/// that absorbs the new exceptional curve (nullopt: none).
struct PlanPoint {
  std::string label;
  std::vector<std::pair<std::string, int>> multiplicities;
  std::optional<GroupElement> fix;

  int total_multiplicity() const;
  int multiplicity_of(std::string_view curve) const;
};

class BlowupPlan {
 public:
  BlowupPlan() = default;
  /// Throws std::invalid_argument for multiplicities < 1, total
  /// multiplicity < 3 or repeated point labels.
  explicit BlowupPlan(std::vector<PlanPoint> points);

  const std::vector<PlanPoint>& points() const noexcept { return points_; }
  bool empty() const noexcept { return points_.empty(); }
  /// Same points with different fixes (one entry per point).
  BlowupPlan with_fixes(const std::vector<std::optional<GroupElement>>& fixes) const;

 private:
  std::vector<PlanPoint> points_;
};

/// Blow-up of Y_k at the plan's points; the j-th point gets e_{k+j}.
class SurfaceBlowup {
 public:
  SurfaceBlowup(SurfaceContext from, SurfaceContext to) : from_(from), to_(to) {}

  const SurfaceContext& source() const noexcept { return from_; }
  const SurfaceContext& target() const noexcept { return to_; }
  int new_points() const noexcept { return to_.k() - from_.k(); }
  /// e_{k+j}, j 0-based.
  DivClass exceptional(int j) const { return DivClass::exceptional(to_.k(), from_.k() + j + 1); }

  DivClass total_transform(const DivClass& c) const { return c.pulled_back(to_.k()); }
  /// Pullback minus m_j e_{k+j}; `mults` has one entry per new point.
  DivClass strict_transform(const DivClass& c, const std::vector<int>& mults) const;
  DivClass blow_down(const DivClass& c) const { return c.pushed_forward(from_.k()); }

 private:
  SurfaceContext from_;
  SurfaceContext to_;
};

/// Throws unsupported_error when k + |points| > 4.
SurfaceBlowup blow_up_surface(const SurfaceContext& ctx, const BlowupPlan& plan);

/// Transformed data fails the parity relations for `characters`.
class parity_failure : public error {
 public:
  parity_failure(const std::string& what, std::vector<Character> characters)
      : error(what), characters_(std::move(characters)) {}
  const std::vector<Character>& characters() const noexcept { return characters_; }

 private:
  std::vector<Character> characters_;
};

/// Strict transforms of every branch curve, exceptional curves appended per
/// the fixes, L re-solved. A conic with a node at a blown-up point splits
/// into its two lines (labels "<label>.1", "<label>.2"). Throws
/// parity_failure when some relation sum is not 2-divisible or the result
/// does not validate.
BuildingData transform_building_data(const BuildingData& data, const BlowupPlan& plan);

/// Every assignment of new exceptionals to {none} or a slot whose transform
/// validates, in enumeration order (none first, then slots 001..111).
std::vector<std::vector<std::optional<GroupElement>>> search_parity_fix(const BuildingData& data,
                                                                       const BlowupPlan& plan);

/// The slot tau = sum of multiplicity * sigma over the point; the only slot
/// that can absorb its exceptional curve (nullopt when tau = 0).
std::optional<GroupElement> parity_slot(const BuildingData& data, const PlanPoint& point);

enum class SingularityType { two_quarter_points, elliptic_gorenstein, A1, unsupported };

std::string_view to_string(SingularityType t);

/// Singularity of the cover over the point before blowing up.
SingularityType classify_singularity(const BuildingData& data, const PlanPoint& point);

}  // namespace abcover
