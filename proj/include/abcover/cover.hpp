#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abcover/chargroup.hpp"
#include "abcover/picard.hpp"

namespace abcover {

/// Covers are always Z_2^3-covers here.
inline constexpr int kGroupRank = 3;
inline constexpr int kGroupOrder = 8;

/// Building data {D_sigma, L_chi} of a Z_2^3-cover of Y_k.
/// `branch` and `L` are indexed by the bit mask of sigma / chi; slot 0 is
/// unused. An empty curve list means D_sigma = 0.
struct BuildingData {
  SurfaceContext ctx;
  std::array<std::vector<NamedCurve>, kGroupOrder> branch;
  std::array<DivClass, kGroupOrder> L;

  explicit BuildingData(SurfaceContext c = SurfaceContext(0));

  std::vector<NamedCurve>& D(const GroupElement& sigma) { return branch[sigma.mask()]; }
  const std::vector<NamedCurve>& D(const GroupElement& sigma) const { return branch[sigma.mask()]; }
  DivClass& line_bundle(const Character& chi) { return L[chi.mask()]; }
  const DivClass& line_bundle(const Character& chi) const { return L[chi.mask()]; }
  /// Slot of the curve with this label, if it is a branch curve.
  std::optional<GroupElement> slot_of(const std::string& label) const;
  const NamedCurve* find_curve(const std::string& label) const;
};

DivClass branch_class(const BuildingData& data, const GroupElement& sigma);
/// B = sum of all D_sigma.
DivClass total_branch(const BuildingData& data);
/// Sum of D_sigma over sigma with chi(sigma) = -1, i.e. the class 2 L_chi must have.
DivClass relation_sum(const BuildingData& data, const Character& chi);

enum class ViolationKind { relation, trivial_line_bundle, non_reduced };

struct Violation {
  ViolationKind kind;
  std::optional<Character> chi;
  DivClass difference;  // 2L_chi - relation_sum, for relation violations
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  std::vector<Character> failing_characters() const;
};

/// The seven parity relations, reducedness of B and L_chi != 0.
ValidationReport validate(const BuildingData& data);

/// Solves L_chi = relation_sum / 2. Characters whose sum is not 2-divisible
/// are reported through `failing` (and their L left at zero).
std::array<DivClass, kGroupOrder> solve_line_bundles(const BuildingData& data,
                                                     std::vector<Character>* failing = nullptr);

struct DeclaredPoint {
  std::string label;
  std::vector<std::pair<std::string, int>> multiplicities;  // curve label -> local multiplicity

  int total_multiplicity() const;
};

/// Special points of the branch locus. Intersections that are not declared
/// are transverse, pairwise distinct and lie on no third branch curve.
struct IncidenceSpec {
  std::vector<DeclaredPoint> points;
};

struct SmoothnessReport {
  bool smooth = true;
  /// Declared points where B is not simple normal crossings.
  std::vector<std::string> singular_points;
  /// Pairs of components of one D_sigma that meet (D_sigma singular there).
  std::vector<std::pair<std::string, std::string>> internal_crossings;
};

/// Throws unsupported_error for branch curves outside the curated dictionary.
SmoothnessReport smoothness_check(const BuildingData& data, const IncidenceSpec& inc);

struct CoverInvariants {
  DivClass half_2KX;  // 2K_Y + B; 2K_X is its pullback
  int KX2 = 0;
  int pg = 0;
  int chiO = 0;
  int q = 0;

  bool operator==(const CoverInvariants&) const = default;
};

/// Throws corrupt_data_error when some L.(L+K) is odd.
CoverInvariants invariants(const BuildingData& data);

bool nef_big_check(const SurfaceContext& ctx, const DivClass& half_2KX);
bool nef_big_check(const BuildingData& data);

/// Relabels D_sigma -> D_{phi(sigma)} and L_chi -> L_{chi o phi^-1}.
BuildingData relabel(const BuildingData& data, const BitMatrix& phi);

}  // namespace abcover
