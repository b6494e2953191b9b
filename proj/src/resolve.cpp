#include "abcover/resolve.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace abcover {

int PlanPoint::total_multiplicity() const {
  int t = 0;
  for (const auto& [curve, m] : multiplicities) t += m;
  return t;
}

int PlanPoint::multiplicity_of(std::string_view curve) const {
  for (const auto& [label, m] : multiplicities)
    if (label == curve) return m;
  return 0;
}

BlowupPlan::BlowupPlan(std::vector<PlanPoint> points) : points_(std::move(points)) {
  std::set<std::string> labels;
  for (const auto& p : points_) {
    if (!labels.insert(p.label).second) throw std::invalid_argument("point " + p.label + " is declared twice");
    std::set<std::string> curves;
    for (const auto& [curve, m] : p.multiplicities) {
      if (m < 1) {
        throw std::invalid_argument("point " + p.label + ": multiplicity of " + curve + " must be at least 1");
      }
      if (!curves.insert(curve).second) {
        throw std::invalid_argument("point " + p.label + ": curve " + curve + " listed twice");
      }
    }
    if (p.total_multiplicity() < 3) {
      throw std::invalid_argument("point " + p.label + " has total multiplicity " +
                                  std::to_string(p.total_multiplicity()) + " < 3; B is already normal crossings there");
    }
  }
}

BlowupPlan BlowupPlan::with_fixes(const std::vector<std::optional<GroupElement>>& fixes) const {
  if (fixes.size() != points_.size()) throw std::invalid_argument("one fix per plan point is required");
  BlowupPlan out = *this;
  for (std::size_t i = 0; i < fixes.size(); ++i) out.points_[i].fix = fixes[i];
  return out;
}

DivClass SurfaceBlowup::strict_transform(const DivClass& c, const std::vector<int>& mults) const {
  if (static_cast<int>(mults.size()) != new_points()) {
    throw std::invalid_argument("strict transform needs one multiplicity per new point");
  }
  DivClass out = total_transform(c);
  for (int j = 0; j < new_points(); ++j) out -= mults[static_cast<std::size_t>(j)] * exceptional(j);
  return out;
}

SurfaceBlowup blow_up_surface(const SurfaceContext& ctx, const BlowupPlan& plan) {
  const int k = ctx.k() + static_cast<int>(plan.points().size());
  if (k > DivClass::kMaxPoints) {
    throw unsupported_error("blowing up " + std::to_string(plan.points().size()) + " point(s) of Y_" +
                            std::to_string(ctx.k()) + " leaves the supported range k <= 4");
  }
  return SurfaceBlowup(ctx, SurfaceContext(k));
}

namespace {

// Strict transform of a conic with a node at new point j: two lines through
// P_j, each picking up at most one further base point.
std::vector<NamedCurve> split_nodal_conic(const NamedCurve& curve, const DivClass& strict, int j) {
  const int k = strict.k();
  std::vector<NamedCurve> parts;
  for (int i = 1; i <= k; ++i) {
    if (i == j) continue;
    const int m = strict.m(i);
    if (m == 0) continue;
    if (m != 1) throw unsupported_error("nodal curve " + curve.label + " has multiplicity " + std::to_string(m) +
                                        " at a second base point");
    parts.push_back({"", DivClass::line_through(k, std::min(i, j), std::max(i, j)), std::nullopt});
  }
  if (parts.size() > 2) {
    throw unsupported_error("nodal conic " + curve.label + " passes through too many base points to split");
  }
  while (parts.size() < 2) parts.push_back({"", DivClass::fiber(k, j), std::nullopt});
  DivClass sum = parts[0].cls + parts[1].cls;
  if (sum != strict) throw unsupported_error("curve " + curve.label + " is not a conic with a node at P_" + std::to_string(j));
  for (std::size_t n = 0; n < parts.size(); ++n) parts[n].label = curve.label + "." + std::to_string(n + 1);
  return parts;
}

std::string exceptional_label(int index) { return "e_" + std::to_string(index); }

}  // namespace

BuildingData transform_building_data(const BuildingData& data, const BlowupPlan& plan) {
  const SurfaceBlowup blowup = blow_up_surface(data.ctx, plan);
  const int k0 = data.ctx.k();
  for (const auto& p : plan.points())
    for (const auto& [curve, m] : p.multiplicities)
      if (!data.slot_of(curve)) {
        throw std::invalid_argument("point " + p.label + " lies on " + curve + ", which is not a branch curve");
      }

  BuildingData out(blowup.target());
  for (const auto& sigma : all_elements(kGroupRank)) {
    if (sigma.is_identity()) continue;
    for (const auto& c : data.D(sigma)) {
      std::vector<int> mults;
      int node_at = 0;
      for (std::size_t j = 0; j < plan.points().size(); ++j) {
        const int m = plan.points()[j].multiplicity_of(c.label);
        mults.push_back(m);
        if (m >= 2) {
          if (m > 2 || node_at != 0) {
            throw unsupported_error("curve " + c.label + " is too singular at the blown-up points");
          }
          node_at = k0 + static_cast<int>(j) + 1;
        }
      }
      const DivClass strict = blowup.strict_transform(c.cls, mults);
      if (node_at == 0) {
        const auto* entry = out.ctx.find_curated(strict);
        out.D(sigma).push_back({c.label, strict, entry && !entry->moving ? std::nullopt : c.member});
      } else {
        for (auto& part : split_nodal_conic(c, strict, node_at)) out.D(sigma).push_back(std::move(part));
      }
    }
  }

  for (std::size_t j = 0; j < plan.points().size(); ++j) {
    const auto& fix = plan.points()[j].fix;
    if (!fix) continue;
    if (fix->is_identity() || fix->rank() != kGroupRank) {
      throw std::invalid_argument("parity fix of " + plan.points()[j].label + " must be a nonzero slot");
    }
    const std::string label = exceptional_label(k0 + static_cast<int>(j) + 1);
    if (out.find_curve(label)) throw std::invalid_argument("label " + label + " is already used by a branch curve");
    out.D(*fix).push_back({label, blowup.exceptional(static_cast<int>(j)), std::nullopt});
  }

  std::vector<Character> failing;
  out.L = solve_line_bundles(out, &failing);
  if (!failing.empty()) {
    std::string names;
    for (const auto& chi : failing) names += (names.empty() ? "" : ", ") + chi.to_string();
    throw parity_failure("relation sum is not 2-divisible for chi in {" + names + "}", failing);
  }
  const ValidationReport report = validate(out);
  if (!report.ok()) {
    throw parity_failure("transformed data does not validate: " + report.violations.front().detail,
                         report.failing_characters());
  }
  return out;
}

std::vector<std::vector<std::optional<GroupElement>>> search_parity_fix(const BuildingData& data,
                                                                       const BlowupPlan& plan) {
  const std::size_t n = plan.points().size();
  if (n > 2) throw std::invalid_argument("parity fix search is limited to two new points");
  std::vector<std::optional<GroupElement>> options{std::nullopt};
  for (const auto& sigma : all_elements(kGroupRank))
    if (!sigma.is_identity()) options.emplace_back(sigma);

  std::vector<std::vector<std::optional<GroupElement>>> viable;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= options.size();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<std::optional<GroupElement>> fixes;
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      fixes.push_back(options[c % options.size()]);
      c /= options.size();
    }
    try {
      transform_building_data(data, plan.with_fixes(fixes));
      viable.push_back(std::move(fixes));
    } catch (const parity_failure&) {
    }
  }
  return viable;
}

std::optional<GroupElement> parity_slot(const BuildingData& data, const PlanPoint& point) {
  GroupElement tau = GroupElement::identity(kGroupRank);
  for (const auto& [curve, m] : point.multiplicities) {
    auto slot = data.slot_of(curve);
    if (!slot) throw std::invalid_argument(curve + " is not a branch curve");
    if (m % 2 != 0) tau = tau + *slot;
  }
  if (tau.is_identity()) return std::nullopt;
  return tau;
}

std::string_view to_string(SingularityType t) {
  switch (t) {
    case SingularityType::two_quarter_points: return "two_quarter_points";
    case SingularityType::elliptic_gorenstein: return "elliptic_gorenstein";
    case SingularityType::A1: return "A1";
    case SingularityType::unsupported: return "unsupported";
  }
  return "unsupported";
}

SingularityType classify_singularity(const BuildingData& data, const PlanPoint& point) {
  std::vector<GroupElement> simple;
  std::vector<GroupElement> nodal;
  for (const auto& [curve, m] : point.multiplicities) {
    auto slot = data.slot_of(curve);
    if (!slot) return SingularityType::unsupported;
    if (m == 1) {
      simple.push_back(*slot);
    } else if (m == 2) {
      nodal.push_back(*slot);
    } else {
      return SingularityType::unsupported;
    }
  }
  auto distinct = [](std::vector<GroupElement> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };

  if (nodal.empty() && simple.size() == 3 && distinct(simple)) {
    const GroupElement sum = simple[0] + simple[1] + simple[2];
    return sum.is_identity() ? SingularityType::two_quarter_points : SingularityType::A1;
  }
  if (nodal.size() == 1 && simple.size() == 2) {
    const std::vector<GroupElement> all{nodal[0], simple[0], simple[1]};
    if (distinct(all) && nodal[0] != simple[0] + simple[1]) return SingularityType::elliptic_gorenstein;
  }
  return SingularityType::unsupported;
}

}  // namespace abcover
