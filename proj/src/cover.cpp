#include "abcover/cover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace abcover {

namespace {

const std::vector<GroupElement>& nonzero_elements() {
  static const std::vector<GroupElement> elems = [] {
    auto all = all_elements(kGroupRank);
    all.erase(all.begin());
    return all;
  }();
  return elems;
}

const std::vector<Character>& nontrivial_characters() {
  static const std::vector<Character> chars = [] {
    auto all = all_characters(kGroupRank);
    all.erase(all.begin());
    return all;
  }();
  return chars;
}

}  // namespace

BuildingData::BuildingData(SurfaceContext c) : ctx(c) {
  L.fill(DivClass::zero(c.k()));
}

std::optional<GroupElement> BuildingData::slot_of(const std::string& label) const {
  for (const auto& sigma : nonzero_elements())
    for (const auto& curve : D(sigma))
      if (curve.label == label) return sigma;
  return std::nullopt;
}

const NamedCurve* BuildingData::find_curve(const std::string& label) const {
  for (const auto& sigma : nonzero_elements())
    for (const auto& curve : D(sigma))
      if (curve.label == label) return &curve;
  return nullptr;
}

DivClass branch_class(const BuildingData& data, const GroupElement& sigma) {
  DivClass sum = DivClass::zero(data.ctx.k());
  for (const auto& c : data.D(sigma)) sum += c.cls;
  return sum;
}

DivClass total_branch(const BuildingData& data) {
  DivClass sum = DivClass::zero(data.ctx.k());
  for (const auto& sigma : nonzero_elements()) sum += branch_class(data, sigma);
  return sum;
}

DivClass relation_sum(const BuildingData& data, const Character& chi) {
  DivClass sum = DivClass::zero(data.ctx.k());
  for (const auto& sigma : negative_set(chi)) sum += branch_class(data, sigma);
  return sum;
}

std::vector<Character> ValidationReport::failing_characters() const {
  std::vector<Character> out;
  for (const auto& v : violations)
    if (v.chi && std::find(out.begin(), out.end(), *v.chi) == out.end()) out.push_back(*v.chi);
  return out;
}

ValidationReport validate(const BuildingData& data) {
  ValidationReport report;
  for (const auto& chi : nontrivial_characters()) {
    const DivClass& l = data.line_bundle(chi);
    const DivClass diff = 2 * l - relation_sum(data, chi);
    if (!diff.is_zero()) {
      report.violations.push_back({ViolationKind::relation, chi, diff,
                                   "2L_" + chi.to_string() + " differs from the branch sum by " +
                                       format_class(diff)});
    }
    if (l.is_zero()) {
      report.violations.push_back({ViolationKind::trivial_line_bundle, chi, DivClass::zero(data.ctx.k()),
                                   "L_" + chi.to_string() + " is trivial"});
    }
  }

  std::vector<const NamedCurve*> curves;
  for (const auto& sigma : nonzero_elements())
    for (const auto& c : data.D(sigma)) curves.push_back(&c);
  std::set<std::string> seen;
  for (const auto* c : curves) {
    if (!seen.insert(c->label).second) {
      report.violations.push_back({ViolationKind::non_reduced, std::nullopt, DivClass::zero(data.ctx.k()),
                                   "curve " + c->label + " appears more than once in B"});
    }
  }
  // Distinct irreducible curves meet non-negatively; a negative pairing
  // means two labels name the same rigid curve.
  for (std::size_t i = 0; i < curves.size(); ++i)
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (curves[i]->label == curves[j]->label) continue;
      if (pairing(curves[i]->cls, curves[j]->cls) < 0) {
        report.violations.push_back({ViolationKind::non_reduced, std::nullopt, DivClass::zero(data.ctx.k()),
                                     "curves " + curves[i]->label + " and " + curves[j]->label +
                                         " share the rigid component " + format_class(curves[i]->cls)});
      }
    }
  return report;
}

std::array<DivClass, kGroupOrder> solve_line_bundles(const BuildingData& data,
                                                     std::vector<Character>* failing) {
  std::array<DivClass, kGroupOrder> out;
  out.fill(DivClass::zero(data.ctx.k()));
  for (const auto& chi : nontrivial_characters()) {
    if (auto half = relation_sum(data, chi).halved()) {
      out[chi.mask()] = *half;
    } else if (failing) {
      failing->push_back(chi);
    }
  }
  return out;
}

int DeclaredPoint::total_multiplicity() const {
  int t = 0;
  for (const auto& [label, m] : multiplicities) t += m;
  return t;
}

SmoothnessReport smoothness_check(const BuildingData& data, const IncidenceSpec& inc) {
  SmoothnessReport report;
  for (const auto& sigma : nonzero_elements())
    for (const auto& c : data.D(sigma))
      if (!data.ctx.is_curated(c.cls)) {
        throw unsupported_error("curve " + c.label + " of class " + format_class(c.cls) +
                                " is not in the curated dictionary of Y_" + std::to_string(data.ctx.k()));
      }

  for (const auto& sigma : nonzero_elements()) {
    const auto& curves = data.D(sigma);
    for (std::size_t i = 0; i < curves.size(); ++i)
      for (std::size_t j = i + 1; j < curves.size(); ++j)
        if (pairing(curves[i].cls, curves[j].cls) > 0)
          report.internal_crossings.emplace_back(curves[i].label, curves[j].label);
  }

  for (const auto& p : inc.points) {
    int total = 0;
    bool singular = false;
    std::map<std::uint8_t, int> per_slot;
    for (const auto& [label, mult] : p.multiplicities) {
      if (mult <= 0) continue;
      auto slot = data.slot_of(label);
      if (!slot) continue;  // not a branch curve
      total += mult;
      singular = singular || mult >= 2 || ++per_slot[slot->mask()] >= 2;
    }
    if (singular || total >= 3) report.singular_points.push_back(p.label);
  }
  report.smooth = report.singular_points.empty() && report.internal_crossings.empty();
  return report;
}

CoverInvariants invariants(const BuildingData& data) {
  const SurfaceContext& ctx = data.ctx;
  const DivClass K = ctx.canonical();
  CoverInvariants inv;
  inv.half_2KX = 2 * K + total_branch(data);
  inv.KX2 = 2 * pairing(inv.half_2KX, inv.half_2KX);
  int chi_sum = 0;
  for (const auto& chi : nontrivial_characters()) {
    const DivClass& l = data.line_bundle(chi);
    inv.pg += h0(ctx, l + K);
    const int twice = pairing(l, l + K);
    if (twice % 2 != 0) {
      throw corrupt_data_error("L_" + chi.to_string() + ".(L_" + chi.to_string() + "+K) = " +
                               std::to_string(twice) + " is odd");
    }
    chi_sum += twice / 2;
  }
  // p_g(Y) = 0 and chi(O_Y) = 1 for rational Y.
  inv.chiO = 8 + chi_sum;
  inv.q = 1 + inv.pg - inv.chiO;
  return inv;
}

bool nef_big_check(const SurfaceContext& ctx, const DivClass& half_2KX) {
  return is_nef(ctx, half_2KX) && pairing(half_2KX, half_2KX) > 0;
}

bool nef_big_check(const BuildingData& data) {
  return nef_big_check(data.ctx, invariants(data).half_2KX);
}

BuildingData relabel(const BuildingData& data, const BitMatrix& phi) {
  BuildingData out(data.ctx);
  for (const auto& sigma : nonzero_elements()) out.D(phi.apply(sigma)) = data.D(sigma);
  for (const auto& chi : nontrivial_characters()) out.line_bundle(phi.transport(chi)) = data.line_bundle(chi);
  return out;
}

}  // namespace abcover
