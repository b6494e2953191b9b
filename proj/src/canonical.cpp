#include "abcover/canonical.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace abcover {

CanonicalReport generator_set(const BuildingData& data) {
  CanonicalReport report;
  const DivClass K = data.ctx.canonical();
  for (const auto& chi : all_characters(kGroupRank)) {
    if (chi.is_trivial()) continue;  // p_g(Y) = 0
    const DivClass base = K + data.line_bundle(chi);
    const int sections = h0(data.ctx, base);
    if (sections == 0) continue;
    CanonicalGenerator gen{chi, base, sections, {}};
    for (const auto& sigma : all_elements(kGroupRank)) {
      if (sigma.is_identity() || chi_value(chi, sigma) != 1) continue;
      for (const auto& c : data.D(sigma)) gen.branch_part.push_back(c);
    }
    report.J.push_back(chi);
    report.pg += sections;
    report.generators.push_back(std::move(gen));
  }
  if (report.J.empty()) throw unsupported_error("canonical system is empty (p_g = 0)");
  return report;
}

std::vector<NamedCurve> fixed_part(const CanonicalReport& report) {
  if (report.generators.empty()) throw unsupported_error("report has no generators");
  for (const auto& g : report.generators) {
    if (g.base_h0 != 1) {
      throw unsupported_error("base class K+L_" + g.chi.to_string() + " moves (h0 = " +
                              std::to_string(g.base_h0) + "); fixed part is not determined");
    }
  }
  std::vector<NamedCurve> common = report.generators.front().branch_part;
  for (std::size_t i = 1; i < report.generators.size(); ++i) {
    const auto& other = report.generators[i].branch_part;
    std::erase_if(common, [&other](const NamedCurve& c) {
      return std::none_of(other.begin(), other.end(),
                          [&c](const NamedCurve& o) { return o.label == c.label; });
    });
  }
  return common;
}

int half_pullback_pairing(const HalfPullback& a, const HalfPullback& b) {
  if (a.denominator <= 0 || b.denominator <= 0) {
    throw std::invalid_argument("half-pullback denominators must be positive");
  }
  const long num = 8L * pairing(a.numerator, b.numerator);
  const long den = static_cast<long>(a.denominator) * b.denominator;
  if (num % den != 0) {
    throw corrupt_data_error("intersection number " + std::to_string(num) + "/" + std::to_string(den) +
                             " on the cover is not an integer");
  }
  return static_cast<int>(num / den);
}

HalfPullback canonical_divisor(const BuildingData& data) {
  return {2 * data.ctx.canonical() + total_branch(data), 2};
}

CanonicalReport canonical_degree(const BuildingData& data, const IncidenceSpec& inc) {
  CanonicalReport report = generator_set(data);
  if (report.pg != 3) {
    report.note = "degree is only determined for p_g = 3 (p_g = " + std::to_string(report.pg) + ")";
    return report;
  }
  try {
    report.fixed_part = fixed_part(report);
  } catch (const unsupported_error& e) {
    report.note = e.what();
    return report;
  }

  HalfPullback moving = canonical_divisor(data);
  for (const auto& c : report.fixed_part) moving.numerator -= c.cls;
  report.M2 = half_pullback_pairing(moving, moving);
  report.composed_with_pencil = *report.M2 == 0;

  std::set<std::string> fixed;
  for (const auto& c : report.fixed_part) fixed.insert(c.label);
  std::vector<std::set<std::string>> supports;
  for (const auto& g : report.generators) {
    std::set<std::string> s;
    for (const auto& c : g.branch_part)
      if (!fixed.count(c.label)) s.insert(c.label);
    supports.push_back(std::move(s));
  }

  bool bpf = true;
  for (std::size_t i = 0; i < supports.size() && bpf; ++i)
    for (std::size_t j = i + 1; j < supports.size() && bpf; ++j)
      for (const auto& label : supports[i])
        if (supports[j].count(label)) {
          bpf = false;
          report.note = "generators share the curve " + label;
          break;
        }
  for (const auto& p : inc.points) {
    if (!bpf) break;
    const bool on_all = std::all_of(supports.begin(), supports.end(), [&p](const std::set<std::string>& s) {
      return std::any_of(p.multiplicities.begin(), p.multiplicities.end(),
                         [&s](const auto& lm) { return lm.second > 0 && s.count(lm.first) > 0; });
    });
    if (on_all) {
      bpf = false;
      report.note = "declared point " + p.label + " lies on every generator";
    }
  }
  report.bpf = bpf;

  if (!bpf) return report;
  if (report.composed_with_pencil) {
    report.note = "moving part has square 0 (composed with a pencil)";
    return report;
  }
  report.degree = *report.M2;
  return report;
}

bool factors_through_quotient(const BuildingData& data, const Subgroup& h) {
  const auto invariant = perp(h);
  const DivClass K = data.ctx.canonical();
  for (const auto& chi : all_characters(kGroupRank)) {
    if (chi.is_trivial()) continue;
    if (std::find(invariant.begin(), invariant.end(), chi) != invariant.end()) continue;
    if (h0(data.ctx, K + data.line_bundle(chi)) != 0) return false;
  }
  return true;
}

FiberGenus fiber_genus(const BuildingData& data, const DivClass& p) {
  if (pairing(p, p) != 0 || h0(data.ctx, p) != 2) {
    throw std::invalid_argument("fiber_genus needs a pencil class (p^2 = 0, h0 = 2); got " + format_class(p));
  }
  std::vector<GroupElement> meeting;
  for (const auto& sigma : all_elements(kGroupRank)) {
    if (sigma.is_identity()) continue;
    const auto& curves = data.D(sigma);
    if (std::any_of(curves.begin(), curves.end(), [&p](const NamedCurve& c) { return pairing(c.cls, p) > 0; }))
      meeting.push_back(sigma);
  }
  FiberGenus out;
  out.inertia = Subgroup::generated(kGroupRank, meeting);
  out.components = kGroupOrder / static_cast<int>(out.inertia.order());
  // Riemann-Hurwitz over a rational fibre: 8(2*0-2) + 4 B.p, with K_Y.p = -2.
  out.total_euler = 8 * pairing(data.ctx.canonical(), p) + 4 * pairing(total_branch(data), p);
  if (out.total_euler % (2 * out.components) != 0) {
    throw generic_position_error("pulled-back fibre of " + format_class(p) + " does not split evenly");
  }
  out.genus = 1 + out.total_euler / (2 * out.components);
  return out;
}

}  // namespace abcover
