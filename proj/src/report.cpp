#include "abcover/report.hpp"

namespace abcover {

namespace {

using json = nlohmann::json;

std::string_view kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::relation: return "relation";
    case ViolationKind::trivial_line_bundle: return "trivial_line_bundle";
    case ViolationKind::non_reduced: return "non_reduced";
  }
  return "relation";
}

json labels(const std::vector<NamedCurve>& curves) {
  json out = json::array();
  for (const auto& c : curves) out.push_back(c.label);
  return out;
}

json invariants_json(const CoverInvariants& inv) {
  return {{"half_2KX", format_class(inv.half_2KX)},
          {"KX2", inv.KX2},
          {"pg", inv.pg},
          {"chiO", inv.chiO},
          {"q", inv.q}};
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json branch_json(const BuildingData& data) {
  json out = json::object();
  for (const auto& sigma : all_elements(kGroupRank)) {
    if (sigma.is_identity() || data.D(sigma).empty()) continue;
    out[sigma.to_string()] = labels(data.D(sigma));
  }
  return out;
}

json line_bundles_json(const BuildingData& data) {
  json out = json::object();
  for (const auto& chi : all_characters(kGroupRank))
    if (!chi.is_trivial()) out[chi.to_string()] = format_class(data.line_bundle(chi));
  return out;
}

void canonical_fields(json& out, const CanonicalReport& c) {
  json J = json::array();
  for (const auto& chi : c.J) J.push_back(chi.to_string());
  json gens = json::array();
  for (const auto& g : c.generators) {
    gens.push_back({{"character", g.chi.to_string()},
                    {"base_class", format_class(g.base_class)},
                    {"base_h0", g.base_h0},
                    {"branch_part", labels(g.branch_part)}});
  }
  out["J"] = J;
  out["generators"] = gens;
  out["fixed_part"] = labels(c.fixed_part);
  out["M2"] = optional_int(c.M2);
  out["degree"] = optional_int(c.degree);
  out["bpf"] = c.bpf;
  out["composed_with_pencil"] = c.composed_with_pencil;
  out["canonical_note"] = c.note;
}

}  // namespace

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json verify_report_json(const VerifyReport& r) {
  json out;
  out["name"] = r.name;
  out["valid"] = r.validation.ok();
  json violations = json::array();
  for (const auto& v : r.validation.violations) {
    violations.push_back({{"kind", kind_name(v.kind)},
                          {"character", v.chi ? json(v.chi->to_string()) : json(nullptr)},
                          {"detail", v.detail}});
  }
  out["violations"] = violations;
  if (r.smoothness) {
    out["smooth"] = r.smoothness->smooth;
    out["singular_points"] = r.smoothness->singular_points;
    json crossings = json::array();
    for (const auto& [a, b] : r.smoothness->internal_crossings) crossings.push_back({a, b});
    out["internal_crossings"] = crossings;
  }
  if (r.invariants) out["invariants"] = invariants_json(*r.invariants);
  if (r.nef_big) out["nef_big"] = *r.nef_big;
  if (r.canonical) canonical_fields(out, *r.canonical);
  if (r.factors_through_quotient) out["factors_through_quotient"] = *r.factors_through_quotient;
  json pencils = json::array();
  for (const auto& [cls, g] : r.pencils) {
    json inertia = json::array();
    for (const auto& e : g.inertia.elements()) inertia.push_back(e.to_string());
    pencils.push_back({{"class", format_class(cls)},
                       {"components", g.components},
                       {"genus", g.genus},
                       {"inertia", inertia}});
  }
  out["pencils"] = pencils;
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"expected", c.expected}, {"actual", c.actual}});
  }
  out["checks"] = checks;
  out["pass"] = r.pass();
  return out;
}

void print_verify_report(std::ostream& out, const VerifyReport& r) {
  out << r.name << "\n";
  if (!r.validation.ok()) {
    out << "  building data: INVALID\n";
    for (const auto& v : r.validation.violations) {
      out << "    " << kind_name(v.kind);
      if (v.chi) out << " chi_" << v.chi->to_string();
      out << ": " << v.detail << "\n";
    }
    return;
  }
  out << "  building data: valid\n";
  if (r.smoothness) {
    out << "  branch locus: " << (r.smoothness->smooth ? "simple normal crossings" : "SINGULAR") << "\n";
    for (const auto& p : r.smoothness->singular_points) out << "    singular point " << p << "\n";
    for (const auto& [a, b] : r.smoothness->internal_crossings)
      out << "    " << a << " and " << b << " meet inside one branch divisor\n";
  }
  if (r.invariants) {
    const auto& inv = *r.invariants;
    out << "  2K_X = f^*(" << format_class(inv.half_2KX) << ")\n";
    out << "  K_X^2 = " << inv.KX2 << ", p_g = " << inv.pg << ", chi(O) = " << inv.chiO << ", q = " << inv.q << "\n";
  }
  if (r.nef_big) out << "  K_X nef and big: " << (*r.nef_big ? "yes" : "NO") << "\n";
  if (r.canonical) {
    const auto& c = *r.canonical;
    out << "  J = {";
    for (std::size_t i = 0; i < c.J.size(); ++i) out << (i ? ", " : "") << "chi_" << c.J[i].to_string();
    out << "}\n";
    for (const auto& g : c.generators) {
      out << "    chi_" << g.chi.to_string() << ": |" << format_class(g.base_class) << "| (h0 = " << g.base_h0 << ") +";
      for (const auto& curve : g.branch_part) out << " " << curve.label;
      out << "\n";
    }
    out << "  fixed part: ";
    if (c.fixed_part.empty()) out << "none";
    for (std::size_t i = 0; i < c.fixed_part.size(); ++i) out << (i ? " + " : "") << c.fixed_part[i].label;
    out << "\n";
    if (c.M2) out << "  M^2 = " << *c.M2 << (c.bpf ? ", base point free" : ", base points possible") << "\n";
    out << "  canonical degree: " << (c.degree ? std::to_string(*c.degree) : "undetermined") << "\n";
    if (!c.note.empty()) out << "    (" << c.note << ")\n";
  }
  if (r.factors_through_quotient) {
    out << "  factors through the quotient: " << (*r.factors_through_quotient ? "yes" : "no") << "\n";
  }
  for (const auto& [cls, g] : r.pencils)
    out << "  pencil |" << format_class(cls) << "|: " << g.components << " component(s) of genus " << g.genus << "\n";
  for (const auto& c : r.checks) {
    out << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << ": expected " << c.expected << ", got " << c.actual
        << "\n";
  }
  out << (r.pass() ? "PASS" : "FAIL") << "\n";
}

nlohmann::json search_result_json(const SearchResult& r) {
  json results = json::array();
  for (const auto& h : r.hits) {
    json hit;
    hit["index"] = h.index;
    hit["canonical_form"] = h.canonical_form;
    hit["branch"] = branch_json(h.data);
    hit["L"] = line_bundles_json(h.data);
    hit["invariants"] = invariants_json(h.invariants);
    hit["degree"] = optional_int(h.canonical.degree);
    hit["fixed_part"] = labels(h.canonical.fixed_part);
    hit["quotient_candidate"] = h.quotient_candidate;
    results.push_back(hit);
  }
  const SearchStats& s = r.stats;
  return {{"results", results},
          {"stats",
           {{"candidates", s.candidates},
            {"parity_ok", s.parity_ok},
            {"valid", s.valid},
            {"smooth", s.smooth},
            {"nef_big", s.nef_big},
            {"matched", s.matched},
            {"emitted", s.emitted},
            {"oracle_checks", s.oracle_checks}}}};
}

void print_search_result(std::ostream& out, const SearchResult& r) {
  std::size_t n = 0;
  for (const auto& h : r.hits) {
    const auto& inv = h.invariants;
    out << "#" << ++n << " (assignment " << h.index << "): p_g = " << inv.pg << ", q = " << inv.q
        << ", K_X^2 = " << inv.KX2 << ", d = " << (h.canonical.degree ? std::to_string(*h.canonical.degree) : "?")
        << (h.quotient_candidate ? ", factors through a Z_2 quotient" : "") << "\n";
    for (const auto& sigma : all_elements(kGroupRank)) {
      if (sigma.is_identity() || h.data.D(sigma).empty()) continue;
      out << "  D_" << sigma.to_string() << " =";
      for (const auto& c : h.data.D(sigma)) out << " " << c.label;
      out << "\n";
    }
    out << "  form " << h.canonical_form << "\n";
  }
  const SearchStats& s = r.stats;
  out << s.candidates << " assignments, " << s.parity_ok << " pass parity, " << s.valid << " valid, " << s.smooth
      << " smooth, " << s.nef_big << " nef and big, " << s.matched << " match, " << s.emitted << " emitted\n";
}

}  // namespace abcover
