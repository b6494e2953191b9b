#include "abcover/catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace abcover {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kCatalogFiles[];
extern const std::size_t kCatalogFileCount;
}  // namespace detail

namespace {

std::string show(bool b) { return b ? "true" : "false"; }

void add_check(VerifyReport& r, std::string name, bool pass, std::string expected, std::string actual) {
  r.checks.push_back({std::move(name), pass, std::move(expected), std::move(actual)});
}

void compare(VerifyReport& r, const std::string& name, const std::optional<int>& expected,
             const std::optional<int>& actual) {
  if (!expected) return;
  add_check(r, name, actual && *actual == *expected, std::to_string(*expected),
            actual ? std::to_string(*actual) : "undetermined");
}

std::string genus_text(int components, int genus) {
  return "(" + std::to_string(components) + ", " + std::to_string(genus) + ")";
}

}  // namespace

std::optional<std::string_view> embedded_file(std::string_view relpath) {
  for (std::size_t i = 0; i < detail::kCatalogFileCount; ++i)
    if (detail::kCatalogFiles[i].first == relpath) return detail::kCatalogFiles[i].second;
  return std::nullopt;
}

std::vector<std::string> embedded_files() {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < detail::kCatalogFileCount; ++i) out.emplace_back(detail::kCatalogFiles[i].first);
  return out;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names{"d10q0", "d10q1", "d10q2", "d12q1", "d12q2", "d14q0", "d14q1"};
  return names;
}

CatalogEntry load_entry(std::string_view name) {
  const std::string path = std::string(name) + ".toml";
  const auto text = embedded_file(path);
  if (!text) throw std::invalid_argument("no catalog entry named '" + std::string(name) + "'");
  return {std::string(name), parse_document(*text, "catalog/" + path)};
}

std::vector<CatalogEntry> load_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& name : catalog_names()) out.push_back(load_entry(name));
  return out;
}

PlanDocument load_plan(std::string_view name) {
  const std::string path = "plans/" + std::string(name) + ".toml";
  const auto text = embedded_file(path);
  if (!text) throw std::invalid_argument("no plan named '" + std::string(name) + "'");
  return parse_plan(*text, "catalog/" + path);
}

std::vector<std::string> plan_names() {
  std::vector<std::string> out;
  for (const auto& f : embedded_files()) {
    if (f.rfind("plans/", 0) != 0) continue;
    out.push_back(f.substr(6, f.size() - 6 - 5));
  }
  return out;
}

bool VerifyReport::data_ok() const { return validation.ok() && smoothness && smoothness->smooth; }

bool VerifyReport::pass() const {
  return data_ok() && nef_big.value_or(false) &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

VerifyReport verify_document(const Document& doc) {
  VerifyReport r;
  r.name = doc.name;
  const BuildingData& data = doc.data;
  r.validation = validate(data);
  if (!r.validation.ok()) return r;
  r.smoothness = smoothness_check(data, doc.incidences);
  if (!r.smoothness->smooth) return r;

  r.invariants = invariants(data);
  const CoverInvariants& inv = *r.invariants;
  r.nef_big = nef_big_check(data.ctx, inv.half_2KX);
  r.canonical = canonical_degree(data, doc.incidences);
  if (doc.quotient) r.factors_through_quotient = factors_through_quotient(data, *doc.quotient);

  const Expectation& e = doc.expect;
  compare(r, "d", e.d, r.canonical->degree);
  compare(r, "q", e.q, inv.q);
  compare(r, "pg", e.pg, inv.pg);
  compare(r, "KX2", e.KX2, inv.KX2);
  compare(r, "chiO", e.chiO, inv.chiO);
  if (e.fixed_part_nonempty) {
    const bool actual = !r.canonical->fixed_part.empty();
    add_check(r, "fixed_part_nonempty", actual == *e.fixed_part_nonempty, show(*e.fixed_part_nonempty), show(actual));
  }
  if (e.half_2KX) {
    add_check(r, "half_2KX", inv.half_2KX == *e.half_2KX, format_class(*e.half_2KX), format_class(inv.half_2KX));
  }
  for (const auto& p : e.pencils) {
    const FiberGenus g = fiber_genus(data, p.cls);
    r.pencils.emplace_back(p.cls, g);
    add_check(r, "pencil " + format_class(p.cls), g.components == p.components && g.genus == p.genus,
              genus_text(p.components, p.genus), genus_text(g.components, g.genus));
  }
  if (r.factors_through_quotient) {
    add_check(r, "factors through quotient", *r.factors_through_quotient, "true", show(*r.factors_through_quotient));
  }
  return r;
}

VerifyReport reproduce(const CatalogEntry& entry) {
  Document doc = entry.doc;
  if (!doc.quotient) doc.quotient = Subgroup::generated(kGroupRank, {GroupElement::parse("001")});
  VerifyReport r = verify_document(doc);
  if (!r.data_ok() || !r.invariants || !r.canonical) return r;
  const CoverInvariants& inv = *r.invariants;
  if (r.canonical->degree) {
    const int lower = *r.canonical->degree * (inv.pg - 2);
    add_check(r, "BMY chain", lower <= inv.KX2 && inv.KX2 <= 9 * inv.chiO,
              "d(pg-2) <= KX2 <= 9 chiO",
              std::to_string(lower) + " <= " + std::to_string(inv.KX2) + " <= " + std::to_string(9 * inv.chiO));
  } else {
    add_check(r, "BMY chain", false, "determined degree", "undetermined");
  }
  return r;
}

}  // namespace abcover
