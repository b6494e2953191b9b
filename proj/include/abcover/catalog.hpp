#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abcover/canonical.hpp"
#include "abcover/cover.hpp"
#include "abcover/document.hpp"

namespace abcover {

/// Contents of a file under catalog/, compiled into the library. Paths are
/// relative to catalog/, e.g. "d14q0.toml" or "plans/d14q0_to_d10q0.toml".
std::optional<std::string_view> embedded_file(std::string_view relpath);
std::vector<std::string> embedded_files();

/// Entry names in table order: d10q0, d10q1, d10q2, d12q1, d12q2, d14q0, d14q1.
const std::vector<std::string>& catalog_names();

struct CatalogEntry {
  std::string name;
  Document doc;
};

std::vector<CatalogEntry> load_catalog();
CatalogEntry load_entry(std::string_view name);
PlanDocument load_plan(std::string_view name);
std::vector<std::string> plan_names();

struct Check {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string actual;
};

/// Outcome of running a document through every stage.
struct VerifyReport {
  std::string name;
  ValidationReport validation;
  std::optional<SmoothnessReport> smoothness;
  std::optional<CoverInvariants> invariants;
  std::optional<bool> nef_big;
  std::optional<CanonicalReport> canonical;
  std::optional<bool> factors_through_quotient;
  std::vector<std::pair<DivClass, FiberGenus>> pencils;
  std::vector<Check> checks;

  /// Building data is valid and the branch locus is smooth.
  bool data_ok() const;
  bool pass() const;
};

/// validate -> smoothness -> invariants -> canonical degree -> quotient
/// factorization -> pencil genera -> comparison with [expect]. Stops after
/// the first failing stage. Throws unsupported_error for uncurated curves.
VerifyReport verify_document(const Document& doc);

/// verify_document plus the catalog-wide checks: factorization through
/// <001> and d(p_g - 2) <= K^2 <= 9 chi.
VerifyReport reproduce(const CatalogEntry& entry);

}  // namespace abcover
