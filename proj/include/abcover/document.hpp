#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abcover/chargroup.hpp"
#include "abcover/cover.hpp"
#include "abcover/picard.hpp"
#include "abcover/resolve.hpp"

namespace abcover {

struct PencilExpectation {
  DivClass cls;
  int components = 1;
  int genus = 0;
};

/// Optional `[expect]` block of a document.
struct Expectation {
  std::optional<int> d;
  std::optional<int> q;
  std::optional<int> pg;
  std::optional<int> KX2;
  std::optional<int> chiO;
  std::optional<bool> fixed_part_nonempty;
  std::optional<DivClass> half_2KX;
  std::vector<PencilExpectation> pencils;

  bool empty() const;
};

/// A building-data document:
///
///   name = "d14q0"
///   [surface]   k = 2
///   [curves]    f_11 = { class = "f1", member = 1 }  (or "2l-e1", or [2, 1, 0])
///   [branch]    "010" = ["f_11", "f_12"]
///   [L]         "100" = "f1+f2+l"      (all seven, or omitted and solved)
///   [quotient]  generators = ["001"]
///   [expect]    d = 14, q = 0, ..., [[expect.pencils]]
///   [[points]]  label = "P3", curves = { C_2 = 2, f_21 = 1 }
struct Document {
  std::string name;
  std::string description;
  std::vector<NamedCurve> curves;  // declaration order
  BuildingData data;
  bool L_declared = false;
  IncidenceSpec incidences;
  std::optional<Subgroup> quotient;
  Expectation expect;

  const NamedCurve* find_curve(std::string_view label) const;
};

Document parse_document(std::string_view text, const std::string& source = "<input>");
/// Canonical TOML text; parse_document(emit_document(d)) reproduces d.
std::string emit_document(const Document& doc);

struct PlanDocument {
  std::string name;
  std::string description;
  /// Name of the transformed document (defaults to "<input>+<plan>").
  std::string result;
  BlowupPlan plan;
};

/// `[[points]]` entries with `label`, `curves` and optional `fix`
/// ("none" or a slot such as "111").
PlanDocument parse_plan(std::string_view text, const std::string& source = "<input>");

/// Context and curve list of a document (branch and L may be absent).
struct CurvePool {
  SurfaceContext ctx;
  std::vector<NamedCurve> curves;
};

CurvePool parse_pool(std::string_view text, const std::string& source = "<input>");

/// Document for transformed data; keeps name/quotient, drops expectations.
Document document_from_data(std::string name, const BuildingData& data, std::optional<Subgroup> quotient);

std::string read_text_file(const std::string& path);

}  // namespace abcover
