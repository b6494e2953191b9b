#include "abcover/document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "abcover/toml.hpp"

namespace abcover {

namespace {

using json = nlohmann::ordered_json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& where, const std::string& what) const {
    throw parse_error(source_ + ": " + where, what);
  }

  void allow_keys(const json& table, const std::string& where, std::initializer_list<std::string_view> keys) const {
    if (!table.is_object()) fail(where, "expected a table");
    for (const auto& [key, value] : table.items()) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail(where, "unknown key '" + key + "'");
    }
  }

  int integer(const json& v, const std::string& where) const {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < -1000000 || x > 1000000) fail(where, "integer out of range");
    return static_cast<int>(x);
  }

  std::string string(const json& v, const std::string& where) const {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
  }

  bool boolean(const json& v, const std::string& where) const {
    if (!v.is_boolean()) fail(where, "expected a boolean");
    return v.get<bool>();
  }

  DivClass div_class(int k, const json& v, const std::string& where) const {
    if (v.is_string()) {
      try {
        return parse_class(k, v.get<std::string>());
      } catch (const parse_error& e) {
        fail(where, e.what());
      }
    }
    if (v.is_array()) {
      if (v.empty() || static_cast<int>(v.size()) > k + 1) {
        fail(where, "class arrays are [d, m1, ..., mk] with at most " + std::to_string(k + 1) + " entries");
      }
      std::vector<int> m;
      for (std::size_t i = 1; i < v.size(); ++i) m.push_back(integer(v[i], where));
      return DivClass(k, integer(v[0], where), m);
    }
    fail(where, "expected a class expression or [d, m1, ..., mk]");
  }

  GroupElement slot(const std::string& bits, const std::string& where) const {
    if (bits.size() != static_cast<std::size_t>(kGroupRank)) fail(where, "expected a 3-character bit string");
    try {
      return GroupElement::parse(bits);
    } catch (const parse_error& e) {
      fail(where, e.what());
    }
  }

  Character character(const std::string& bits, const std::string& where) const {
    if (bits.size() != static_cast<std::size_t>(kGroupRank)) fail(where, "expected a 3-character bit string");
    try {
      return Character::parse(bits);
    } catch (const parse_error& e) {
      fail(where, e.what());
    }
  }

  SurfaceContext surface(const json& root) const {
    if (!root.contains("surface")) fail("[surface]", "missing table");
    const json& s = root["surface"];
    allow_keys(s, "[surface]", {"k", "points"});
    if (!s.contains("k")) fail("[surface]", "missing key 'k'");
    const int k = integer(s["k"], "[surface] k");
    if (k < 0 || k > DivClass::kMaxPoints) fail("[surface] k", "k must lie in 0..4");
    if (s.contains("points")) {
      if (!s["points"].is_array()) fail("[surface] points", "expected an array of labels");
      for (const auto& p : s["points"]) string(p, "[surface] points");
    }
    return SurfaceContext(k);
  }

  std::vector<NamedCurve> curves(const SurfaceContext& ctx, const json& root) const {
    std::vector<NamedCurve> out;
    if (!root.contains("curves")) return out;
    const json& table = root["curves"];
    if (!table.is_object()) fail("[curves]", "expected a table");
    for (const auto& [label, value] : table.items()) {
      const std::string where = "[curves] " + label;
      NamedCurve c{label, DivClass::zero(ctx.k()), std::nullopt};
      if (value.is_object()) {
        allow_keys(value, where, {"class", "member"});
        if (!value.contains("class")) fail(where, "missing key 'class'");
        c.cls = div_class(ctx.k(), value["class"], where + ".class");
        if (value.contains("member")) c.member = integer(value["member"], where + ".member");
      } else {
        c.cls = div_class(ctx.k(), value, where);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::vector<std::pair<std::string, int>> multiplicities(const json& v, const std::string& where) const {
    if (!v.is_object()) fail(where, "expected an inline table of curve = multiplicity");
    std::vector<std::pair<std::string, int>> out;
    for (const auto& [label, m] : v.items()) out.emplace_back(label, integer(m, where + "." + label));
    return out;
  }

 private:
  std::string source_;
};

std::string class_text(const SurfaceContext& ctx, const DivClass& c) {
  if (const auto* entry = ctx.find_curated(c)) return entry->name;
  return format_class(c);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string key_text(const std::string& key) {
  const bool bare = !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
  return bare ? key : quoted(key);
}

}  // namespace

bool Expectation::empty() const {
  return !d && !q && !pg && !KX2 && !chiO && !fixed_part_nonempty && !half_2KX && pencils.empty();
}

const NamedCurve* Document::find_curve(std::string_view label) const {
  for (const auto& c : curves)
    if (c.label == label) return &c;
  return nullptr;
}

Document parse_document(std::string_view text, const std::string& source) {
  const json root = parse_toml(text, source);
  const Reader r(source);
  r.allow_keys(root, "top level",
               {"name", "description", "surface", "curves", "branch", "L", "quotient", "expect", "points"});

  Document doc;
  if (!root.contains("name")) r.fail("top level", "missing key 'name'");
  doc.name = r.string(root["name"], "name");
  if (root.contains("description")) doc.description = r.string(root["description"], "description");

  const SurfaceContext ctx = r.surface(root);
  doc.curves = r.curves(ctx, root);
  doc.data = BuildingData(ctx);

  if (root.contains("branch")) {
    const json& branch = root["branch"];
    if (!branch.is_object()) r.fail("[branch]", "expected a table");
    for (const auto& [bits, labels] : branch.items()) {
      const std::string where = "[branch] \"" + bits + "\"";
      const GroupElement sigma = r.slot(bits, where);
      if (sigma.is_identity()) r.fail(where, "the identity has no branch divisor");
      if (!labels.is_array()) r.fail(where, "expected an array of curve labels");
      for (const auto& l : labels) {
        const std::string label = r.string(l, where);
        const NamedCurve* c = doc.find_curve(label);
        if (!c) r.fail(where, "unknown curve '" + label + "'");
        doc.data.D(sigma).push_back(*c);
      }
    }
  }

  if (root.contains("L")) {
    const json& table = root["L"];
    if (!table.is_object()) r.fail("[L]", "expected a table");
    std::set<std::uint8_t> seen;
    for (const auto& [bits, value] : table.items()) {
      const std::string where = "[L] \"" + bits + "\"";
      const Character chi = r.character(bits, where);
      if (chi.is_trivial()) r.fail(where, "L is only given for nontrivial characters");
      doc.data.line_bundle(chi) = r.div_class(ctx.k(), value, where);
      seen.insert(chi.mask());
    }
    if (seen.size() != static_cast<std::size_t>(kGroupOrder - 1)) {
      r.fail("[L]", "give all seven line bundles or omit the table to solve them");
    }
    doc.L_declared = true;
  } else {
    std::vector<Character> failing;
    doc.data.L = solve_line_bundles(doc.data, &failing);
  }

  if (root.contains("quotient")) {
    const json& q = root["quotient"];
    r.allow_keys(q, "[quotient]", {"generators"});
    if (!q.contains("generators") || !q["generators"].is_array()) {
      r.fail("[quotient]", "expected generators = [\"001\", ...]");
    }
    std::vector<GroupElement> gens;
    for (const auto& g : q["generators"]) gens.push_back(r.slot(r.string(g, "[quotient] generators"), "[quotient] generators"));
    doc.quotient = Subgroup::generated(kGroupRank, gens);
  }

  if (root.contains("expect")) {
    const json& e = root["expect"];
    r.allow_keys(e, "[expect]", {"d", "q", "pg", "KX2", "chiO", "fixed_part_nonempty", "half_2KX", "pencils"});
    auto opt_int = [&](const char* key, std::optional<int>& out) {
      if (e.contains(key)) out = r.integer(e[key], std::string("[expect] ") + key);
    };
    opt_int("d", doc.expect.d);
    opt_int("q", doc.expect.q);
    opt_int("pg", doc.expect.pg);
    opt_int("KX2", doc.expect.KX2);
    opt_int("chiO", doc.expect.chiO);
    if (e.contains("fixed_part_nonempty"))
      doc.expect.fixed_part_nonempty = r.boolean(e["fixed_part_nonempty"], "[expect] fixed_part_nonempty");
    if (e.contains("half_2KX")) doc.expect.half_2KX = r.div_class(ctx.k(), e["half_2KX"], "[expect] half_2KX");
    if (e.contains("pencils")) {
      if (!e["pencils"].is_array()) r.fail("[expect] pencils", "expected [[expect.pencils]] entries");
      for (const auto& p : e["pencils"]) {
        const std::string where = "[[expect.pencils]]";
        r.allow_keys(p, where, {"class", "components", "genus"});
        if (!p.contains("class") || !p.contains("genus")) r.fail(where, "needs 'class' and 'genus'");
        PencilExpectation pe;
        pe.cls = r.div_class(ctx.k(), p["class"], where + ".class");
        pe.genus = r.integer(p["genus"], where + ".genus");
        if (p.contains("components")) pe.components = r.integer(p["components"], where + ".components");
        doc.expect.pencils.push_back(pe);
      }
    }
  }

  if (root.contains("points")) {
    if (!root["points"].is_array()) r.fail("[[points]]", "expected an array of tables");
    for (const auto& p : root["points"]) {
      const std::string where = "[[points]]";
      r.allow_keys(p, where, {"label", "curves"});
      if (!p.contains("label") || !p.contains("curves")) r.fail(where, "needs 'label' and 'curves'");
      DeclaredPoint dp{r.string(p["label"], where + ".label"), r.multiplicities(p["curves"], where + ".curves")};
      for (const auto& [label, m] : dp.multiplicities)
        if (!doc.find_curve(label)) r.fail(where + " " + dp.label, "unknown curve '" + label + "'");
      doc.incidences.points.push_back(std::move(dp));
    }
  }
  return doc;
}

std::string emit_document(const Document& doc) {
  const SurfaceContext& ctx = doc.data.ctx;
  std::ostringstream out;
  out << "name = " << quoted(doc.name) << "\n";
  if (!doc.description.empty()) out << "description = " << quoted(doc.description) << "\n";
  out << "\n[surface]\nk = " << ctx.k() << "\n";

  out << "\n[curves]\n";
  for (const auto& c : doc.curves) {
    out << key_text(c.label) << " = { class = " << quoted(class_text(ctx, c.cls));
    if (c.member) out << ", member = " << *c.member;
    out << " }\n";
  }

  out << "\n[branch]\n";
  for (const auto& sigma : all_elements(kGroupRank)) {
    if (sigma.is_identity() || doc.data.D(sigma).empty()) continue;
    out << quoted(sigma.to_string()) << " = [";
    const auto& curves = doc.data.D(sigma);
    for (std::size_t i = 0; i < curves.size(); ++i) out << (i ? ", " : "") << quoted(curves[i].label);
    out << "]\n";
  }

  if (doc.L_declared) {
    out << "\n[L]\n";
    for (const auto& chi : all_characters(kGroupRank)) {
      if (chi.is_trivial()) continue;
      out << quoted(chi.to_string()) << " = " << quoted(format_class(doc.data.line_bundle(chi))) << "\n";
    }
  }

  if (doc.quotient) {
    out << "\n[quotient]\ngenerators = [";
    const auto& gens = doc.quotient->generators();
    for (std::size_t i = 0; i < gens.size(); ++i) out << (i ? ", " : "") << quoted(gens[i].to_string());
    out << "]\n";
  }

  const Expectation& e = doc.expect;
  if (!e.empty()) {
    out << "\n[expect]\n";
    if (e.d) out << "d = " << *e.d << "\n";
    if (e.q) out << "q = " << *e.q << "\n";
    if (e.pg) out << "pg = " << *e.pg << "\n";
    if (e.KX2) out << "KX2 = " << *e.KX2 << "\n";
    if (e.chiO) out << "chiO = " << *e.chiO << "\n";
    if (e.fixed_part_nonempty) out << "fixed_part_nonempty = " << (*e.fixed_part_nonempty ? "true" : "false") << "\n";
    if (e.half_2KX) out << "half_2KX = " << quoted(format_class(*e.half_2KX)) << "\n";
    for (const auto& p : e.pencils) {
      out << "\n[[expect.pencils]]\nclass = " << quoted(class_text(ctx, p.cls)) << "\ncomponents = " << p.components
          << "\ngenus = " << p.genus << "\n";
    }
  }

  for (const auto& p : doc.incidences.points) {
    out << "\n[[points]]\nlabel = " << quoted(p.label) << "\ncurves = { ";
    for (std::size_t i = 0; i < p.multiplicities.size(); ++i)
      out << (i ? ", " : "") << key_text(p.multiplicities[i].first) << " = " << p.multiplicities[i].second;
    out << " }\n";
  }
  return out.str();
}

PlanDocument parse_plan(std::string_view text, const std::string& source) {
  const json root = parse_toml(text, source);
  const Reader r(source);
  r.allow_keys(root, "top level", {"name", "description", "result", "points"});
  PlanDocument plan;
  if (!root.contains("name")) r.fail("top level", "missing key 'name'");
  plan.name = r.string(root["name"], "name");
  if (root.contains("description")) plan.description = r.string(root["description"], "description");
  if (root.contains("result")) plan.result = r.string(root["result"], "result");

  std::vector<PlanPoint> points;
  if (root.contains("points")) {
    if (!root["points"].is_array()) r.fail("[[points]]", "expected an array of tables");
    for (const auto& p : root["points"]) {
      const std::string where = "[[points]]";
      r.allow_keys(p, where, {"label", "curves", "fix"});
      if (!p.contains("label") || !p.contains("curves")) r.fail(where, "needs 'label' and 'curves'");
      PlanPoint pp{r.string(p["label"], where + ".label"), r.multiplicities(p["curves"], where + ".curves"),
                   std::nullopt};
      if (p.contains("fix")) {
        const std::string fix = r.string(p["fix"], where + ".fix");
        if (fix != "none") {
          pp.fix = r.slot(fix, where + ".fix");
          if (pp.fix->is_identity()) r.fail(where + ".fix", "use \"none\" rather than \"000\"");
        }
      }
      points.push_back(std::move(pp));
    }
  }
  try {
    plan.plan = BlowupPlan(std::move(points));
  } catch (const std::invalid_argument& e) {
    r.fail("[[points]]", e.what());
  }
  return plan;
}

CurvePool parse_pool(std::string_view text, const std::string& source) {
  const json root = parse_toml(text, source);
  const Reader r(source);
  CurvePool pool{r.surface(root), {}};
  pool.curves = r.curves(pool.ctx, root);
  if (pool.curves.empty()) r.fail("[curves]", "the pool declares no curves");
  return pool;
}

Document document_from_data(std::string name, const BuildingData& data, std::optional<Subgroup> quotient) {
  Document doc;
  doc.name = std::move(name);
  doc.data = data;
  doc.L_declared = true;
  doc.quotient = std::move(quotient);
  for (const auto& sigma : all_elements(kGroupRank)) {
    if (sigma.is_identity()) continue;
    for (const auto& c : data.D(sigma)) doc.curves.push_back(c);
  }
  return doc;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace abcover
