// Prints one PASS/FAIL line per acceptance criterion; exits non-zero if any
// criterion fails.
#include <algorithm>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abcover/canonical.hpp"
#include "abcover/catalog.hpp"
#include "abcover/cli.hpp"
#include "abcover/document.hpp"
#include "abcover/search.hpp"

using namespace abcover;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> check;
};

// (d, q, pg, K^2, fixed part nonempty) per entry.
struct TableRow {
  int d, q, pg, KX2;
  bool fixed;
};

const std::map<std::string, TableRow> kTable{
    {"d10q0", {10, 0, 3, 10, false}}, {"d10q1", {10, 1, 3, 10, false}}, {"d10q2", {10, 2, 3, 12, true}},
    {"d12q1", {12, 1, 3, 12, false}}, {"d12q2", {12, 2, 3, 12, false}}, {"d14q0", {14, 0, 3, 14, false}},
    {"d14q1", {14, 1, 3, 14, false}},
};

// Right-hand sides of 2L_chi, in the order chi = 100, 010, 001, 110, 101, 011, 111.
const std::vector<std::string> kCharacterOrder{"100", "010", "001", "110", "101", "011", "111"};
const std::map<std::string, std::vector<std::string>> kPrintedSums{
    {"d14q0", {"2f1+2f2+2l", "2f1+2f2+2l", "2f2+2l", "2f1+2f2+2l", "2f2+2l", "4f1+2l", "2f1+2f2"}},
    {"d10q0",
     {"2f1+2f2+2f3-2e4", "2f1+2f2+2f3-2e4", "2f2+2f3-2e4", "2f1+2f2+2f3-2e4", "2f2+2f3", "4f1+2f3-2e4",
      "2f1+2f2-2e4"}},
    {"d14q1", {"2f1+2f2+2l", "2f1+2f2+2l", "4f2", "2f1+2f2+2l", "4l", "4f1+2f2", "2f1+2l"}},
    {"d12q1", {"2f1+2f2+2f3", "2f1+2f2+2f3", "4f2", "2f1+2f2+2f3", "2l+2f3", "4f1+2f2-2e3", "2f1+2f3"}},
    {"d12q2", {"2f1+2f2+2f3", "2f1+2f2+2f3", "4f2", "2f1+2f2+2f3", "4f3", "4f1+2f2-2e3", "2f1+2l"}},
    {"d10q1",
     {"2f1+2f2+2f3-2e4", "2f1+2f2+2f3-2e4", "4f2", "2f1+2f2+2f3-2e4", "2f3+2f4", "4f1+2f2-2e3-2e4",
      "2f1+2f3-2e4"}},
    {"d10q2",
     {"2f1+2f2+2f3-2e4", "2f1+2f2+2f3-2e4", "4f2", "2f1+2f2+2f3-2e4", "4f3", "4f1+2f2-2e3", "2f1+2f4"}},
};

const std::map<std::string, std::string> kHalfTwoKX{
    {"d14q0", "f1+f2+l"},   {"d10q0", "f1+f2+h34"}, {"d10q1", "f1+f2+h34"}, {"d12q1", "f1+f2+f3"},
    {"d12q2", "f1+f2+f3"},  {"d10q2", "f1+f2+f3"},  {"d14q1", "f1+f2+l"},
};

struct PencilRow {
  std::string entry;
  int fibre;
  int components;
  int genus;
};

const std::vector<PencilRow> kPencils{
    {"d14q0", 1, 1, 5}, {"d14q0", 2, 1, 5}, {"d10q0", 1, 1, 5}, {"d10q0", 2, 1, 5}, {"d10q0", 3, 1, 5},
    {"d10q0", 4, 1, 5}, {"d14q1", 1, 1, 5}, {"d14q1", 2, 2, 3}, {"d12q1", 1, 1, 5}, {"d12q1", 3, 1, 5},
    {"d12q1", 2, 2, 3}, {"d10q1", 1, 1, 5}, {"d10q1", 3, 1, 5}, {"d10q1", 4, 1, 5}, {"d10q1", 2, 2, 3},
};

const Document& entry(const std::string& name) {
  static std::map<std::string, Document> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, load_entry(name).doc).first;
  return it->second;
}

template <typename T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

bool degree_table(std::string& detail) {
  std::ostringstream sink, err;
  if (cli::cmd_reproduce(false, sink, err) != cli::kOk) {
    detail = "reproduce exited non-zero: " + err.str();
    return false;
  }
  for (const auto& [name, row] : kTable) {
    const Document& doc = entry(name);
    const VerifyReport r = reproduce({name, doc});
    if (!r.pass() || !r.invariants || !r.canonical || !r.canonical->degree) {
      detail = name + " does not reproduce";
      return false;
    }
    const auto& inv = *r.invariants;
    const bool fixed = !r.canonical->fixed_part.empty();
    if (*r.canonical->degree != row.d || inv.q != row.q || inv.pg != row.pg || inv.KX2 != row.KX2 ||
        fixed != row.fixed) {
      detail = name + ": got (d,q,pg,K2,fixed) = (" + str(*r.canonical->degree) + "," + str(inv.q) + "," +
               str(inv.pg) + "," + str(inv.KX2) + "," + str(fixed) + ")";
      return false;
    }
  }
  detail = "7 entries, table rows exact";
  return true;
}

bool linear_equivalence_tables(std::string& detail) {
  int relations = 0;
  for (const auto& [name, sums] : kPrintedSums) {
    const BuildingData& data = entry(name).data;
    if (!validate(data).ok()) {
      detail = name + " does not validate";
      return false;
    }
    for (std::size_t i = 0; i < kCharacterOrder.size(); ++i) {
      const Character chi = Character::parse(kCharacterOrder[i]);
      const DivClass printed = parse_class(data.ctx.k(), sums[i]);
      const DivClass sum = relation_sum(data, chi);
      if (sum != printed || 2 * data.line_bundle(chi) != printed) {
        detail = name + " chi_" + kCharacterOrder[i] + ": sum " + format_class(sum) + ", printed " +
                 format_class(printed);
        return false;
      }
      ++relations;
    }
  }
  detail = str(relations) + " relations match the printed sums";
  return true;
}

bool invariant_formulas(std::string& detail) {
  const std::vector<int> expected{4, 3, 2, 3, 2, 4, 3};
  std::vector<int> got;
  for (const auto& name : catalog_names()) {
    const CoverInvariants inv = invariants(entry(name).data);
    if (inv.q != 1 + inv.pg - inv.chiO) {
      detail = name + ": q != 1 + pg - chi";
      return false;
    }
    got.push_back(inv.chiO);
  }
  std::string seq;
  for (int c : got) seq += (seq.empty() ? "" : ",") + str(c);
  detail = "chi(O) = (" + seq + ")";
  return got == expected;
}

bool two_kx_classes(std::string& detail) {
  for (const auto& [name, text] : kHalfTwoKX) {
    const BuildingData& data = entry(name).data;
    const DivClass expected = parse_class(data.ctx.k(), text);
    const DivClass got = invariants(data).half_2KX;
    if (got != expected) {
      detail = name + ": " + format_class(got) + " != " + text;
      return false;
    }
  }
  detail = "7 lattice identities";
  return true;
}

bool quotient_factorization(std::string& detail) {
  const Subgroup gamma = Subgroup::generated(3, {GroupElement::parse("001")});
  std::set<std::string> p;
  for (const auto& chi : perp(gamma)) p.insert(chi.to_string());
  if (p != std::set<std::string>{"000", "100", "010", "110"}) {
    detail = "perp of <001> is wrong";
    return false;
  }
  for (const auto& name : catalog_names()) {
    if (!factors_through_quotient(entry(name).data, gamma)) {
      detail = name + " does not factor through X/<001>";
      return false;
    }
  }
  detail = "all 7 entries factor through X/<001>";
  return true;
}

bool pencil_genera(std::string& detail) {
  for (const auto& row : kPencils) {
    const BuildingData& data = entry(row.entry).data;
    const FiberGenus fg = fiber_genus(data, DivClass::fiber(data.ctx.k(), row.fibre));
    if (fg.components != row.components || fg.genus != row.genus) {
      detail = row.entry + " f" + str(row.fibre) + ": (" + str(fg.components) + "," + str(fg.genus) + ")";
      return false;
    }
  }
  detail = str(kPencils.size()) + " pencils";
  return true;
}

bool blowup_pipeline(std::string& detail) {
  const std::vector<std::pair<std::string, std::string>> runs{{"d14q0", "d14q0_to_d10q0"},
                                                              {"d14q1", "d14q1_to_d12q2"}};
  for (const auto& [source, plan] : runs) {
    std::ostringstream out, err;
    const int code =
        cli::cmd_blowup("catalog/" + source + ".toml", "catalog/plans/" + plan + ".toml", std::nullopt, out, err);
    if (code != cli::kOk) {
      detail = plan + " exited " + str(code) + ": " + err.str();
      return false;
    }
    const Document produced = parse_document(out.str(), plan);
    const std::string target = load_plan(plan).result;
    if (canonical_form(produced.data) != canonical_form(entry(target).data)) {
      detail = plan + " does not reproduce " + target;
      return false;
    }
  }
  detail = "d14q0 -> d10q0, d14q1 -> d12q2";
  return true;
}

bool oracle_equivalence(std::string& detail) {
  std::mt19937 rng(0x5eed);
  std::uniform_int_distribution<int> degree(0, 8);
  std::uniform_int_distribution<int> mult(-4, 4);
  std::vector<std::pair<int, DivClass>> classes;
  classes.emplace_back(2, 2 * DivClass::line_through(2, 1, 2));
  std::set<std::pair<int, DivClass>> seen(classes.begin(), classes.end());
  for (int k = 2; k <= 4; ++k) {
    int added = 0;
    while (added < 180) {
      std::vector<int> m(static_cast<std::size_t>(k));
      for (auto& x : m) x = mult(rng);
      const DivClass c(k, degree(rng), std::span<const int>(m));
      if (seen.insert({k, c}).second) {
        classes.emplace_back(k, c);
        ++added;
      }
    }
  }
  const std::vector<std::uint64_t> seeds{1, 2};
  int superabundant = -1;
  for (const auto& [k, c] : classes) {
    const SurfaceContext ctx(k);
    const int fast = h0(ctx, c);
    for (auto seed : seeds) {
      const int slow = h0_oracle(ctx, c, seed);
      if (fast != slow) {
        detail = tuple_string(c) + " on Y_" + str(k) + ": h0 " + str(fast) + ", oracle " + str(slow) + " (seed " +
                 str(seed) + ")";
        return false;
      }
    }
    if (c == 2 * DivClass::line_through(2, 1, 2)) superabundant = fast;
  }
  detail = str(classes.size()) + " classes x 2 seeds, h0(2h12) = " + str(superabundant);
  return classes.size() >= 500 && superabundant == 1;
}

bool symmetry_suite(std::string& detail) {
  const auto autos = automorphisms(3);
  int checked = 0;
  for (const auto& name : catalog_names()) {
    const Document& doc = entry(name);
    const CoverInvariants inv = invariants(doc.data);
    const auto degree = canonical_degree(doc.data, doc.incidences).degree;
    for (const auto& phi : autos) {
      const BuildingData moved = relabel(doc.data, phi);
      if (!validate(moved).ok() || invariants(moved) != inv ||
          canonical_degree(moved, doc.incidences).degree != degree) {
        detail = name + " changes under a relabeling";
        return false;
      }
      ++checked;
    }
  }
  detail = str(checked) + " relabelings";
  return checked == 7 * 168;
}

bool search_smoke(std::string& detail) {
  const CurvePool pool = parse_pool(cli::load_text("catalog/pools/y2_d14.toml"), "y2_d14");
  SearchOptions options;
  options.targets = parse_targets("pg=3,q=0,d=14");
  const SearchResult r = enumerate(pool.ctx, pool.curves, options);
  const std::string target = canonical_form(entry("d14q0").data);
  const bool found =
      std::any_of(r.hits.begin(), r.hits.end(), [&](const SearchHit& h) { return h.canonical_form == target; });
  options.targets = parse_targets("pg=3,q=3");
  const SearchResult none = enumerate(pool.ctx, pool.curves, options);
  detail = str(r.hits.size()) + " hit(s) for (3,0,14), " + str(none.hits.size()) + " for q = 3";
  return found && none.hits.empty();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "table reproduction", degree_table},
      {2, "linear-equivalence tables", linear_equivalence_tables},
      {3, "invariant formulas", invariant_formulas},
      {4, "2K_X classes", two_kx_classes},
      {5, "quotient factorization", quotient_factorization},
      {6, "pencil genera", pencil_genera},
      {7, "blow-up pipeline", blowup_pipeline},
      {8, "h0 oracle equivalence", oracle_equivalence},
      {9, "symmetry suite", symmetry_suite},
      {10, "search smoke test", search_smoke},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(), detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
