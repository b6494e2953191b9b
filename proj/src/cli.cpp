#include "abcover/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"

#include "abcover/catalog.hpp"
#include "abcover/document.hpp"
#include "abcover/report.hpp"
#include "abcover/resolve.hpp"

namespace abcover::cli {

namespace {

// Runs a command body and maps library errors onto exit codes.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const parity_failure& e) {
    err << "parity failure: " << e.what() << "\n";
    return kMathFailure;
  } catch (const unsupported_error& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kParseError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kMathFailure;
  }
}

void write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + *path);
  f << text;
}

std::string fixes_text(const std::vector<std::optional<GroupElement>>& fixes, const BlowupPlan& plan, int k) {
  std::string out;
  for (std::size_t j = 0; j < fixes.size(); ++j) {
    if (j) out += ", ";
    out += plan.points()[j].label + ": e_" + std::to_string(k + static_cast<int>(j) + 1) + " -> ";
    out += fixes[j] ? "D_" + fixes[j]->to_string() : "none";
  }
  return out;
}

}  // namespace

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  const std::string prefix = "catalog/";
  if (path.rfind(prefix, 0) == 0) {
    if (auto text = embedded_file(path.substr(prefix.size()))) return std::string(*text);
  }
  throw parse_error(path, "cannot open file");
}

int cmd_verify(const std::string& path, bool json, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = parse_document(load_text(path), path);
    const VerifyReport r = verify_document(doc);
    if (json) {
      out << dump_json(verify_report_json(r));
    } else {
      print_verify_report(out, r);
    }
    return r.pass() ? kOk : kMathFailure;
  });
}

int cmd_blowup(const std::string& document, const std::string& plan_path, const std::optional<std::string>& output,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Document doc = parse_document(load_text(document), document);
    const PlanDocument plan = parse_plan(load_text(plan_path), plan_path);
    const BuildingData& data = doc.data;
    for (const auto& p : plan.plan.points()) {
      for (const auto& [curve, m] : p.multiplicities)
        if (!data.slot_of(curve)) throw parse_error(plan_path, "point " + p.label + ": " + curve + " is not a branch curve");
      err << p.label << ": " << to_string(classify_singularity(data, p)) << "\n";
    }
    blow_up_surface(data.ctx, plan.plan);

    BuildingData result;
    try {
      result = transform_building_data(data, plan.plan);
    } catch (const parity_failure& e) {
      err << "parity failure: " << e.what() << "\n";
      const auto viable = search_parity_fix(data, plan.plan);
      if (viable.empty()) {
        err << "no assignment of the new exceptional curves repairs the parity\n";
      } else {
        err << "viable fixes:\n";
        for (const auto& fixes : viable) err << "  " << fixes_text(fixes, plan.plan, data.ctx.k()) << "\n";
      }
      return static_cast<int>(kMathFailure);
    }

    const std::string name = plan.result.empty() ? doc.name + "+" + plan.name : plan.result;
    const Document transformed = document_from_data(name, result, doc.quotient);
    write_output(output, emit_document(transformed), out);
    return static_cast<int>(kOk);
  });
}

int cmd_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CurvePool pool = parse_pool(load_text(cmd.pool), cmd.pool);
    SearchOptions options = cmd.options;
    options.targets = parse_targets(cmd.targets);
    const SearchResult r =
        cmd.serial ? enumerate_serial(pool.ctx, pool.curves, options) : enumerate(pool.ctx, pool.curves, options);
    std::ostringstream text;
    if (cmd.json) {
      text << dump_json(search_result_json(r));
    } else {
      print_search_result(text, r);
    }
    write_output(cmd.output, text.str(), out);
    return static_cast<int>(kOk);
  });
}

int cmd_reproduce(bool json, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    bool all = true;
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& entry : load_catalog()) {
      const VerifyReport r = reproduce(entry);
      all = all && r.pass();
      if (json) {
        reports.push_back(verify_report_json(r));
        continue;
      }
      const auto& inv = r.invariants;
      out << (r.pass() ? "PASS " : "FAIL ") << entry.name;
      if (inv && r.canonical) {
        out << "  d=" << (r.canonical->degree ? std::to_string(*r.canonical->degree) : "?") << " q=" << inv->q
            << " pg=" << inv->pg << " K^2=" << inv->KX2 << " chi=" << inv->chiO
            << " fixed=" << (r.canonical->fixed_part.empty() ? "no" : "yes");
      }
      out << "\n";
      for (const auto& c : r.checks)
        if (!c.pass) out << "    " << c.name << ": expected " << c.expected << ", got " << c.actual << "\n";
    }
    if (json) out << dump_json(reports);
    return all ? kOk : kMathFailure;
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Z_2^3-covers of blown-up planes: building data, invariants and canonical maps", "abcover"};
  app.require_subcommand(1);

  std::string verify_file;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "validate a document and report invariants");
  verify->add_flag("--json", verify_json, "emit a JSON report");
  verify->add_option("file", verify_file, "building-data document")->required();

  std::string blowup_file;
  std::string blowup_plan;
  std::optional<std::string> blowup_out;
  auto* blowup = app.add_subcommand("blowup", "impose singular points, blow up and repair parity");
  blowup->add_option("file", blowup_file, "building-data document")->required();
  blowup->add_option("plan", blowup_plan, "blow-up plan")->required();
  blowup->add_option("-o,--output", blowup_out, "write the transformed document here");

  SearchCommand search_cmd;
  std::optional<std::size_t> limit;
  auto* search = app.add_subcommand("search", "enumerate building data over a curve pool");
  search->add_option("--pool", search_cmd.pool, "document whose [curves] form the pool")->required();
  search->add_option("--targets", search_cmd.targets, "comma-separated targets, e.g. pg=3,q=0,d=14");
  search->add_option("--max-per-slot", search_cmd.options.max_per_slot, "curves per branch divisor (1..3)")
      ->capture_default_str();
  search->add_option("--limit", limit, "emit at most this many candidates");
  search->add_option("--seed", search_cmd.options.seed, "cross-check h0 with the oracle using this seed");
  search->add_option("--max-candidates", search_cmd.options.max_candidates, "refuse larger search spaces")
      ->capture_default_str();
  search->add_flag("--json", search_cmd.json, "emit JSON");
  search->add_flag("--serial", search_cmd.serial, "single-threaded enumeration");
  search->add_option("-o,--output", search_cmd.output, "write results here");

  bool reproduce_json = false;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "check every catalog entry against its expectations");
  reproduce_cmd->add_flag("--json", reproduce_json, "emit JSON reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParseError;
  }

  if (verify->parsed()) return cmd_verify(verify_file, verify_json, out, err);
  if (blowup->parsed()) return cmd_blowup(blowup_file, blowup_plan, blowup_out, out, err);
  if (search->parsed()) {
    search_cmd.options.limit = limit;
    return cmd_search(search_cmd, out, err);
  }
  if (reproduce_cmd->parsed()) return cmd_reproduce(reproduce_json, out, err);
  return kParseError;
}

}  // namespace abcover::cli
