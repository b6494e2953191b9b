#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "abcover/search.hpp"

namespace abcover::cli {

enum ExitCode : int { kOk = 0, kMathFailure = 1, kParseError = 2, kUnsupported = 3 };

/// Reads a document from disk; paths under "catalog/" fall back to the
/// copies compiled into the library.
std::string load_text(const std::string& path);

int cmd_verify(const std::string& path, bool json, std::ostream& out, std::ostream& err);
int cmd_blowup(const std::string& document, const std::string& plan, const std::optional<std::string>& output,
               std::ostream& out, std::ostream& err);

struct SearchCommand {
  std::string pool;
  std::string targets;
  SearchOptions options;
  bool json = false;
  bool serial = false;
  std::optional<std::string> output;
};

int cmd_search(const SearchCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_reproduce(bool json, std::ostream& out, std::ostream& err);

/// Full command line (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace abcover::cli
