#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

#include "abcover/catalog.hpp"
#include "abcover/search.hpp"

namespace abcover {

/// Keys sorted, two-space indent, integers and strings only; re-parsing and
/// re-dumping reproduces the text byte for byte.
std::string dump_json(const nlohmann::json& j);

nlohmann::json verify_report_json(const VerifyReport& r);
void print_verify_report(std::ostream& out, const VerifyReport& r);

nlohmann::json search_result_json(const SearchResult& r);
void print_search_result(std::ostream& out, const SearchResult& r);

}  // namespace abcover
