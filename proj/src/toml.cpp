#include "abcover/toml.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <set>
#include <vector>

#include "abcover/errors.hpp"

namespace abcover {

namespace {

using json = nlohmann::ordered_json;

class TomlParser {
 public:
  TomlParser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  json parse() {
    json root = json::object();
    json* current = &root;
    while (true) {
      skip_blank_lines();
      if (at_end()) break;
      if (peek() == '[') {
        current = parse_header(root);
      } else {
        parse_key_value(*current);
      }
      end_of_line();
    }
    return root;
  }

 private:
  std::string_view text_;
  std::string source_;
  std::size_t pos_ = 0;
  std::string current_path_;
  int line_ = 1;
  int col_ = 1;
  // Paths of tables opened by a [header] and of values written inline;
  // neither may be extended later.
  std::set<std::string> defined_;
  std::set<std::string> inline_;

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(source_ + ":" + std::to_string(line_) + ":" + std::to_string(col_), what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  char get() {
    if (at_end()) fail("unexpected end of input");
    const char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }

  void skip_spaces() {
    while (peek() == ' ' || peek() == '\t') get();
  }

  void skip_comment() {
    if (peek() == '#')
      while (!at_end() && peek() != '\n') get();
  }

  void skip_blank_lines() {
    while (!at_end()) {
      skip_spaces();
      skip_comment();
      if (peek() == '\r') get();
      if (peek() == '\n') {
        get();
      } else {
        break;
      }
    }
  }

  // Whitespace, newlines and comments inside arrays.
  void skip_all() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (peek() == '\r') get();
    if (at_end()) return;
    if (peek() != '\n') fail(std::string("unexpected '") + peek() + "' after value");
    get();
  }

  static bool bare_key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string parse_simple_key() {
    if (peek() == '"') return parse_basic_string();
    if (peek() == '\'') return parse_literal_string();
    std::string key;
    while (bare_key_char(peek())) key += get();
    if (key.empty()) fail("expected a key");
    return key;
  }

  std::vector<std::string> parse_dotted_key() {
    std::vector<std::string> parts;
    while (true) {
      skip_spaces();
      parts.push_back(parse_simple_key());
      skip_spaces();
      if (peek() != '.') break;
      get();
    }
    return parts;
  }

  static std::string join(const std::string& path, const std::string& key) { return path + '\x1f' + key; }

  json* descend(json& table, const std::string& key, bool via_header, std::string& path) {
    path = join(path, key);
    if (!table.contains(key)) {
      table[key] = json::object();
      return &table[key];
    }
    json& next = table[key];
    if (inline_.count(path)) fail("key '" + key + "' was defined inline and cannot be extended");
    if (next.is_array() && via_header && !next.empty() && next.back().is_object()) {
      path = join(path, "#" + std::to_string(next.size() - 1));
      return &next.back();
    }
    if (!next.is_object()) fail("key '" + key + "' is not a table");
    return &next;
  }

  json* parse_header(json& root) {
    expect('[');
    const bool array = peek() == '[';
    if (array) get();
    const auto keys = parse_dotted_key();
    expect(']');
    if (array) expect(']');

    json* table = &root;
    std::string path;
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) table = descend(*table, keys[i], true, path);
    const std::string& last = keys.back();
    if (array) {
      path = join(path, last);
      if (!table->contains(last)) (*table)[last] = json::array();
      json& arr = (*table)[last];
      if (!arr.is_array() || inline_.count(path)) fail("key '" + last + "' is not an array of tables");
      arr.push_back(json::object());
      current_path_ = join(path, "#" + std::to_string(arr.size() - 1));
      return &arr.back();
    }
    json* target = descend(*table, last, false, path);
    if (!defined_.insert(path).second) fail("table [" + last + "] is defined twice");
    current_path_ = path;
    return target;
  }

  void parse_key_value(json& table) {
    const auto keys = parse_dotted_key();
    json* target = &table;
    std::string path = current_path_;
    for (std::size_t i = 0; i + 1 < keys.size(); ++i) target = descend(*target, keys[i], false, path);
    skip_spaces();
    expect('=');
    skip_spaces();
    if (target->contains(keys.back())) fail("key '" + keys.back() + "' is defined twice");
    json value = parse_value();
    if (value.is_object() || value.is_array()) inline_.insert(join(path, keys.back()));
    (*target)[keys.back()] = std::move(value);
  }

  json parse_value() {
    const char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '\'') return parse_literal_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    if (c == 't' || c == 'f') return parse_bool();
    if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c))) return parse_integer();
    fail("expected a value");
  }

  std::string parse_basic_string() {
    expect('"');
    if (text_.substr(pos_, 2) == "\"\"") fail("multi-line strings are not supported");
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c != '\\') {
        out += c;
        continue;
      }
      c = get();
      switch (c) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'u': out += parse_unicode_escape(); break;
        default: fail(std::string("unknown escape '\\") + c + "'");
      }
    }
    return out;
  }

  std::string parse_unicode_escape() {
    std::uint32_t cp = 0;
    for (int i = 0; i < 4; ++i) {
      const char h = get();
      if (!std::isxdigit(static_cast<unsigned char>(h))) fail("bad \\u escape");
      cp = cp * 16 + static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(h)) ? h - '0'
                                                                                           : std::tolower(h) - 'a' + 10);
    }
    std::string out;
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
  }

  std::string parse_literal_string() {
    expect('\'');
    std::string out;
    while (true) {
      if (at_end() || peek() == '\n') fail("unterminated string");
      const char c = get();
      if (c == '\'') break;
      out += c;
    }
    return out;
  }

  json parse_bool() {
    if (text_.substr(pos_, 4) == "true") {
      for (int i = 0; i < 4; ++i) get();
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      for (int i = 0; i < 5; ++i) get();
      return false;
    }
    fail("expected a value");
  }

  json parse_integer() {
    std::string digits;
    if (peek() == '+' || peek() == '-') digits += get();
    bool last_digit = false;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '_') {
      const char c = get();
      if (c == '_') {
        if (!last_digit) fail("misplaced '_' in integer");
        last_digit = false;
        continue;
      }
      digits += c;
      last_digit = true;
    }
    if (!last_digit) fail("malformed integer");
    if (peek() == '.' || peek() == 'e' || peek() == 'E') fail("only integers are supported");
    const std::size_t sign = (digits[0] == '+' || digits[0] == '-') ? 1 : 0;
    if (digits.size() - sign > 1 && digits[sign] == '0') fail("leading zeros are not allowed");
    const std::size_t start = digits[0] == '+' ? 1 : 0;
    std::int64_t value = 0;
    const char* first = digits.data() + start;
    const auto [ptr, ec] = std::from_chars(first, digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) fail("integer out of range");
    return value;
  }

  json parse_array() {
    expect('[');
    json arr = json::array();
    while (true) {
      skip_all();
      if (peek() == ']') break;
      arr.push_back(parse_value());
      skip_all();
      if (peek() == ',') {
        get();
        continue;
      }
      if (peek() != ']') fail("expected ',' or ']' in array");
    }
    expect(']');
    return arr;
  }

  json parse_inline_table() {
    expect('{');
    json table = json::object();
    skip_spaces();
    if (peek() == '}') {
      get();
      return table;
    }
    while (true) {
      const auto path = parse_dotted_key();
      json* target = &table;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        json& next = (*target)[path[i]];
        if (next.is_null()) next = json::object();
        if (!next.is_object()) fail("key '" + path[i] + "' is not a table");
        target = &next;
      }
      skip_spaces();
      expect('=');
      skip_spaces();
      if (target->contains(path.back())) fail("key '" + path.back() + "' is defined twice");
      (*target)[path.back()] = parse_value();
      skip_spaces();
      if (peek() == ',') {
        get();
        skip_spaces();
        continue;
      }
      if (peek() == '}') break;
      fail("expected ',' or '}' in inline table");
    }
    expect('}');
    return table;
  }
};

}  // namespace

nlohmann::ordered_json parse_toml(std::string_view text, const std::string& source) {
  return TomlParser(text, source).parse();
}

}  // namespace abcover
