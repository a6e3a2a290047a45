// Copyright 2026 The genbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cctype>
#include <cstdlib>
#include <istream>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "genbound/core.hpp"

namespace genbound::io {

// Flat TOML subset: `key = value` lines, `[table]` headers that prefix the
// following keys with "table.", `#` comments, double-quoted strings,
// numbers, booleans and one-line numeric arrays.
class Config {
 public:
  static Config parse(std::istream& is) {
    Config cfg;
    std::string line, table;
    int line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      const std::string body = trim(strip_comment(line));
      if (body.empty()) continue;
      const std::string where = " (line " + std::to_string(line_no) + ")";
      if (body.front() == '[') {
        require(body.back() == ']' && body.size() > 2, "config: malformed table header" + where);
        table = trim(body.substr(1, body.size() - 2));
        require(valid_key(table), "config: bad table name" + where);
        continue;
      }
      const auto eq = body.find('=');
      require(eq != std::string::npos, "config: expected key = value" + where);
      const std::string key = trim(body.substr(0, eq));
      std::string value = trim(body.substr(eq + 1));
      require(valid_key(key), "config: bad key" + where);
      require(!value.empty(), "config: empty value" + where);
      const std::string full = table.empty() ? key : table + "." + key;
      require(!cfg.values_.count(full), "config: duplicate key " + full + where);
      if (value.front() == '"') {
        require(value.size() >= 2 && value.back() == '"', "config: unterminated string" + where);
        value = value.substr(1, value.size() - 2);
        cfg.strings_.insert(full);
      } else if (value.front() == '[') {
        require(value.back() == ']', "config: unterminated array" + where);
        for (const auto& item : split_list(value.substr(1, value.size() - 2)))
          require(is_number(item), "config: arrays hold numbers only" + where);
      } else {
        require(is_number(value) || value == "true" || value == "false", "config: unrecognized value for " + full + where);
      }
      cfg.values_[full] = value;
    }
    return cfg;
  }

  static Config parse_string(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  void set(const std::string& key, const std::string& value) {
    require(valid_key(key), "config: bad key " + key);
    values_[key] = value;
    if (!is_number(value) && value != "true" && value != "false" && (value.empty() || value.front() != '['))
      strings_.insert(key);
    else
      strings_.erase(key);
  }

  std::string get_string(const std::string& key) const {
    auto it = values_.find(key);
    require(it != values_.end(), "config: missing key " + key);
    return it->second;
  }
  std::string get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
  }

  double get_double(const std::string& key) const {
    const std::string v = get_string(key);
    require(is_number(v) && !strings_.count(key), "config: " + key + " must be a number");
    return std::strtod(v.c_str(), nullptr);
  }
  double get_double(const std::string& key, double fallback) const { return has(key) ? get_double(key) : fallback; }

  long long get_int(const std::string& key) const {
    const double v = get_double(key);
    require(v == std::floor(v) && std::abs(v) < 9e15, "config: " + key + " must be an integer");
    return static_cast<long long>(v);
  }
  long long get_int(const std::string& key, long long fallback) const { return has(key) ? get_int(key) : fallback; }

  bool get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    require(v == "true" || v == "false", "config: " + key + " must be true or false");
    return v == "true";
  }

  std::vector<double> get_array(const std::string& key) const {
    const std::string v = get_string(key);
    require(v.size() >= 2 && v.front() == '[' && v.back() == ']', "config: " + key + " must be an array");
    std::vector<double> out;
    for (const auto& item : split_list(v.substr(1, v.size() - 2))) out.push_back(std::strtod(item.c_str(), nullptr));
    return out;
  }

  std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
      if (k.rfind(prefix, 0) == 0) out.push_back(k);
    return out;
  }

  // Sorted key=value lines; the hash input for output metadata.
  std::string canonical() const {
    std::string out;
    for (const auto& [k, v] : values_) out += k + "=" + (strings_.count(k) ? "\"" + v + "\"" : v) + "\n";
    return out;
  }

  static bool is_number(const std::string& s) {
    if (s.empty()) return false;
    char* end = nullptr;
    std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return false;
    // Reject hex, inf and nan spellings; decimal only.
    for (char c : s)
      if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '+' || c == 'e' || c == 'E' || c == '_'))
        return false;
    return true;
  }

 private:
  static std::string strip_comment(const std::string& s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '"') in_string = !in_string;
      if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
  }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  static bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
    return true;
  }

  static std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  std::map<std::string, std::string> values_;
  std::set<std::string> strings_;
};

}  // namespace genbound::io
