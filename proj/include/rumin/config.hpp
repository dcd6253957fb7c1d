// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Flat key-value run configuration with [sections].
//
//   # comment
//   [grid]
//   points = 33
//
// Every key has a default; unknown keys and malformed values are errors
// reported with the source line.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rumin/calderon.hpp"
#include "rumin/heat.hpp"

namespace rumin {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  struct Entry {
    std::string section;
    std::string key;
    std::string value;
    std::string help;
    std::string origin = "default";  // "file:line" once set
    char type = 's';
  };

  // Every known key with its default value.
  static Config defaults();
  // Defaults overlaid with the text; `source` names the text in errors.
  static Config parse(const std::string& text, const std::string& source = "<config>");
  static Config load(const std::string& path);

  // "section.key = value", e.g. from the command line.
  void set(const std::string& dotted, const std::string& value, const std::string& origin = "command line");
  bool has(const std::string& dotted) const;

  std::string get_string(const std::string& dotted) const;
  double get_double(const std::string& dotted) const;
  int get_int(const std::string& dotted) const;
  unsigned get_unsigned(const std::string& dotted) const;
  bool get_bool(const std::string& dotted) const;
  std::vector<int> get_int_list(const std::string& dotted) const;
  std::vector<double> get_double_list(const std::string& dotted) const;

  // Canonical text (schema order, help as comments); parse(to_text()) round-trips.
  std::string to_text(bool with_help = true) const;
  nlohmann::json to_json() const;
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  const Entry& entry(const std::string& dotted) const;
  Entry& entry(const std::string& dotted);
  void check(const Entry& e) const;
  [[noreturn]] void fail(const Entry& e, const std::string& msg) const;

  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
};

// Typed views; invalid combinations raise ConfigError naming the section.
GridSpec grid_from(const Config& c, int points_override = 0);
HeatConfig heat_from(const Config& c, int points_override = 0);
CalderonConfig calderon_from(const Config& c, int points_override = 0);
TestFormOptions test_form_from(const Config& c);

}  // namespace rumin
