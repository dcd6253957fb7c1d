// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

// Run manifests: command, resolved config, version, timestamps and a content
// hash for every artifact written.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace rumin {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

// Writes `content` to `path` (binary, creating parent directories).
void write_text_file(const std::string& path, const std::string& content);

std::string version_string();

struct RunManifest {
  struct Artifact {
    std::string path;     // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
  };

  std::string command;
  nlohmann::json config;
  std::string version = version_string();
  std::string started;    // UTC ISO-8601
  std::string finished;
  std::vector<Artifact> artifacts;

  // Hashes an existing file under `dir` and records it.
  void add(const std::string& dir, const std::string& relative);
  nlohmann::json to_json() const;
  // Writes manifest.json into `dir` after checking every artifact still matches.
  void write(const std::string& dir);
};

std::string utc_now();

}  // namespace rumin
