// Copyright 2026 The rumin-heat Authors
// SPDX-License-Identifier: Apache-2.0

#include "rumin/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef RUMIN_VERSION
#define RUMIN_VERSION "0.0.0"
#endif

namespace rumin {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return sha256_hex(ss.str());
}

void write_text_file(const std::string& path, const std::string& content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string version_string() { return RUMIN_VERSION; }

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::add(const std::string& dir, const std::string& relative) {
  const std::string full = (fs::path(dir) / relative).string();
  artifacts.push_back({relative, sha256_file(full), fs::file_size(full)});
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = config;
  j["version"] = version;
  j["started"] = started;
  j["finished"] = finished;
  j["artifacts"] = nlohmann::json::array();
  for (const auto& a : artifacts) j["artifacts"].push_back({{"path", a.path}, {"sha256", a.sha256}, {"bytes", a.bytes}});
  return j;
}

void RunManifest::write(const std::string& dir) {
  for (const auto& a : artifacts) {
    const std::string full = (fs::path(dir) / a.path).string();
    if (!fs::exists(full) || sha256_file(full) != a.sha256)
      throw std::runtime_error("manifest artifact changed or missing: " + a.path);
  }
  if (finished.empty()) finished = utc_now();
  write_text_file((fs::path(dir) / "manifest.json").string(), to_json().dump(2) + "\n");
}

}  // namespace rumin
