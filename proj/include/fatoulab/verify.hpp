#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fatoulab/precision.hpp"

namespace fatoulab {

inline constexpr const char* kToolVersion = "0.3.0";

// One checked inequality: value `cmp` threshold.
struct CheckEntry {
  std::string name;
  double value = 0;
  double threshold = 0;
  std::string cmp = "<";  // "<", "<=", ">", ">=", "=="
  bool pass = false;

  static CheckEntry less(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, "<", value < threshold};
  }
  static CheckEntry greater(std::string name, double value, double threshold) {
    return {std::move(name), value, threshold, ">", value > threshold};
  }
  static CheckEntry equals(std::string name, bool ok) {
    return {std::move(name), ok ? 1.0 : 0.0, 1.0, "==", ok};
  }
};

struct FittedConstant {
  std::string name;
  double value = 0;
  std::string provenance = "fitted";  // "fitted" | "assumed"
  std::string probe;                  // how it was produced
};

struct VerifyReport {
  std::string id;       // which statement is exercised
  std::string region;   // descriptor of the sampled region
  std::vector<CheckEntry> checks;
  std::vector<FittedConstant> fitted;
  std::size_t samples = 0;
  int precision_bits = 0;
  std::vector<std::string> notes;

  bool pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["id"] = id;
    j["region"] = region;
    j["pass"] = pass();
    j["samples"] = samples;
    j["precision_bits"] = precision_bits;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      nlohmann::ordered_json e;
      e["name"] = c.name;
      e["value"] = c.value;
      e["cmp"] = c.cmp;
      e["threshold"] = c.threshold;
      e["pass"] = c.pass;
      j["checks"].push_back(e);
    }
    j["fitted"] = nlohmann::ordered_json::array();
    for (const auto& f : fitted) {
      nlohmann::ordered_json e;
      e["name"] = f.name;
      e["value"] = f.value;
      e["provenance"] = f.provenance;
      e["probe"] = f.probe;
      j["fitted"].push_back(e);
    }
    j["notes"] = notes;
    return j;
  }
};

// FNV-1a over sorted key=value lines; invariant under reordering.
inline std::uint64_t config_hash(const std::map<std::string, std::string>& kv) {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [k, v] : kv) {
    for (char c : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  }
  return h;
}

struct ReportBundle {
  std::string tool_version = kToolVersion;
  std::uint64_t config = 0;
  std::string stamp;  // empty by default: artifacts stay byte-identical across runs
  std::vector<VerifyReport> reports;

  bool pass() const {
    return std::all_of(reports.begin(), reports.end(), [](const VerifyReport& r) { return r.pass(); });
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version;
    j["config_hash"] = config;
    j["generated_at"] = stamp;
    j["pass"] = pass();
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) j["reports"].push_back(r.to_json());
    return j;
  }
};

}  // namespace fatoulab
