#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fatoulab {

struct ConfigError : std::runtime_error {
  ConfigError(int line, const std::string& key, const std::string& message)
      : std::runtime_error("config line " + std::to_string(line) + (key.empty() ? "" : " key '" + key + "'") +
                           ": " + message),
        line_no(line), key(key) {}
  int line_no;
  std::string key;
};

// Flat key/value configuration:
//   key = value          one pair per line, later keys override earlier ones
//   # comment            full-line comments; blank lines ignored
// Keys are [A-Za-z0-9_.-]+; values are the trimmed rest of the line, with
// optional double quotes stripped.
class Config {
 public:
  Config() = default;

  static Config parse_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError(0, "", "cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse(ss.str());
  }

  static Config parse(const std::string& text) {
    Config cfg;
    std::istringstream is(text);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
      ++n;
      std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      auto eq = t.find('=');
      if (eq == std::string::npos) throw ConfigError(n, "", "expected 'key = value'");
      std::string key = trim(t.substr(0, eq));
      std::string value = trim(t.substr(eq + 1));
      if (key.empty()) throw ConfigError(n, "", "empty key");
      for (char c : key)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' && c != '-')
          throw ConfigError(n, key, "invalid character in key");
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        value = value.substr(1, value.size() - 2);
      cfg.values_[key] = value;
    }
    return cfg;
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  long get_long(const std::string& key, long fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t pos = 0;
      long v = std::stol(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ConfigError(0, key, "expected an integer, got '" + it->second + "'");
    }
  }

  double get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      std::size_t pos = 0;
      double v = std::stod(it->second, &pos);
      if (pos != it->second.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      throw ConfigError(0, key, "expected a number, got '" + it->second + "'");
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw ConfigError(0, key, "expected true/false, got '" + it->second + "'");
  }

  // command-line overrides: flags win over file values
  void override(const std::string& key, const std::string& value) { values_[key] = value; }

  const std::map<std::string, std::string>& items() const { return values_; }

 private:
  static std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  std::map<std::string, std::string> values_;
};

}  // namespace fatoulab
