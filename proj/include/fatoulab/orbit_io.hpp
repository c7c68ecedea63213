#pragma once

#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fatoulab/domain_u.hpp"
#include "fatoulab/maps.hpp"

namespace fatoulab {

// CSV dump: header + one row per recorded point; the `escaped` flag is set on
// the row where the orbit left the escape radius (file ends there).
template <class R>
void orbit_to_csv(const OrbitRecord<R>& rec, std::ostream& os) {
  os << "iter,re,im,abs,escaped\n";
  for (std::size_t i = 0; i < rec.points.size(); ++i) {
    const auto& p = rec.points[i];
    bool esc = rec.escaped_at && *rec.escaped_at == i;
    os << i << "," << to_decimal_string(p.re) << "," << to_decimal_string(p.im) << ","
       << to_decimal_string(abs(p)) << "," << (esc ? 1 : 0) << "\n";
  }
}

template <class R>
void orbit_to_csv_file(const OrbitRecord<R>& rec, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IOFailure("cannot open " + path);
  orbit_to_csv(rec, os);
  if (!os) throw IOFailure("short write to " + path);
}

template <class R>
nlohmann::ordered_json orbit_to_json(const OrbitRecord<R>& rec) {
  nlohmann::ordered_json j;
  j["schema"] = "orbit.v1";
  j["precision_bits"] = mantissa_bits<R>();
  j["escape_radius"] = to_decimal_string(rec.escape_radius);
  j["escaped_at"] = nullptr;
  if (rec.escaped_at) j["escaped_at"] = *rec.escaped_at;
  j["points"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rec.points.size(); ++i) {
    const auto& p = rec.points[i];
    j["points"].push_back({{"iter", i},
                           {"re", to_decimal_string(p.re)},
                           {"im", to_decimal_string(p.im)},
                           {"abs", to_decimal_string(abs(p))}});
  }
  return j;
}

// Structural validation against the orbit.v1 shape.
inline void validate_orbit_json(const nlohmann::json& j) {
  auto fail = [](const std::string& w) { throw std::runtime_error("orbit.v1: " + w); };
  if (!j.contains("schema") || j["schema"] != "orbit.v1") fail("missing schema tag");
  for (const char* key : {"precision_bits", "escape_radius", "escaped_at", "points"})
    if (!j.contains(key)) fail(std::string("missing key ") + key);
  if (!j["points"].is_array()) fail("points must be an array");
  for (const auto& p : j["points"])
    for (const char* key : {"iter", "re", "im", "abs"})
      if (!p.contains(key)) fail(std::string("point missing ") + key);
  if (!j["escaped_at"].is_null() && !j["escaped_at"].is_number_unsigned())
    fail("escaped_at must be null or an index");
}

}  // namespace fatoulab
