#pragma once

// Output plumbing for the command-line tool: run manifest, JSON/CSV/SVG
// writers.

#include "ccmorse/search.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ccmorse::report {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::ordered_json;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// UTC ISO-8601; SOURCE_DATE_EPOCH overrides the clock.
inline std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(env));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Manifest {
  std::string subcommand;
  json parameters = json::object();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;

  json to_json() const {
    json j;
    j["tool"] = "ccmorse";
    j["version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["parameters"] = parameters;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["timestamp"] = timestamp();
    j["outputs"] = outputs;
    return j;
  }
};

inline json document(const Manifest& manifest, json results) {
  json j;
  j["manifest"] = manifest.to_json();
  j["results"] = std::move(results);
  return j;
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("write to " + path.string() + " failed");
}

inline json positions(const Configuration& c) {
  json arr = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) arr.push_back({c.point(i).x(), c.point(i).y()});
  return arr;
}

inline json critical_point(const search::CriticalPoint& cp, std::size_t class_id) {
  json j;
  j["class_id"] = class_id;
  j["positions"] = positions(cp.configuration);
  j["f_value"] = cp.f_value;
  j["gradient_norm"] = cp.gradient_norm;
  j["eigenvalues"] = cp.eigenvalues;
  j["morse_index"] = cp.morse_index;
  j["degenerate"] = cp.degenerate;
  j["multiplicity"] = cp.multiplicity;
  j["symmetry_order"] = cp.symmetry_order;
  j["orientation"] = cp.signature.orientation;
  return j;
}

inline std::string census_csv(const std::vector<search::CriticalPoint>& classes) {
  std::ostringstream os;
  os << "class_id,index,multiplicity,symmetry_order,f_value,min_eig,max_eig,degenerate\n";
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto& c = classes[k];
    os << k << ',' << c.morse_index << ',' << c.multiplicity << ',' << c.symmetry_order << ','
       << fmt17(c.f_value) << ',' << fmt17(c.eigenvalues.front()) << ','
       << fmt17(c.eigenvalues.back()) << ',' << (c.degenerate ? "true" : "false") << '\n';
  }
  return os.str();
}

/// Bodies as circles on a 512 x 512 canvas, 10% margin, with a bar of unit
/// length for scale.
inline std::string configuration_svg(const Configuration& c, const std::string& title) {
  constexpr double kSize = 512.0, kMargin = 0.1 * kSize;
  double extent = 0.5;  // keep the unit bar inside the frame
  for (std::size_t i = 0; i < c.size(); ++i)
    extent = std::max({extent, std::abs(c.point(i).x()), std::abs(c.point(i).y())});
  const double scale = (0.5 * kSize - kMargin) / extent;
  const auto sx = [&](double x) { return fmt17(0.5 * kSize + scale * x); };
  const auto sy = [&](double y) { return fmt17(0.5 * kSize - scale * y); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n";
  os << "  <title>" << title << "</title>\n";
  os << "  <rect width=\"512\" height=\"512\" fill=\"white\"/>\n";
  os << "  <line x1=\"" << sx(0) << "\" y1=\"" << kMargin << "\" x2=\"" << sx(0) << "\" y2=\""
     << kSize - kMargin << "\" stroke=\"#ddd\"/>\n";
  os << "  <line x1=\"" << kMargin << "\" y1=\"" << sy(0) << "\" x2=\"" << kSize - kMargin
     << "\" y2=\"" << sy(0) << "\" stroke=\"#ddd\"/>\n";
  for (std::size_t i = 0; i < c.size(); ++i)
    os << "  <circle cx=\"" << sx(c.point(i).x()) << "\" cy=\"" << sy(c.point(i).y())
       << "\" r=\"8\" fill=\"#1f4e99\"/>\n";
  const double y_bar = kSize - 0.5 * kMargin;
  os << "  <line x1=\"" << kMargin << "\" y1=\"" << y_bar << "\" x2=\"" << fmt17(kMargin + scale)
     << "\" y2=\"" << y_bar << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "  <text x=\"" << kMargin << "\" y=\"" << y_bar - 6
     << "\" font-family=\"sans-serif\" font-size=\"12\">1</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace ccmorse::report
