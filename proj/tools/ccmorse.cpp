// ccmorse: command-line front end.
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 I/O failure.

#include "ccmorse/ccmorse.hpp"
#include "report.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace ccmorse;
using report::json;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "5,6,9-12" -> {5, 6, 9, 10, 11, 12}
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      const auto dash = item.find('-', 1);
      if (dash == std::string::npos) {
        out.push_back(std::stoi(item));
      } else {
        const int lo = std::stoi(item.substr(0, dash)), hi = std::stoi(item.substr(dash + 1));
        if (hi < lo) throw UsageError("empty range " + item);
        for (int k = lo; k <= hi; ++k) out.push_back(k);
      }
    } catch (const std::logic_error&) {
      throw UsageError("cannot parse integer list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

std::vector<std::int64_t> parse_coefficients(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::logic_error&) {
      throw UsageError("cannot parse coefficient list '" + text + "'");
    }
  }
  return out;
}

/// "lo:hi" or a single number.
rigor::Interval parse_interval(const std::string& text) {
  try {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return rigor::Interval(std::stod(text));
    return rigor::Interval(std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1)));
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse interval '" + text + "'");
  } catch (const std::out_of_range&) {
    throw UsageError("cannot parse interval '" + text + "'");
  }
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    report::write_file(out_path, text.back() == '\n' ? text : text + '\n');
  }
}

json polynomial_json(const morse::IntPolynomial& p) { return p.coefficients(); }

json consistency_json(const morse::Consistency& c, const morse::IntPolynomial& p,
                      morse::PoincareVariant variant) {
  json j;
  j["ok"] = c.ok;
  j["poincare"] = polynomial_json(p);
  j["poincare_variant"] = morse::to_string(variant);
  j["remainder"] = polynomial_json(c.remainder);
  j["message"] = c.message;
  return j;
}

// ---------------------------------------------------------------------------

struct PolygonArgs {
  int n = 0;
  double a = 3.0;
  std::string format = "text";
  std::string out;
};

int cmd_polygon(const PolygonArgs& args) {
  if (args.n < 3) throw UsageError("--n must be at least 3");
  const auto spec = polygon::polygon_spectrum(args.n, args.a);
  const auto idx = polygon::polygon_morse_index(args.n, args.a);

  if (args.format == "json") {
    report::Manifest m{"polygon", {{"n", args.n}, {"a", args.a}, {"format", args.format}}, {}, {}};
    if (!args.out.empty()) m.outputs.push_back(args.out);
    json rows = json::array();
    for (int i = 0; i < args.n; ++i) {
      const auto& d = spec.diagonals[i];
      rows.push_back({{"i", i},
                      {"P", d.p},
                      {"Q", d.q},
                      {"s", d.s},
                      {"lambda_plus", spec.pairs[i].plus},
                      {"lambda_minus", spec.pairs[i].minus},
                      {"cartesian_lambda_plus", spec.cartesian_pairs[i].plus},
                      {"cartesian_lambda_minus", spec.cartesian_pairs[i].minus}});
    }
    json res = {{"n", args.n},
                {"a", args.a},
                {"radius", spec.radius},
                {"morse_index", idx.index},
                {"degenerate", idx.degenerate},
                {"blocks", rows}};
    if (args.a == 2.0) {
      json exact = json::array();
      for (int i = 0; i < args.n; ++i) {
        const auto v = polygon::vortex_closed_forms(args.n, i);
        exact.push_back({{"i", i},
                         {"P", std::to_string(v.p.numerator()) + "/" + std::to_string(v.p.denominator())},
                         {"Q", std::to_string(v.q.numerator()) + "/" + std::to_string(v.q.denominator())}});
      }
      res["vortex_exact"] = exact;
    }
    emit(report::document(m, res).dump(2), args.out);
    return 0;
  }

  std::ostringstream os;
  if (args.format == "csv") {
    os << "i,P,Q,s,lambda_plus,lambda_minus\n";
    for (int i = 0; i < args.n; ++i) {
      const auto& d = spec.diagonals[i];
      os << i << ',' << report::fmt17(d.p) << ',' << report::fmt17(d.q) << ',' << report::fmt17(d.s)
         << ',' << report::fmt17(spec.pairs[i].plus) << ',' << report::fmt17(spec.pairs[i].minus)
         << '\n';
    }
  } else if (args.format == "text") {
    os << "regular " << args.n << "-gon, A = " << args.a << "\n";
    os << "radius " << report::fmt17(spec.radius) << "\n";
    os << "morse_index " << idx.index << (idx.degenerate ? " (degenerate)" : "") << "\n";
    char line[200];
    std::snprintf(line, sizeof line, "%4s %22s %22s %22s %22s %22s\n", "i", "P", "Q", "s",
                  "lambda_plus", "lambda_minus");
    os << line;
    for (int i = 0; i < args.n; ++i) {
      const auto& d = spec.diagonals[i];
      std::snprintf(line, sizeof line, "%4d %22.15g %22.15g %22.15g %22.15g %22.15g\n", i, d.p, d.q,
                    d.s, spec.pairs[i].plus, spec.pairs[i].minus);
      os << line;
    }
  } else {
    throw UsageError("unknown format '" + args.format + "'");
  }
  emit(os.str(), args.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct BifurcationArgs {
  std::string n_list = "5";
  double lo = 2.0;
  double hi = 40.0;
  double tol = 1e-10;
  std::string out;
};

int cmd_bifurcation(const BifurcationArgs& args) {
  const std::vector<int> ns = parse_int_list(args.n_list);
  for (int n : ns)
    if (n < 5) throw UsageError("bifurcation needs n >= 5");
  std::vector<polygon::Bifurcation> found(ns.size());
  std::vector<std::string> errors(ns.size());
  parallel_for(ns.size(), default_worker_count(), [&](std::size_t k) {
    try {
      found[k] = polygon::find_bifurcation_bracket(ns[k], args.lo, args.hi, args.tol);
    } catch (const std::runtime_error& e) {
      errors[k] = e.what();
    }
  });
  for (std::size_t k = 0; k < ns.size(); ++k)
    if (!errors[k].empty()) throw NumericalFailure(errors[k]);

  json rows = json::array();
  bool decreasing = true;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const auto& b = found[k];
    json row = {{"n", ns[k]},
                {"bracket", {b.lo, b.hi}},
                {"A_N", b.exponent},
                {"auto_bracketed", b.auto_bracketed}};
    if (ns[k] <= 200) {
      const double pade = polygon::pade_estimate(ns[k]);
      row["pade"] = pade;
      row["relative_difference"] = std::abs(b.exponent - pade) / b.exponent;
    }
    rows.push_back(row);
    if (k > 0 && !(ns[k] > ns[k - 1] && b.exponent < found[k - 1].exponent)) decreasing = false;
  }
  report::Manifest m{"bifurcation",
                     {{"n", args.n_list}, {"lo", args.lo}, {"hi", args.hi}, {"tol", args.tol}},
                     {},
                     {}};
  if (!args.out.empty()) m.outputs.push_back(args.out);
  emit(report::document(m, {{"bifurcations", rows}, {"monotone_decreasing", decreasing}}).dump(2),
       args.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct SurveyArgs {
  int n = 0;
  double a = 3.0;
  std::size_t starts = 1000;
  std::uint64_t seed = 1;
  std::string out_dir = "survey_out";
  bool no_collinear = false;
};

int cmd_survey(const SurveyArgs& args) {
  if (args.n < 2) throw UsageError("--n must be at least 2");
  if (args.starts < 1) throw UsageError("--starts must be at least 1");
  const auto model = PotentialModel::equal_masses(static_cast<std::size_t>(args.n), args.a);
  search::SurveyResult res = search::survey(model, args.starts, args.seed);
  if (!args.no_collinear && args.n <= static_cast<int>(collinear::kMaxOrderingBodies))
    search::merge_into(model, res.classes, collinear::collinear_shapes(model));

  namespace fs = std::filesystem;
  const fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw report::IoError("cannot create " + dir.string() + ": " + ec.message());

  const auto m_poly = morse::morse_polynomial(search::census_entries(res.classes));
  const auto variant = morse::PoincareVariant::reduced;
  const auto p_poly = morse::poincare_polynomial(args.n, variant);
  const auto verdict = morse::morse_consistency(m_poly, p_poly);

  report::Manifest m{"survey",
                     {{"n", args.n},
                      {"a", args.a},
                      {"starts", args.starts},
                      {"collinear_merge", !args.no_collinear}},
                     args.seed,
                     {}};
  json classes = json::array();
  for (std::size_t k = 0; k < res.classes.size(); ++k) {
    classes.push_back(report::critical_point(res.classes[k], k));
    char name[32];
    std::snprintf(name, sizeof name, "class_%03zu.svg", k);
    const auto& c = res.classes[k];
    report::write_file(dir / name,
                       report::configuration_svg(c.configuration,
                                                 "N=" + std::to_string(args.n) + " class " +
                                                     std::to_string(k) + " index " +
                                                     std::to_string(c.morse_index)));
    m.outputs.push_back((dir / name).string());
  }
  m.outputs.insert(m.outputs.begin(), {(dir / "census.json").string(), (dir / "census.csv").string()});
  json results = {{"counts",
                   {{"converged", res.converged},
                    {"diverged", res.diverged},
                    {"collided", res.collided}}},
                  {"classes", classes},
                  {"morse_polynomial", polynomial_json(m_poly)},
                  {"morse_polynomial_text", m_poly.to_string()},
                  {"consistency", consistency_json(verdict, p_poly, variant)}};
  report::write_file(dir / "census.json", report::document(m, results).dump(2) + "\n");
  report::write_file(dir / "census.csv", report::census_csv(res.classes));

  std::cout << "classes " << res.classes.size() << "\n";
  std::cout << "starts converged " << res.converged << " diverged " << res.diverged << " collided "
            << res.collided << "\n";
  std::cout << "M(t) = " << m_poly.to_string() << "\n";
  std::cout << "consistency " << (verdict.ok ? "ok" : "FAILED") << ": " << verdict.message << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct CollinearArgs {
  int n = 0;
  double a = 3.0;
  std::string out;
};

int cmd_collinear(const CollinearArgs& args) {
  if (args.n < 2) throw UsageError("--n must be at least 2");
  const auto model = PotentialModel::equal_masses(static_cast<std::size_t>(args.n), args.a);
  const auto census = collinear::collinear_census(model);
  json rows = json::array();
  bool all_n_minus_2 = true;
  for (const auto& c : census) {
    rows.push_back({{"ordering", c.ordering},
                    {"positions", report::positions(c.configuration)},
                    {"f_value", c.f_value},
                    {"morse_index", c.morse_index}});
    all_n_minus_2 = all_n_minus_2 && c.morse_index == args.n - 2;
  }
  report::Manifest m{"collinear", {{"n", args.n}, {"a", args.a}}, {}, {}};
  if (!args.out.empty()) m.outputs.push_back(args.out);
  emit(report::document(m, {{"classes", rows},
                            {"count", census.size()},
                            {"all_index_n_minus_2", all_n_minus_2}})
           .dump(2),
       args.out);
  return 0;
}

// ---------------------------------------------------------------------------

struct MorseCheckArgs {
  std::string coefficients;
  std::string census_file;
  int n = 0;
  std::string variant = "reduced";
};

int cmd_morse_check(const MorseCheckArgs& args) {
  if (args.n < 2) throw UsageError("--n must be at least 2");
  if (args.coefficients.empty() == args.census_file.empty())
    throw UsageError("give exactly one of --m or --census");
  morse::PoincareVariant variant;
  if (args.variant == "reduced")
    variant = morse::PoincareVariant::reduced;
  else if (args.variant == "full")
    variant = morse::PoincareVariant::full;
  else
    throw UsageError("unknown Poincare variant '" + args.variant + "'");

  morse::IntPolynomial m_poly;
  if (!args.coefficients.empty()) {
    m_poly = morse::IntPolynomial(parse_coefficients(args.coefficients));
  } else {
    std::ifstream in(args.census_file);
    if (!in) throw report::IoError("cannot read " + args.census_file);
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError("census file is not valid JSON: " + std::string(e.what()));
    }
    const json& classes = doc.contains("results") ? doc["results"]["classes"] : doc["classes"];
    std::vector<morse::CensusEntry> entries;
    for (const auto& c : classes)
      entries.push_back({c.at("morse_index").get<int>(), c.at("multiplicity").get<std::int64_t>()});
    m_poly = morse::morse_polynomial(entries);
  }
  const auto p_poly = morse::poincare_polynomial(args.n, variant);
  const auto verdict = morse::morse_consistency(m_poly, p_poly);
  report::Manifest m{"morse-check",
                     {{"n", args.n},
                      {"variant", args.variant},
                      {"m", args.coefficients},
                      {"census", args.census_file}},
                     {},
                     {}};
  json res = consistency_json(verdict, p_poly, variant);
  res["morse_polynomial"] = polynomial_json(m_poly);
  std::cout << report::document(m, res).dump(2) << "\n";
  return verdict.ok ? 0 : kExitNumerical;
}

// ---------------------------------------------------------------------------

struct RigorArgs {
  std::string preset;
  std::vector<std::string> box;
  int n = 0;
  double a = 3.0;
  std::string exponent;
  std::string mode = "exclusion";
  int depth = 20;
  std::size_t budget = 100000;
  std::string log = "rigor.jsonl";
};

json interval_json(const rigor::Interval& x) { return {x.lo(), x.hi()}; }

json box_json(const rigor::IntervalBox& b) {
  json j = json::array();
  for (const auto& c : b.coords) j.push_back(interval_json(c));
  json out = {{"coords", j}};
  if (b.exponent) out["exponent"] = interval_json(*b.exponent);
  return out;
}

int cmd_rigor(const RigorArgs& args) {
  rigor::IntervalBox region;
  std::size_t n = 0;
  if (!args.preset.empty()) {
    if (!args.box.empty()) throw UsageError("give either --preset or --box");
    if (args.preset == "far-field")
      region = rigor::far_field_two_body();
    else if (args.preset == "two-body")
      region = rigor::two_body_neighbourhood();
    else if (args.preset == "three-body-gap")
      region = rigor::three_body_gap();
    else
      throw UsageError("unknown preset '" + args.preset + "'");
  } else {
    if (args.box.empty()) throw UsageError("give --preset or --box");
    for (const auto& s : args.box) region.coords.push_back(parse_interval(s));
  }
  if (region.coords.size() % 2 != 0 || region.coords.size() < 4)
    throw UsageError("box needs an even number (>= 4) of coordinates");
  n = region.coords.size() / 2;
  if (args.n != 0 && static_cast<std::size_t>(args.n) != n)
    throw UsageError("--n does not match the box dimension");
  if (!args.exponent.empty()) region.exponent = parse_interval(args.exponent);
  rigor::PruneMode mode;
  if (args.mode == "exclusion")
    mode = rigor::PruneMode::exclusion;
  else if (args.mode == "bifurcation")
    mode = rigor::PruneMode::bifurcation;
  else
    throw UsageError("unknown mode '" + args.mode + "'");

  const double a_model = region.exponent ? std::max(2.0, region.exponent->lo()) : args.a;
  const auto model = PotentialModel::equal_masses(n, a_model);
  const auto res = rigor::branch_and_prune(model, region, args.depth, args.budget, mode);

  std::ostringstream log;
  json header = {{"type", "header"},
                 {"tool", "ccmorse"},
                 {"version", report::kToolVersion},
                 {"system", "gradient of f"},
                 {"gauge", "y0 = 0, x0 >= 0; Jacobian drops the y0 column"},
                 {"rounding", "epsilon inflation: endpoints moved outward by 4u|x| + 2*DBL_MIN"},
                 {"sigma_margin", "1e-8 * max(1, max|mid|)"},
                 {"singular_values", "Jacobi eigenvalues of [[0, M], [M^T, 0]]"},
                 {"bisection", "breadth-first, widest coordinate, lowest index on ties"},
                 {"mode", args.mode},
                 {"a", region.exponent ? json(nullptr) : json(args.a)},
                 {"region", box_json(region)},
                 {"max_depth", args.depth},
                 {"budget", args.budget},
                 {"timestamp", report::timestamp()}};
  log << header.dump() << '\n';
  for (const auto& rec : res.log) {
    json line = {{"type", "box"},
                 {"depth", rec.depth},
                 {"box", box_json(rec.box)},
                 {"verdict", rigor::to_string(rec.verdict)}};
    if (rec.component) line["component"] = *rec.component;
    if (rec.rank)
      line["sigma"] = {{"min_mid", rec.rank->sigma_min_mid},
                       {"max_rad", rec.rank->sigma_max_rad},
                       {"margin", rec.rank->margin}};
    if (rec.touches_collision) line["touches_collision"] = true;
    log << line.dump() << '\n';
  }
  double vol_total = region.volume(), vol_done = 0.0;
  for (const auto& b : res.excluded) vol_done += b.volume();
  for (const auto& b : res.full_rank) vol_done += b.volume();
  json summary = {{"type", "summary"},
                  {"evaluations", res.evaluations},
                  {"excluded", res.excluded.size()},
                  {"full_rank", res.full_rank.size()},
                  {"unresolved", res.unresolved.size()},
                  {"budget_exhausted", res.budget_exhausted},
                  {"certified_fraction", vol_total > 0.0 ? vol_done / vol_total : 0.0}};
  log << summary.dump() << '\n';
  report::write_file(args.log, log.str());

  report::Manifest m{"rigor",
                     {{"preset", args.preset},
                      {"box", args.box},
                      {"a", args.a},
                      {"exponent", args.exponent},
                      {"mode", args.mode},
                      {"depth", args.depth},
                      {"budget", args.budget}},
                     {},
                     {args.log}};
  json unresolved = json::array();
  for (const auto& b : res.unresolved) unresolved.push_back(box_json(b));
  summary.erase("type");
  summary["unresolved_boxes"] = unresolved;
  std::cout << report::document(m, summary).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central configurations of homogeneous planar N-body potentials"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kToolVersion);

  PolygonArgs pa;
  auto* polygon_cmd = app.add_subcommand("polygon", "Spectrum of the regular N-gon");
  polygon_cmd->add_option("--n", pa.n, "number of bodies")->required();
  polygon_cmd->add_option("--a", pa.a, "potential exponent A >= 2")->required();
  polygon_cmd->add_option("--format", pa.format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  polygon_cmd->add_option("--out", pa.out, "output file (default stdout)");

  BifurcationArgs ba;
  auto* bif_cmd = app.add_subcommand("bifurcation", "Bifurcation exponents A_N of the N-gon");
  bif_cmd->add_option("--n", ba.n_list, "list of N, e.g. 5,7 or 5-30")->required();
  bif_cmd->add_option("--lo", ba.lo, "bracket lower end");
  bif_cmd->add_option("--hi", ba.hi, "bracket upper end");
  bif_cmd->add_option("--tol", ba.tol, "bracket width");
  bif_cmd->add_option("--out", ba.out, "output file (default stdout)");

  SurveyArgs sa;
  auto* survey_cmd = app.add_subcommand("survey", "Multi-start census of critical points");
  survey_cmd->add_option("--n", sa.n, "number of bodies")->required();
  survey_cmd->add_option("--a", sa.a, "potential exponent A >= 2")->required();
  survey_cmd->add_option("--starts", sa.starts, "number of random starts");
  survey_cmd->add_option("--seed", sa.seed, "seed of the start stream");
  survey_cmd->add_option("--out-dir", sa.out_dir, "directory for census files and SVGs");
  survey_cmd->add_flag("--no-collinear", sa.no_collinear, "skip merging the collinear classes");

  CollinearArgs ca;
  auto* col_cmd = app.add_subcommand("collinear", "Collinear central configurations");
  col_cmd->add_option("--n", ca.n, "number of bodies")->required();
  col_cmd->add_option("--a", ca.a, "potential exponent A >= 2")->required();
  col_cmd->add_option("--out", ca.out, "output file (default stdout)");

  MorseCheckArgs ma;
  auto* morse_cmd = app.add_subcommand("morse-check", "Check M(t) - P(t) = (1 + t) R(t), R >= 0");
  morse_cmd->add_option("--m", ma.coefficients, "Morse polynomial coefficients, e.g. 6,24,20");
  morse_cmd->add_option("--census", ma.census_file, "census JSON from the survey command");
  morse_cmd->add_option("--n", ma.n, "number of bodies")->required();
  morse_cmd->add_option("--variant", ma.variant, "reduced | full Poincare polynomial")
      ->check(CLI::IsMember({"reduced", "full"}));

  RigorArgs ra;
  auto* rigor_cmd = app.add_subcommand("rigor", "Interval branch-and-prune certification");
  rigor_cmd->add_option("--preset", ra.preset, "far-field | two-body | three-body-gap");
  rigor_cmd->add_option("--box", ra.box, "coordinate intervals lo:hi (x0 y0 x1 y1 ...)");
  rigor_cmd->add_option("--n", ra.n, "number of bodies (checked against the box)");
  rigor_cmd->add_option("--a", ra.a, "potential exponent A >= 2");
  rigor_cmd->add_option("--exponent", ra.exponent, "exponent interval lo:hi as a box coordinate");
  rigor_cmd->add_option("--mode", ra.mode, "exclusion | bifurcation")
      ->check(CLI::IsMember({"exclusion", "bifurcation"}));
  rigor_cmd->add_option("--depth", ra.depth, "maximum bisection depth");
  rigor_cmd->add_option("--budget", ra.budget, "maximum number of box evaluations");
  rigor_cmd->add_option("--log", ra.log, "certification log (JSON lines)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*polygon_cmd) return cmd_polygon(pa);
    if (*bif_cmd) return cmd_bifurcation(ba);
    if (*survey_cmd) return cmd_survey(sa);
    if (*col_cmd) return cmd_collinear(ca);
    if (*morse_cmd) return cmd_morse_check(ma);
    if (*rigor_cmd) return cmd_rigor(ra);
  } catch (const report::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
