#include "chaut/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chaut/io.hpp"
#include "chaut/svg.hpp"

namespace chaut::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Point parse_point(const std::string& text) {
  std::vector<Rational> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) coords.push_back(parse_rational(part));
  if (coords.empty()) throw UsageError("empty --point");
  Point p(static_cast<Eigen::Index>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i) p(static_cast<Eigen::Index>(i)) = coords[i];
  return p;
}

std::string format_point(const Point& p) {
  std::string s;
  for (Eigen::Index i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p(i));
  return s;
}

Json read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
  }
  return load_json(path);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
  f << text;
}

// Maps carrying a certificate are re-certified; a stale certificate is rejected.
PiecewiseFractionalMap load_map(const Json& j) {
  PiecewiseFractionalMap map = map_from_json(j);
  if (j.contains("cert")) {
    const AutomorphismCert cert = certify(map);
    const auto& stored = j.at("cert");
    if (stored.value("dets", std::vector<int>{}) != cert.det_per_cell ||
        stored.value("orientation", std::string{}) != to_string(cert.orientation)) {
      throw Error(ErrorCode::InvalidMap, "stored certificate does not match the matrices");
    }
  }
  return map;
}

std::string yes(bool b) { return b ? "true" : "false"; }

void print_condition(std::ostream& out, const char* name, const ConditionResult& c) {
  out << name << ": " << yes(c.holds);
  if (!c.holds && !c.witness.empty()) out << "  [" << c.witness << "]";
  out << "\n";
}

Mode parse_mode(const std::string& m) {
  if (m == "exact") return Mode::Exact;
  if (m == "float") return Mode::Float;
  throw UsageError("--mode must be exact or float");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for piecewise unimodular maps of the cube"};
  app.require_subcommand(1, 1);

  std::string input, input2, output, point, mode_text = "exact";
  std::uint64_t seed = kDefaultReportSeed;
  std::size_t steps = 0, burn_in = kDefaultBurnIn, starts = 0;
  int bins = kDefaultBins, bound = 12, k = 1, samples = 200;

  auto* validate = app.add_subcommand("validate", "validate a complex, function, isomorphism or map");
  validate->add_option("input", input, "JSON file")->required();

  auto* build = app.add_subcommand("build-aut", "automorphism from a combinatorial isomorphism (JSON to stdout)");
  build->add_option("iso", input, "isomorphism JSON")->required();

  auto* apply_cmd = app.add_subcommand("apply", "apply a map to a rational point");
  apply_cmd->add_option("map", input, "map JSON (stdin when omitted or -)");
  apply_cmd->add_option("--point", point, "comma-separated rationals")->required();

  auto* pull = app.add_subcommand("pullback", "sigma(f) = f_sharp * (f o S)");
  pull->add_option("map", input, "map JSON")->required();
  pull->add_option("function", input2, "function JSON")->required();
  pull->add_option("-o,--output", output);

  auto* report = app.add_subcommand("report", "unit-fixing conditions of an automorphism");
  report->add_option("map", input, "map JSON")->required();
  report->add_option("--seed", seed, "sampling seed")->capture_default_str();
  report->add_option("--samples", samples, "random rational points")->check(CLI::PositiveNumber);

  auto* orbit_cmd = app.add_subcommand("orbit", "orbit of a point as CSV");
  orbit_cmd->add_option("map", input, "map JSON")->required();
  orbit_cmd->add_option("--point", point, "start point")->required();
  orbit_cmd->add_option("-N,--steps", steps, "iterations")->required();
  orbit_cmd->add_option("--mode", mode_text, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  orbit_cmd->add_option("-o,--output", output);

  auto* hist = app.add_subcommand("histogram", "empirical measure as CSV");
  hist->add_option("map", input, "map JSON")->required();
  auto* hist_seed = hist->add_option("--seed", seed, "seed for random starts");
  hist->add_option("--point", point, "start point of a single Birkhoff orbit");
  hist->add_option("-N,--steps", steps, "iterations")->required();
  hist->add_option("--bins", bins, "bins per axis")->check(CLI::PositiveNumber);
  hist->add_option("--burn-in", burn_in, "discarded initial steps");
  hist->add_option("--starts", starts, "random starts pushed forward N steps (needs --seed)");
  hist->add_option("-o,--output", output);

  auto* unit = app.add_subcommand("unit-orbit", "sigma^i(1l) for i <= k");
  unit->add_option("map", input, "map JSON")->required();
  unit->add_option("-k", k, "iterations")->check(CLI::NonNegativeNumber);

  auto* spectrum = app.add_subcommand("spectrum", "values g(p) den(p) over den(p) <= bound");
  spectrum->add_option("function", input, "strong unit JSON")->required();
  spectrum->add_option("--bound", bound, "denominator bound")->check(CLI::PositiveNumber);

  auto* plot = app.add_subcommand("plot", "SVG of a map graph or an orbit trace");
  plot->add_option("map", input, "map JSON")->required();
  plot->add_option("--point", point, "draw the orbit trace of this point");
  plot->add_option("-N,--steps", steps, "orbit length");
  plot->add_option("--mode", mode_text, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  plot->add_option("-o,--output", output)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*validate) {
      const Json j = load_json(input);
      if (j.contains("matrices")) {
        const MapValidation v = validate_automorphism(load_map(j));
        out << "automorphism: " << yes(v.ok()) << "\n";
        if (v.ok()) out << "orientation: " << to_string(v.cert->orientation) << "\n";
        for (const auto& f : v.failures) out << "failure: " << f << "\n";
        return v.ok() ? 0 : 1;
      }
      if (j.contains("vertex_map")) {
        const CombinatorialIso iso = iso_from_json(j);
        out << "isomorphism: true\n";
        return 0;
      }
      if (j.contains("rows")) {
        const PWLFunction f = function_from_json(j);
        const StrongUnitResult su = is_strong_unit(f);
        out << "continuous: true\n";
        out << "positive cone: " << yes(su.min_value >= 0) << "\n";
        out << "strong unit: " << yes(su.strong_unit) << "\n";
        out << "min: " << to_string(su.min_value) << "\n";
        return 0;
      }
      const CellularComplex c = complex_from_json(j, false);
      const ValidationReport r = validate_complex(c, true);
      out << "valid: " << yes(r.ok()) << "\n";
      for (const auto& v : r.violations) out << "violation: " << v.kind << " " << v.detail << "\n";
      if (r.ok()) {
        const UnimodularityResult u = is_unimodular(c);
        out << "unimodular: " << yes(u.unimodular) << "\n";
        if (!u.unimodular) out << "witness: " << u.witness << "\n";
      }
      return r.ok() ? 0 : 1;
    }
    if (*build) {
      const CertifiedMap cm = from_combinatorial_iso(iso_from_json(load_json(input)));
      out << to_json(cm.map, &cm.cert).dump(2) << "\n";
      return 0;
    }
    if (*apply_cmd) {
      const PiecewiseFractionalMap map = load_map(read_input(input, in));
      out << format_point(apply(map, parse_point(point))) << "\n";
      return 0;
    }
    if (*pull) {
      const PiecewiseFractionalMap map = load_map(load_json(input));
      const PWLFunction f = function_from_json(load_json(input2));
      emit(to_json(pullback(map, f)).dump(2) + "\n", output, out);
      return 0;
    }
    if (*report) {
      const UnitFixingReport r = unit_fixing_report(load_map(load_json(input)), seed, samples);
      print_condition(out, "fixes_unit", r.fixes_unit);
      print_condition(out, "keeps_denominators", r.keeps_denominators);
      print_condition(out, "keeps_vertex_denominators", r.keeps_vertex_dens);
      print_condition(out, "last_rows_trivial", r.last_rows_trivial);
      print_condition(out, "unit_jacobian", r.unit_jacobian);
      out << "all: " << yes(r.all_true()) << "\n";
      out << "seed: " << seed << "\n";
      return 0;
    }
    if (*orbit_cmd) {
      const PiecewiseFractionalMap map = load_map(load_json(input));
      emit(orbit_csv(orbit(map, parse_point(point), steps, parse_mode(mode_text))), output, out);
      return 0;
    }
    if (*hist) {
      const FloatMap map(load_map(load_json(input)));
      EmpiricalMeasure m;
      if (starts > 0) {
        if (!*hist_seed) throw UsageError("--starts needs --seed");
        m = pushforward_histogram(map, starts, steps, seed, bins);
      } else if (!point.empty()) {
        m = birkhoff_histogram(map, to_floats(parse_point(point)), steps, bins, burn_in);
      } else {
        if (!*hist_seed) throw UsageError("a random start needs --seed");
        m = birkhoff_histogram(map, random_point(seed, map.dim()), steps, bins, burn_in);
      }
      emit(histogram_csv(m), output, out);
      return 0;
    }
    if (*unit) {
      const UnitOrbit u = unit_orbit(load_map(load_json(input)), k);
      for (std::size_t i = 0; i < u.units.size(); ++i) {
        out << "sigma^" << i << "(1l): cells " << u.units[i].complex().num_top() << ", min "
            << to_string(is_strong_unit(u.units[i]).min_value) << "\n";
      }
      out << "pairwise distinct: " << yes(u.pairwise_distinct) << "\n";
      return 0;
    }
    if (*spectrum) {
      const std::set<Integer> values = unit_value_spectrum(function_from_json(load_json(input)), bound);
      std::string line;
      for (const auto& v : values) line += (line.empty() ? "" : " ") + v.str();
      out << line << "\n";
      return 0;
    }
    if (*plot) {
      const PiecewiseFractionalMap map = load_map(load_json(input));
      if (!point.empty()) {
        emit(svg_orbit_trace(orbit(map, parse_point(point), steps, parse_mode(mode_text))), output, out);
      } else if (map.n() == 2) {
        emit(svg_map_graph(map), output, out);
      } else {
        emit(svg_complex_image(map), output, out);
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace chaut::cli
