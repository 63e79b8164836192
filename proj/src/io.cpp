#include <fstream>
#include <iomanip>
#include <sstream>

#include "chaut/io.hpp"

namespace chaut {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field '") + name + "'");
  return j.at(name);
}

void check_format(const Json& j) {
  const Json& f = field(j, "format");
  if (!f.is_number_integer() || f.get<int>() != kFormatVersion) fail("unsupported format version");
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  fail("expected a rational string");
}

Rational rational_of(const Json& v) { return parse_rational(scalar_text(v)); }
Integer integer_of(const Json& v) { return parse_integer(scalar_text(v)); }

const Json& array_field(const Json& j, const char* name) {
  const Json& a = field(j, name);
  if (!a.is_array()) fail(std::string("field '") + name + "' must be an array");
  return a;
}

void write_complex_fields(Json& j, const CellularComplex& c) {
  j["ambient_dim"] = c.ambient_dim();
  Json verts = Json::array();
  for (const auto& v : c.vertices()) {
    Json p = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) p.push_back(to_string(v(i)));
    verts.push_back(std::move(p));
  }
  j["vertices"] = std::move(verts);
  Json tops = Json::array();
  for (std::size_t t = 0; t < c.num_top(); ++t) tops.push_back(c.top_cell(t));
  j["top_cells"] = std::move(tops);
}

ComplexPtr shared(CellularComplex c) { return std::make_shared<const CellularComplex>(std::move(c)); }

}  // namespace

Json to_json(const CellularComplex& c) {
  Json j;
  j["format"] = kFormatVersion;
  write_complex_fields(j, c);
  return j;
}

Json to_json(const PWLFunction& f) {
  Json j = to_json(f.complex());
  j["n"] = f.n();
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < f.rows().rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < f.rows().cols(); ++k) row.push_back(f.rows()(r, k).str());
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json to_json(const CombinatorialIso& iso) {
  Json j;
  j["format"] = kFormatVersion;
  j["source"] = to_json(*iso.source);
  j["target"] = to_json(*iso.target);
  j["vertex_map"] = iso.vertex_map;
  return j;
}

Json to_json(const PiecewiseFractionalMap& map, const AutomorphismCert* cert) {
  Json j = to_json(map.source());
  j["n"] = map.n();
  Json mats = Json::array();
  for (const auto& a : map.matrices()) {
    Json flat = Json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      for (Eigen::Index k = 0; k < a.cols(); ++k) flat.push_back(a(r, k).str());
    }
    mats.push_back(std::move(flat));
  }
  j["matrices"] = std::move(mats);
  if (cert) {
    j["cert"] = {{"dets", cert->det_per_cell}, {"orientation", std::string(to_string(cert->orientation))}};
  }
  return j;
}

CellularComplex complex_from_json(const Json& j, bool validate) {
  check_format(j);
  const Json& dim = field(j, "ambient_dim");
  if (!dim.is_number_integer() || dim.get<int>() < 1) fail("ambient_dim must be a positive integer");
  const int d = dim.get<int>();
  std::vector<Point> vertices;
  for (const auto& v : array_field(j, "vertices")) {
    if (!v.is_array() || static_cast<int>(v.size()) != d) fail("vertex with wrong number of coordinates");
    Point p(d);
    for (int i = 0; i < d; ++i) p(i) = rational_of(v[i]);
    vertices.push_back(std::move(p));
  }
  std::vector<std::vector<int>> tops;
  for (const auto& t : array_field(j, "top_cells")) {
    if (!t.is_array()) fail("top cell must be an array of vertex ids");
    std::vector<int> ids;
    for (const auto& id : t) {
      if (!id.is_number_integer()) fail("vertex id must be an integer");
      ids.push_back(id.get<int>());
    }
    tops.push_back(std::move(ids));
  }
  CellularComplex c = CellularComplex::from_cells(d, std::move(vertices), std::move(tops));
  if (validate) {
    const ValidationReport r = validate_complex(c, true);
    if (!r.ok()) throw Error(ErrorCode::InvalidComplex, r.violations.front().kind + ": " + r.violations.front().detail);
  }
  return c;
}

PWLFunction function_from_json(const Json& j) {
  ComplexPtr c = shared(complex_from_json(j));
  const int n = c->ambient_dim() + 1;
  const Json& rows = array_field(j, "rows");
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != n) fail("row with wrong length");
    for (int k = 0; k < n; ++k) m(static_cast<Eigen::Index>(r), k) = integer_of(rows[r][k]);
  }
  PWLFunction f(n, c, std::move(m));
  if (!f.is_continuous()) throw Error(ErrorCode::InvalidComplex, "function rows disagree on shared vertices");
  return f;
}

CombinatorialIso iso_from_json(const Json& j) {
  check_format(j);
  CombinatorialIso iso;
  iso.source = shared(complex_from_json(field(j, "source")));
  iso.target = shared(complex_from_json(field(j, "target")));
  for (const auto& v : array_field(j, "vertex_map")) {
    if (!v.is_number_integer()) fail("vertex_map entries must be integers");
    iso.vertex_map.push_back(v.get<int>());
  }
  check_iso(iso);
  return iso;
}

PiecewiseFractionalMap map_from_json(const Json& j) {
  ComplexPtr c = shared(complex_from_json(j));
  const int n = c->ambient_dim() + 1;
  std::vector<IntMatrix> mats;
  for (const auto& flat : array_field(j, "matrices")) {
    if (!flat.is_array() || static_cast<int>(flat.size()) != n * n) fail("matrix must have n*n entries");
    IntMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
      for (int k = 0; k < n; ++k) a(r, k) = integer_of(flat[r * n + k]);
    }
    mats.push_back(std::move(a));
  }
  return PiecewiseFractionalMap(n, c, std::move(mats));
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string orbit_csv(const OrbitRecord& orbit) {
  std::ostringstream out;
  const std::size_t dim = orbit.mode == Mode::Exact ? (orbit.exact.empty() ? 0 : orbit.exact[0].size())
                                                    : (orbit.approx.empty() ? 0 : orbit.approx[0].size());
  out << "step";
  for (std::size_t i = 1; i <= dim; ++i) out << ",coord_" << i;
  out << "\n";
  out << std::setprecision(17);
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    out << k;
    for (std::size_t i = 0; i < dim; ++i) {
      out << ",";
      if (orbit.mode == Mode::Exact) {
        out << to_string(orbit.exact[k](static_cast<Eigen::Index>(i)));
      } else {
        out << orbit.approx[k][i];
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string histogram_csv(const EmpiricalMeasure& m) {
  std::ostringstream out;
  for (int i = 1; i <= m.dim; ++i) out << "bin_" << i << ",";
  out << "count\n";
  for (std::size_t idx = 0; idx < m.counts.size(); ++idx) {
    std::vector<std::size_t> multi(m.dim);
    std::size_t rest = idx;
    for (int i = m.dim - 1; i >= 0; --i) {
      multi[i] = rest % static_cast<std::size_t>(m.bins);
      rest /= static_cast<std::size_t>(m.bins);
    }
    for (std::size_t b : multi) out << b << ",";
    out << m.counts[idx] << "\n";
  }
  return out.str();
}

}  // namespace chaut
