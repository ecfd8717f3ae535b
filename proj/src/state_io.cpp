#include "telefid/state_io.hpp"

#include <fstream>
#include <sstream>

#include "telefid/errors.hpp"

namespace telefid {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::Parse, what); }

double number(const json& j, const char* where) {
  if (!j.is_number()) parse_fail(std::string("expected a number in ") + where);
  return j.get<double>();
}

Vec3 vec3(const json& j, const char* where) {
  if (!j.is_array() || j.size() != 3) parse_fail(std::string(where) + " must be an array of 3 numbers");
  return {number(j[0], where), number(j[1], where), number(j[2], where)};
}

}  // namespace

DensityMatrix state_from_json(const json& doc) {
  if (!doc.is_object()) parse_fail("state document must be a JSON object");
  const bool has_matrix = doc.contains("matrix");
  const bool has_hs = doc.contains("hs");
  if (has_matrix == has_hs) parse_fail("state document needs exactly one of \"matrix\" or \"hs\"");

  if (has_matrix) {
    const json& rows = doc["matrix"];
    if (!rows.is_array() || rows.size() != 4) parse_fail("\"matrix\" must have 4 rows");
    Mat4 m;
    for (std::size_t i = 0; i < 4; ++i) {
      if (!rows[i].is_array() || rows[i].size() != 4) parse_fail("each matrix row must have 4 entries");
      for (std::size_t j = 0; j < 4; ++j) {
        const json& e = rows[i][j];
        if (!e.is_array() || e.size() != 2) parse_fail("matrix entries must be [re, im] pairs");
        m(i, j) = cplx(number(e[0], "matrix"), number(e[1], "matrix"));
      }
    }
    return validate(m);
  }

  const json& hs = doc["hs"];
  if (!hs.is_object() || !hs.contains("R") || !hs.contains("S") || !hs.contains("T"))
    parse_fail("\"hs\" must contain R, S and T");
  HilbertSchmidtForm f;
  f.R = vec3(hs["R"], "R");
  f.S = vec3(hs["S"], "S");
  const json& t = hs["T"];
  if (!t.is_array() || t.size() != 3) parse_fail("T must have 3 rows");
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec3 row = vec3(t[i], "T");
    for (int j = 0; j < 3; ++j) f.T(static_cast<int>(i), j) = row[j];
  }
  return hs_compose(f);
}

DensityMatrix state_from_string(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  return state_from_json(doc);
}

DensityMatrix read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return state_from_string(buf.str());
}

json hs_to_json(const HilbertSchmidtForm& f) {
  json t = json::array();
  for (int i = 0; i < 3; ++i) t.push_back({f.T(i, 0), f.T(i, 1), f.T(i, 2)});
  return {{"R", f.R}, {"S", f.S}, {"T", t}};
}

json state_to_json(const DensityMatrix& rho, StateLayout layout) {
  json doc = {{"schema_version", 1}};
  if (layout == StateLayout::HilbertSchmidt) {
    doc["hs"] = hs_to_json(hs_decompose(rho));
    return doc;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < 4; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
    rows.push_back(row);
  }
  doc["matrix"] = rows;
  return doc;
}

void write_state_file(const std::filesystem::path& path, const DensityMatrix& rho, StateLayout layout) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << state_to_json(rho, layout).dump(2) << '\n';
}

}  // namespace telefid
