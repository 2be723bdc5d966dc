#include "corrlab/state_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "corrlab/error.hpp"

namespace corrlab {

using nlohmann::json;

std::string to_string(StateSpec::Form f) {
  switch (f) {
    case StateSpec::Form::Matrix: return "matrix";
    case StateSpec::Form::Bloch: return "bloch";
    case StateSpec::Form::XState: return "x_state";
  }
  return "unknown";
}

namespace {

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ParseError(what + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(what + ": value is not finite");
  return v;
}

double field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return number(obj.at(key), where + "." + key);
}

int dimension(const json& obj, const std::string& where) {
  if (!obj.contains("d_A")) throw ParseError(where + ": missing \"d_A\"");
  const json& j = obj.at("d_A");
  if (!j.is_number_integer() || j.get<int>() < 2) {
    throw ParseError(where + ".d_A: expected an integer >= 2");
  }
  return j.get<int>();
}

RealVector vector_of(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw ParseError(where + ": expected an array of " + std::to_string(n) + " numbers");
  }
  RealVector v(n);
  for (int i = 0; i < n; ++i) v(i) = number(j[i], where);
  return v;
}

Complex complex_of(const json& j, const std::string& where) {
  if (j.is_number()) return {number(j, where), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError(where + ": expected [re, im]");
  return {number(j[0], where), number(j[1], where)};
}

BlochDecomposition parse_matrix(const json& m) {
  const std::string where = "matrix";
  if (!m.is_object()) throw ParseError("matrix: expected an object");
  const int d_A = dimension(m, where);
  const int n = 2 * d_A;
  if (!m.contains("entries") || !m.at("entries").is_array()) {
    throw ParseError("matrix.entries: expected an array");
  }
  const json& e = m.at("entries");
  DensityMatrix rho(n, n);
  if (static_cast<int>(e.size()) == n) {
    for (int i = 0; i < n; ++i) {
      if (!e[i].is_array() || static_cast<int>(e[i].size()) != n) {
        throw ParseError("matrix.entries: each row needs " + std::to_string(n) + " entries");
      }
      for (int j = 0; j < n; ++j) rho(i, j) = complex_of(e[i][j], "matrix.entries");
    }
  } else {
    if (static_cast<int>(e.size()) != n * n) {
      throw ParseError("matrix.entries: expected " + std::to_string(n * n) + " entries");
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) rho(i, j) = complex_of(e[i * n + j], "matrix.entries");
    }
  }
  try {
    return decompose(rho, d_A);
  } catch (const ValidationError& ex) {
    throw InvalidStateError(ex.what());
  }
}

BlochDecomposition parse_bloch(const json& m) {
  if (!m.is_object()) throw ParseError("bloch: expected an object");
  const int d_A = dimension(m, "bloch");
  const int dim = d_A * d_A - 1;
  BlochDecomposition b = BlochDecomposition::zero(d_A);
  for (const char* key : {"r_A", "r_B", "C"}) {
    if (!m.contains(key)) throw ParseError(std::string("bloch: missing \"") + key + "\"");
  }
  b.r_A = vector_of(m.at("r_A"), dim, "bloch.r_A");
  b.r_B = vector_of(m.at("r_B"), 3, "bloch.r_B");
  const json& c = m.at("C");
  if (!c.is_array() || static_cast<int>(c.size()) != dim) {
    throw ParseError("bloch.C: expected " + std::to_string(dim) + " rows of 3 numbers");
  }
  for (int i = 0; i < dim; ++i) b.C.row(i) = vector_of(c[i], 3, "bloch.C").transpose();
  try {
    b.validate();
  } catch (const ValidationError& ex) {
    throw InvalidStateError(ex.what());
  }
  return b;
}

XStateParams parse_x(const json& m) {
  if (!m.is_object()) throw ParseError("x_state: expected an object");
  XStateParams p;
  p.r_A = field(m, "r_A", "x_state");
  p.r_B = field(m, "r_B", "x_state");
  p.J_x = field(m, "J_x", "x_state");
  p.J_y = field(m, "J_y", "x_state");
  p.J_z = field(m, "J_z", "x_state");
  return p;
}

}  // namespace

StateSpec parse_state(const json& doc, double positivity_tol) {
  if (!doc.is_object()) throw ParseError("state file: expected a JSON object");
  int forms = 0;
  for (const char* key : {"matrix", "bloch", "x_state"}) forms += doc.contains(key) ? 1 : 0;
  if (forms != 1) {
    throw ParseError("state file: exactly one of \"matrix\", \"bloch\", \"x_state\" required");
  }
  StateSpec s;
  s.source = doc;
  if (doc.contains("matrix")) {
    s.form = StateSpec::Form::Matrix;
    s.state = parse_matrix(doc.at("matrix"));
  } else if (doc.contains("bloch")) {
    s.form = StateSpec::Form::Bloch;
    s.state = parse_bloch(doc.at("bloch"));
  } else {
    s.form = StateSpec::Form::XState;
    s.x = parse_x(doc.at("x_state"));
    if (!s.x->is_positive(positivity_tol)) {
      throw InvalidStateError("x_state: parameters violate positivity");
    }
    BlochDecomposition b = BlochDecomposition::zero(2);
    b.r_A(2) = s.x->r_A;
    b.r_B(2) = s.x->r_B;
    b.C(0, 0) = s.x->J_x;
    b.C(1, 1) = s.x->J_y;
    b.C(2, 2) = s.x->J_z - s.x->r_A * s.x->r_B;
    s.state = b;
  }
  require_physical(s.state, positivity_tol);
  return s;
}

StateSpec load_state_file(const std::string& path, double positivity_tol) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::exception& ex) {
    throw ParseError(std::string("state file: ") + ex.what());
  }
  return parse_state(doc, positivity_tol);
}

json to_json(const BlochDecomposition& b) {
  json c = json::array();
  for (int i = 0; i < b.C.rows(); ++i) c.push_back({b.C(i, 0), b.C(i, 1), b.C(i, 2)});
  return {{"d_A", b.d_A},
          {"r_A", std::vector<double>(b.r_A.data(), b.r_A.data() + b.r_A.size())},
          {"r_B", {b.r_B(0), b.r_B(1), b.r_B(2)}},
          {"C", c}};
}

}  // namespace corrlab
