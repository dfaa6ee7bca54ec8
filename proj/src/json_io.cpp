#include "qdj/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qdj::io {

namespace {

std::string dec(const Real& x) { return to_decimal_string(x); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T, class Parse>
Matrix<T> matrix_from_json(const json& j, Parse parse) {
  if (!j.is_array()) throw std::invalid_argument("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || row.size() != cols) throw std::invalid_argument("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse(row.at(c));
  }
  return m;
}

QScalar parse_q(const json& j) {
  if (j.is_string()) return QScalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return QScalar(j.get<long>());
  throw std::invalid_argument("exact entries must be rational strings, got " + j.dump());
}

Real parse_r(const json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number()) return parse_real(j.dump());
  throw std::invalid_argument("real entries must be strings or numbers, got " + j.dump());
}

template <class M>
json matrix_list(const std::vector<M>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

template <class T, class Parse>
std::vector<Matrix<T>> matrix_list_from_json(const json& j, Parse parse) {
  if (!j.is_array()) throw std::invalid_argument("expected a list of matrices");
  std::vector<Matrix<T>> out;
  for (const auto& m : j) out.push_back(matrix_from_json<T>(m, parse));
  return out;
}

std::string pass_str(bool pass) { return pass ? "pass" : "FAIL"; }

}  // namespace

json to_json(const QMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const RealMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(dec(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

QMatrix qmatrix_from_json(const json& j) { return matrix_from_json<QScalar>(j, parse_q); }
RealMatrix real_matrix_from_json(const json& j) { return matrix_from_json<Real>(j, parse_r); }

json to_json(const CartanDatum& c) { return json{{"label", c.label}, {"a", c.a}, {"d", c.d}}; }

CartanDatum cartan_from_json(const json& j) {
  if (j.is_string()) return builtin_cartan(j.get<std::string>());
  CartanDatum c;
  c.label = j.value("label", std::string());
  if (!j.contains("a") && !c.label.empty()) return builtin_cartan(c.label);
  c.a = require(j, "a").get<std::vector<std::vector<int>>>();
  c.d = require(j, "d").get<std::vector<int>>();
  c.rank = static_cast<int>(c.a.size());
  c.validate();
  return c;
}

json to_json(const Rep& r) {
  return json{{"cartan", to_json(r.cartan)}, {"q", r.q.str()},          {"dim", r.dim},
              {"E", matrix_list(r.E)},       {"F", matrix_list(r.F)},   {"K", matrix_list(r.K)},
              {"gram", to_json(r.gram)}};
}

Rep rep_from_json(const json& j) {
  Rep r;
  r.cartan = cartan_from_json(require(j, "cartan"));
  r.q = parse_q(require(j, "q"));
  r.dim = require(j, "dim").get<std::size_t>();
  r.E = matrix_list_from_json<QScalar>(require(j, "E"), parse_q);
  r.F = matrix_list_from_json<QScalar>(require(j, "F"), parse_q);
  r.K = matrix_list_from_json<QScalar>(require(j, "K"), parse_q);
  r.gram = j.contains("gram") ? qmatrix_from_json(j.at("gram")) : QMatrix::identity(r.dim);
  const auto rank = static_cast<std::size_t>(r.cartan.rank);
  if (r.E.size() != rank || r.F.size() != rank || r.K.size() != rank) {
    throw std::invalid_argument("representation needs one E, F and K matrix per node");
  }
  auto check = [&](const QMatrix& m, const char* what) {
    if (m.rows() != r.dim || m.cols() != r.dim) {
      throw std::invalid_argument(std::string(what) + " is not " + std::to_string(r.dim) + "x" + std::to_string(r.dim));
    }
  };
  for (std::size_t i = 0; i < rank; ++i) {
    check(r.E[i], "E");
    check(r.F[i], "F");
    check(r.K[i], "K");
  }
  check(r.gram, "gram");
  return r;
}

json to_json(const RelationReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back(json{{"relation", e.relation}, {"i", e.i}, {"j", e.j}, {"residual", e.residual}, {"pass", e.pass}});
  }
  json out{{"mode", r.exact ? "exact" : "approximate"}};
  if (!r.exact) out["tol"] = r.tol;
  out["passed"] = r.passed();
  out["relations"] = std::move(entries);
  return out;
}

json to_json(const CGDecomposition& cg) {
  json comps = json::array();
  for (const auto& c : cg.components) {
    json norms = json::array();
    for (const auto& n : c.norms_sq) norms.push_back(n.str());
    comps.push_back(json{{"label", c.label}, {"embedding", to_json(c.embedding)}, {"norms_sq", norms}});
  }
  return json{{"a", cg.a},
              {"b", cg.b},
              {"q", cg.q.str()},
              {"labels", cg.labels()},
              {"components", comps},
              {"completeness_residual", cg.completeness_residual.is_zero() ? "0" : cg.completeness_residual.str()},
              {"intertwine_residual", cg.intertwine_residual.is_zero() ? "0" : cg.intertwine_residual.str()},
              {"pass", cg.completeness_residual.is_zero() && cg.intertwine_residual.is_zero()}};
}

json to_json(const TwistBlock& t, const Real& tol) {
  return json{{"a", t.a},
              {"b", t.b},
              {"q", t.q.str()},
              {"labels", t.labels},
              {"gauge", t.gauge},
              {"unitarity_residual", dec(t.unitarity_residual)},
              {"intertwine_residual", dec(t.intertwine_residual)},
              {"pass", t.passed(tol)},
              {"F", to_json(t.F)}};
}

json to_json(const AssociatorBlock& a, const Real& tol) {
  return json{{"a", a.a},
              {"b", a.b},
              {"c", a.c},
              {"q", a.q.str()},
              {"commutation_residual", dec(a.commutation_residual)},
              {"unitarity_residual", dec(a.unitarity_residual)},
              {"identity_residual", dec(a.identity_residual)},
              {"pass", a.passed(tol)},
              {"Phi", to_json(a.Phi)}};
}

json to_json(const Action& a) {
  json out{{"cartan", to_json(a.cartan)}, {"q", a.q.str()}, {"blocks", a.blocks},
           {"E", matrix_list(a.E)},       {"F", matrix_list(a.F)}, {"K", matrix_list(a.K)}};
  if (!a.gram.empty()) out["gram"] = matrix_list(a.gram);
  return out;
}

json to_json(const RealAction& a) {
  json out{{"cartan", to_json(a.cartan)}, {"q", a.q.str()}, {"blocks", a.blocks},
           {"E", matrix_list(a.E)},       {"F", matrix_list(a.F)}, {"K", matrix_list(a.K)}};
  if (!a.gram.empty()) out["gram"] = matrix_list(a.gram);
  return out;
}

RealAction action_from_json(const json& j) {
  RealAction a;
  a.cartan = cartan_from_json(require(j, "cartan"));
  a.q = parse_q(require(j, "q"));
  a.blocks = require(j, "blocks").get<std::vector<std::size_t>>();
  a.E = matrix_list_from_json<Real>(require(j, "E"), parse_r);
  a.F = matrix_list_from_json<Real>(require(j, "F"), parse_r);
  a.K = matrix_list_from_json<Real>(require(j, "K"), parse_r);
  if (j.contains("gram")) a.gram = matrix_list_from_json<Real>(j.at("gram"), parse_r);
  a.validate();
  return a;
}

json to_json(const LiftResult& r, const Real& tol) {
  json residuals = json::object();
  for (const auto& [name, value] : r.residuals) {
    residuals[name] = json{{"value", dec(value)}, {"pass", value <= tol}};
  }
  return json{{"cartan", to_json(r.cartan)},
              {"q", r.q.str()},
              {"blocks", r.blocks},
              {"inverted", r.inverted},
              {"tol", dec(tol)},
              {"passed", r.passed(tol)},
              {"residuals", residuals},
              {"e", matrix_list(r.e)},
              {"f", matrix_list(r.f)},
              {"k", matrix_list(r.k)}};
}

json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::string CsvTable::str() const {
  auto cell = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cell(cells[i]);
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

CsvTable to_csv(const RelationReport& r) {
  CsvTable t{{"relation", "i", "j", "residual", "status"}, {}};
  for (const auto& e : r.entries) {
    t.rows.push_back({e.relation, std::to_string(e.i), std::to_string(e.j), e.residual, pass_str(e.pass)});
  }
  return t;
}

CsvTable to_csv(const std::vector<TwistBlock>& blocks, const Real& tol) {
  CsvTable t{{"a", "b", "q", "unitarity_residual", "intertwine_residual", "status"}, {}};
  for (const auto& b : blocks) {
    t.rows.push_back({std::to_string(b.a), std::to_string(b.b), b.q.str(), to_decimal_string(b.unitarity_residual, 6),
                      to_decimal_string(b.intertwine_residual, 6),
                      pass_str(b.passed(tol))});
  }
  return t;
}

CsvTable to_csv(const std::vector<AssociatorBlock>& blocks, const Real& tol) {
  CsvTable t{{"a", "b", "c", "q", "commutation_residual", "unitarity_residual", "identity_residual", "status"}, {}};
  for (const auto& b : blocks) {
    t.rows.push_back({std::to_string(b.a), std::to_string(b.b), std::to_string(b.c), b.q.str(),
                      to_decimal_string(b.commutation_residual, 6), to_decimal_string(b.unitarity_residual, 6),
                      to_decimal_string(b.identity_residual, 6),
                      pass_str(b.passed(tol))});
  }
  return t;
}

CsvTable to_csv(const LiftResult& r, const Real& tol) {
  CsvTable t{{"residual", "value", "status"}, {}};
  for (const auto& [name, value] : r.residuals) {
    t.rows.push_back({name, to_decimal_string(value, 6), pass_str(value <= tol)});
  }
  return t;
}

CsvTable to_csv(const CGDecomposition& cg) {
  CsvTable t{{"a", "b", "q", "label", "dim"}, {}};
  for (const auto& c : cg.components) {
    t.rows.push_back({std::to_string(cg.a), std::to_string(cg.b), cg.q.str(), std::to_string(c.label),
                      std::to_string(c.label + 1)});
  }
  return t;
}

}  // namespace qdj::io
