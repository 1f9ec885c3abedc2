#include "fsl/io.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#ifndef FSL_DEFAULT_FIXTURE_DIR
#define FSL_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace fsl::io {

namespace {

void check_fields(const Json& j, const std::string& what, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw InputError(what + ": expected a JSON object");
  std::set<std::string> known{"schema"};
  for (const char* k : required) {
    if (!j.contains(k)) throw InputError(what + ": missing field \"" + k + "\"");
    known.insert(k);
  }
  for (const char* k : optional) known.insert(k);
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw InputError(what + ": unknown field \"" + key + "\"");
  if (j.contains("schema") && !(j["schema"].is_number_integer() && j["schema"].get<long>() == 1))
    throw InputError(what + ": unsupported schema version");
}

long get_long(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InputError(what + ": expected an integer");
  return j.get<long>();
}

int get_epsilon(const Json& j, const std::string& what) {
  const long e = get_long(j, what + ".epsilon");
  if (e != 1 && e != -1) throw InputError(what + ": epsilon must be 1 or -1");
  return static_cast<int>(e);
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw InputError("bad integer \"" + j.get<std::string>() + "\"");
    return z;
  }
  throw InputError("expected an integer entry");
}

template <class T, class F>
Matrix<T> matrix_from_json(const Json& j, F entry) {
  if (!j.is_array()) throw InputError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array()) throw InputError("matrix rows must be arrays");
    if (i == 0) cols = j[i].size();
    if (j[i].size() != cols) throw InputError("matrix rows have different lengths");
  }
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = entry(j[i][c]);
  return m;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0) throw InputError("bad rational \"" + s + "\"");
    if (q.get_den() == 0) throw InputError("zero denominator in \"" + s + "\"");
    q.canonicalize();
    return q;
  }
  throw InputError("expected an integer or an \"a/b\" string");
}

Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

IntMatrix int_matrix_from_json(const Json& j) { return matrix_from_json<Integer>(j, integer_from_json); }
RatMatrix rat_matrix_from_json(const Json& j) { return matrix_from_json<Rational>(j, rational_from_json); }

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(Rational(m(i, c))));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrix_to_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(rational_to_json(m(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

EpsSymmetricForm form_from_json(const Json& j) {
  check_fields(j, "form", {"epsilon", "gram"});
  RatMatrix g = rat_matrix_from_json(j["gram"]);
  if (g.rows() != g.cols()) throw InputError("form: gram must be square");
  return EpsSymmetricForm(get_epsilon(j["epsilon"], "form"), std::move(g));
}

Json form_to_json(const EpsSymmetricForm& f) {
  Json j;
  j["schema"] = 1;
  j["epsilon"] = f.epsilon();
  j["gram"] = matrix_to_json(f.gram());
  return j;
}

LinkingForm linking_from_json(const Json& j) {
  check_fields(j, "linking", {"epsilon", "orders", "gram_num", "gram_den"});
  if (!j["orders"].is_array()) throw InputError("linking: orders must be an array");
  IntVector orders;
  for (const auto& d : j["orders"]) orders.push_back(integer_from_json(d));
  IntMatrix num = int_matrix_from_json(j["gram_num"]);
  IntMatrix den = int_matrix_from_json(j["gram_den"]);
  const std::size_t n = orders.size();
  if (num.rows() != n || num.cols() != n || den.rows() != n || den.cols() != n)
    throw InputError("linking: gram_num and gram_den must be square of the group's generator count");
  RatMatrix values(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (den(a, b) == 0) throw InputError("linking: zero denominator");
      values(a, b) = Rational(num(a, b), den(a, b));
      values(a, b).canonicalize();
    }
  return LinkingForm(get_epsilon(j["epsilon"], "linking"), std::move(orders), std::move(values));
}

Json linking_to_json(const LinkingForm& t) {
  Json j;
  j["schema"] = 1;
  j["epsilon"] = t.epsilon();
  Json orders = Json::array();
  for (const auto& d : t.orders()) orders.push_back(rational_to_json(Rational(d)));
  j["orders"] = orders;
  const std::size_t n = t.generators();
  IntMatrix num(n, n), den(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      num(a, b) = t.values()(a, b).get_num();
      den(a, b) = t.values()(a, b).get_den();
    }
  j["gram_num"] = matrix_to_json(num);
  j["gram_den"] = matrix_to_json(den);
  return j;
}

SimplicialManifold manifold_from_json(const Json& j) {
  check_fields(j, "manifold", {"dimension", "facets"}, {"signs"});
  const long d = get_long(j["dimension"], "manifold.dimension");
  if (d < 1) throw InputError("manifold: dimension must be positive");
  if (!j["facets"].is_array() || j["facets"].empty()) throw InputError("manifold: facets must be a nonempty array");
  std::vector<std::vector<long>> facets;
  for (const auto& f : j["facets"]) {
    if (!f.is_array() || f.size() != static_cast<std::size_t>(d + 1))
      throw InputError("manifold: every facet needs dimension+1 vertices");
    std::vector<long> v;
    for (const auto& x : f) v.push_back(get_long(x, "manifold.facets"));
    facets.push_back(std::move(v));
  }
  if (!j.contains("signs")) return SimplicialManifold::oriented(static_cast<std::size_t>(d), facets);
  if (!j["signs"].is_array() || j["signs"].size() != facets.size())
    throw InputError("manifold: signs must list one sign per facet");
  std::vector<int> signs;
  for (const auto& s : j["signs"]) {
    const long v = get_long(s, "manifold.signs");
    if (v != 1 && v != -1) throw InputError("manifold: signs must be 1 or -1");
    signs.push_back(static_cast<int>(v));
  }
  return SimplicialManifold(static_cast<std::size_t>(d), facets, signs);
}

Json manifold_to_json(const SimplicialManifold& m) {
  Json j;
  j["schema"] = 1;
  j["dimension"] = m.dimension();
  Json facets = Json::array();
  for (const auto& f : m.facets()) facets.push_back(f);
  j["facets"] = facets;
  j["signs"] = m.signs();
  return j;
}

SystemSpec system_from_json(const Json& j) {
  check_fields(j, "system", {"rank", "edges"}, {"pairing"});
  const long rank = get_long(j["rank"], "system.rank");
  if (rank < 1) throw InputError("system: rank must be positive");
  if (!j["edges"].is_object()) throw InputError("system: edges must be an object keyed \"i,j\"");
  std::map<LocalSystem::Edge, IntMatrix> transport;
  for (const auto& [key, value] : j["edges"].items()) {
    std::size_t a = 0, b = 0;
    char comma = 0;
    std::istringstream ks(key);
    if (!(ks >> a >> comma >> b) || comma != ',' || !ks.eof())
      throw InputError("system: bad edge key \"" + key + "\"");
    if (!transport.emplace(LocalSystem::Edge{a, b}, int_matrix_from_json(value)).second)
      throw InputError("system: duplicate edge \"" + key + "\"");
  }
  SystemSpec spec{LocalSystem(static_cast<std::size_t>(rank), std::move(transport)), std::nullopt};
  if (j.contains("pairing")) spec.pairing = form_from_json(j["pairing"]);
  return spec;
}

Json system_to_json(const LocalSystem& s, const std::optional<EpsSymmetricForm>& pairing) {
  Json j;
  j["schema"] = 1;
  j["rank"] = s.rank();
  Json edges = Json::object();
  for (const auto& [e, m] : s.edges()) edges[std::to_string(e.first) + "," + std::to_string(e.second)] = matrix_to_json(m);
  j["edges"] = edges;
  if (pairing) j["pairing"] = form_to_json(*pairing);
  return j;
}

Isometry isometry_from_json(const Json& j) {
  check_fields(j, "isometry", {"form", "matrix"});
  return Isometry(form_from_json(j["form"]), int_matrix_from_json(j["matrix"]));
}

Json isometry_to_json(const Isometry& phi) {
  Json j;
  j["schema"] = 1;
  j["form"] = form_to_json(phi.form());
  j["matrix"] = matrix_to_json(phi.matrix());
  return j;
}

Json poly_to_json(const GradedPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) terms.push_back(Json{{"coefficient", c.get_str()}, {"monomial", m.to_string()}});
  return terms;
}

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("FSL_FIXTURES"); env && *env) return env;
  return FSL_DEFAULT_FIXTURE_DIR;
}

Json load_fixture(const std::string& name) { return read_json_file(fixture_dir() / name); }

}  // namespace fsl::io
