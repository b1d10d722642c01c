#include "weil/cli/document.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace weil::cli {

namespace {

using nlohmann::json;
using exactalg::Rational;
using exactalg::RatMatrix;
using frobmod::DeclaredPart;
using frobmod::DivisiblePart;
using frobmod::FinitePart;
using frobmod::FrobeniusModule;
using frobmod::LatticePart;
using frobmod::Part;
using frobmod::PrimeSupport;
using frobmod::RationalPart;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InvalidInput(path + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) fail(path, "unknown field \"" + k + "\"");
  }
}

Integer parse_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<unsigned long>()) : Integer(j.get<long>());
  if (j.is_string()) {
    Integer out;
    if (out.set_str(j.get<std::string>(), 10) != 0) fail(path, "not an integer: " + j.get<std::string>());
    return out;
  }
  fail(path, "expected an integer");
}

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

long parse_long(const json& j, const std::string& path) {
  const Integer x = parse_integer(j, path);
  if (!x.fits_slong_p()) fail(path, "integer out of range");
  return x.get_si();
}

std::size_t parse_size(const json& j, const std::string& path) {
  const long x = parse_long(j, path);
  if (x < 0) fail(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(x);
}

Rational parse_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(parse_integer(j, path));
  if (!j.is_string()) fail(path, "expected \"num/den\" or an integer");
  const std::string s = j.get<std::string>();
  Rational out;
  if (s.empty() || out.set_str(s, 10) != 0) fail(path, "not a rational: " + s);
  if (out.get_den() == 0) fail(path, "zero denominator");
  out.canonicalize();
  return out;
}

json rational_json(const Rational& x) {
  return json(x.get_num().get_str() + "/" + x.get_den().get_str());
}

std::vector<Integer> parse_integer_list(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_integer(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

json integer_list_json(const std::vector<Integer>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(integer_json(x));
  return out;
}

std::vector<std::vector<Integer>> parse_rows(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of rows");
  std::vector<std::vector<Integer>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(parse_integer_list(j[i], path + "[" + std::to_string(i) + "]"));
  return rows;
}

IntMatrix parse_matrix(const json& j, const std::string& path) {
  const auto rows = parse_rows(j, path);
  for (const auto& r : rows)
    if (r.size() != rows.front().size()) fail(path, "rows have different lengths");
  return IntMatrix::from_rows(rows);
}

json matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

RatMatrix parse_rational_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected a list of rows");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array()) fail(rp, "expected a row");
    std::vector<Rational> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(parse_rational(j[i][k], rp + "[" + std::to_string(k) + "]"));
    if (!rows.empty() && row.size() != rows.front().size()) fail(path, "rows have different lengths");
    rows.push_back(std::move(row));
  }
  return RatMatrix::from_rows(rows);
}

json rational_matrix_json(const RatMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

void require_square(const IntMatrix& m, std::size_t size, const std::string& path) {
  if (m.rows() != size || m.cols() != size)
    fail(path, "phi must be " + std::to_string(size) + "x" + std::to_string(size));
}

PrimeSupport parse_support(const json& j, const std::string& path) {
  only_keys(j, {"coprime_to", "primes"}, path);
  if (j.contains("coprime_to") == j.contains("primes")) fail(path, "give exactly one of coprime_to, primes");
  if (j.contains("coprime_to")) return PrimeSupport::coprime_to(parse_size(j["coprime_to"], path + ".coprime_to"));
  std::vector<unsigned long> ls;
  const auto& primes = j["primes"];
  if (!primes.is_array()) fail(path + ".primes", "expected a list");
  for (std::size_t i = 0; i < primes.size(); ++i) ls.push_back(parse_size(primes[i], path + ".primes"));
  return PrimeSupport::primes(std::move(ls));
}

json support_json(const PrimeSupport& s) {
  if (s.is_coprime_form()) return json{{"coprime_to", s.excluded_prime()}};
  return json{{"primes", s.explicit_primes()}};
}

Part parse_part(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const json& kind_j = field(j, "kind", path);
  if (!kind_j.is_string()) fail(path + ".kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();
  if (kind == "lattice") {
    only_keys(j, {"kind", "phi"}, path);
    IntMatrix phi = parse_matrix(field(j, "phi", path), path + ".phi");
    require_square(phi, phi.rows(), path);
    return LatticePart{std::move(phi)};
  }
  if (kind == "finite") {
    only_keys(j, {"kind", "relations", "phi"}, path);
    IntMatrix phi = parse_matrix(field(j, "phi", path), path + ".phi");
    require_square(phi, phi.rows(), path);
    const auto relations = parse_rows(field(j, "relations", path), path + ".relations");
    for (const auto& r : relations)
      if (r.size() != phi.rows()) fail(path + ".relations", "each relation needs one entry per generator");
    return FinitePart{exactalg::FpGroup(IntMatrix::from_columns(relations, phi.rows())), std::move(phi)};
  }
  if (kind == "divisible") {
    only_keys(j, {"kind", "rank", "support", "phi"}, path);
    const std::size_t rank = parse_size(field(j, "rank", path), path + ".rank");
    IntMatrix phi = parse_matrix(field(j, "phi", path), path + ".phi");
    require_square(phi, rank, path);
    return DivisiblePart{parse_support(field(j, "support", path), path + ".support"), std::move(phi)};
  }
  if (kind == "declared") {
    only_keys(j, {"kind", "invariant_factors", "note"}, path);
    const auto factors = parse_integer_list(field(j, "invariant_factors", path), path + ".invariant_factors");
    for (const auto& f : factors)
      if (f <= 0) fail(path + ".invariant_factors", "declared parts must be finite");
    std::string note;
    if (j.contains("note")) {
      if (!j["note"].is_string()) fail(path + ".note", "expected a string");
      note = j["note"].get<std::string>();
    }
    return DeclaredPart{exactalg::FpGroup::from_invariants(factors), note};
  }
  if (kind == "rational") {
    only_keys(j, {"kind", "phi"}, path);
    RatMatrix phi = parse_rational_matrix(field(j, "phi", path), path + ".phi");
    if (phi.rows() != phi.cols()) fail(path, "phi must be square");
    return RationalPart{std::move(phi)};
  }
  fail(path + ".kind", "unknown part kind \"" + kind + "\"");
}

json part_json(const Part& part) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, LatticePart>) {
          return {{"kind", "lattice"}, {"phi", matrix_json(p.phi)}};
        } else if constexpr (std::is_same_v<T, FinitePart>) {
          json relations = json::array();
          const IntMatrix& rel = p.group.relations();
          for (std::size_t c = 0; c < rel.cols(); ++c) relations.push_back(integer_list_json(rel.column(c)));
          return {{"kind", "finite"}, {"relations", relations}, {"phi", matrix_json(p.phi)}};
        } else if constexpr (std::is_same_v<T, DivisiblePart>) {
          return {{"kind", "divisible"},
                  {"rank", p.phi.rows()},
                  {"support", support_json(p.support)},
                  {"phi", matrix_json(p.phi)}};
        } else if constexpr (std::is_same_v<T, DeclaredPart>) {
          return {{"kind", "declared"},
                  {"invariant_factors", integer_list_json(p.invariants.invariant_factors())},
                  {"note", p.note}};
        } else {
          return {{"kind", "rational"}, {"phi", rational_matrix_json(p.phi)}};
        }
      },
      part);
}

int parse_degree(const std::string& key, int d, const std::string& path) {
  std::size_t used = 0;
  int t = 0;
  try {
    t = std::stoi(key, &used);
  } catch (const std::exception&) {
    fail(path, "degree key \"" + key + "\" is not an integer");
  }
  if (used != key.size() || std::to_string(t) != key) fail(path, "degree key \"" + key + "\" is not canonical");
  if (t < 0 || t > 2 * d + 1) fail(path, "degree " + key + " outside [0, " + std::to_string(2 * d + 1) + "]");
  return t;
}

}  // namespace

InputDocument parse_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  only_keys(root, {"q", "p", "d", "n", "etale", "zeta", "point_counts", "hodge", "pairing", "motivic_q_dims"}, "$");

  InputDocument doc;
  doc.q = parse_integer(field(root, "q", "$"), "$.q");
  doc.p = parse_size(field(root, "p", "$"), "$.p");
  const long d = parse_long(field(root, "d", "$"), "$.d");
  if (d < 0 || d > 1000) fail("$.d", "dimension out of range");
  doc.d = static_cast<int>(d);
  doc.n = parse_long(field(root, "n", "$"), "$.n");

  const json& etale = field(root, "etale", "$");
  if (!etale.is_object()) fail("$.etale", "expected an object keyed by degree");
  for (const auto& [key, spec] : etale.items()) {
    const std::string path = "$.etale." + key;
    const int t = parse_degree(key, doc.d, path);
    only_keys(spec, {"parts"}, path);
    const json& parts = field(spec, "parts", path);
    if (!parts.is_array()) fail(path + ".parts", "expected a list");
    std::vector<Part> out;
    for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(parse_part(parts[i], path + ".parts[" + std::to_string(i) + "]"));
    doc.etale[t] = FrobeniusModule(std::move(out));
  }

  if (root.contains("zeta")) {
    only_keys(root["zeta"], {"factors"}, "$.zeta");
    doc.zeta_factors = parse_rows(field(root["zeta"], "factors", "$.zeta"), "$.zeta.factors");
  }
  if (root.contains("point_counts")) {
    doc.point_counts = parse_integer_list(root["point_counts"], "$.point_counts");
    if (doc.point_counts->empty()) fail("$.point_counts", "must be nonempty when present");
  }
  if (root.contains("hodge")) {
    const auto rows = parse_rows(root["hodge"], "$.hodge");
    zetaval::HodgeTable h;
    for (const auto& r : rows) {
      std::vector<long> row;
      for (const auto& x : r) {
        if (x < 0 || !x.fits_slong_p()) fail("$.hodge", "Hodge numbers must be nonnegative");
        row.push_back(x.get_si());
      }
      h.push_back(std::move(row));
    }
    doc.hodge = std::move(h);
  }
  if (root.contains("pairing")) {
    doc.pairing = parse_matrix(root["pairing"], "$.pairing");
    if (doc.pairing->rows() != doc.pairing->cols()) fail("$.pairing", "pairing must be square");
  }
  if (root.contains("motivic_q_dims")) {
    const json& dims = root["motivic_q_dims"];
    if (!dims.is_object()) fail("$.motivic_q_dims", "expected an object keyed by degree");
    std::map<int, std::size_t> out;
    for (const auto& [key, v] : dims.items()) {
      std::size_t used = 0;
      int i = 0;
      try {
        i = std::stoi(key, &used);
      } catch (const std::exception&) {
        fail("$.motivic_q_dims", "key \"" + key + "\" is not an integer");
      }
      if (used != key.size()) fail("$.motivic_q_dims", "key \"" + key + "\" is not an integer");
      out[i] = parse_size(v, "$.motivic_q_dims." + key);
    }
    doc.motivic_q_dims = std::move(out);
  }
  return doc;
}

std::string serialize_document(const InputDocument& doc) {
  json root;
  root["q"] = integer_json(doc.q);
  root["p"] = doc.p;
  root["d"] = doc.d;
  root["n"] = doc.n;
  json etale = json::object();
  for (const auto& [t, m] : doc.etale) {
    json parts = json::array();
    for (const auto& part : m.parts()) parts.push_back(part_json(part));
    etale[std::to_string(t)] = {{"parts", parts}};
  }
  root["etale"] = etale;
  if (doc.zeta_factors) {
    json factors = json::array();
    for (const auto& f : *doc.zeta_factors) factors.push_back(integer_list_json(f));
    root["zeta"] = {{"factors", factors}};
  }
  if (doc.point_counts) root["point_counts"] = integer_list_json(*doc.point_counts);
  if (doc.hodge) root["hodge"] = *doc.hodge;
  if (doc.pairing) root["pairing"] = matrix_json(*doc.pairing);
  if (doc.motivic_q_dims) {
    json dims = json::object();
    for (const auto& [i, v] : *doc.motivic_q_dims) dims[std::to_string(i)] = v;
    root["motivic_q_dims"] = dims;
  }
  return root.dump(2) + "\n";
}

InputDocument read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

weilcoh::EtaleData etale_data(const InputDocument& doc) {
  weilcoh::EtaleData data;
  data.q = doc.q;
  data.p = doc.p;
  data.d = doc.d;
  data.n = doc.n;
  data.modules = doc.etale;
  return data;
}

zetaval::ZetaInput zeta_input(const InputDocument& doc) {
  if (!doc.zeta_factors) throw InvalidInput("$: the document has no \"zeta\" section");
  zetaval::ZetaInput z;
  z.q = doc.q;
  z.factors = *doc.zeta_factors;
  z.point_counts = doc.point_counts;
  return z;
}

InputDocument document_from_example(const zetaval::ExampleData& ex) {
  InputDocument doc;
  doc.q = ex.etale.q;
  doc.p = ex.etale.p;
  doc.d = ex.etale.d;
  doc.n = ex.etale.n;
  doc.etale = ex.etale.modules;
  doc.zeta_factors = ex.zeta.factors;
  doc.point_counts = ex.zeta.point_counts;
  doc.hodge = ex.hodge;
  doc.pairing = ex.pairing;
  doc.motivic_q_dims = ex.motivic_dims;
  return doc;
}

}  // namespace weil::cli
