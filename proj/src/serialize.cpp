#include "tl/serialize.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tl {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("json: " + what);
}

std::vector<int> int_vector(const Json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array of integers");
  std::vector<int> out;
  out.reserve(j.size());
  for (const Json& v : j) {
    require(v.is_number_integer(), what + " entries must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

// Reduced-word expansion sorted shortest word first, then lexicographically.
std::vector<JonesWord> sorted_words(const TLElement& x) {
  std::vector<JonesWord> words = element_to_reduced_words(x);
  std::sort(words.begin(), words.end(), [](const JonesWord& a, const JonesWord& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    return a.letters < b.letters;
  });
  return words;
}

std::string word_text(const std::vector<int>& letters) {
  if (letters.empty()) return "1";
  std::string out;
  for (int i : letters) {
    if (!out.empty()) out += ' ';
    out += 'e';
    out += std::to_string(i);
  }
  return out;
}

}  // namespace

Scalar scalar_from_json(const DomainPtr& dom, const Json& v) {
  if (v.is_number_integer()) return dom->from_int(v.get<long>());
  if (v.is_number_float()) return dom->from_double(v.get<double>());
  require(v.is_string(), "scalar must be a string or number");
  const std::string text = v.get<std::string>();
  try {
    return dom->parse(text);
  } catch (const std::exception&) {
    if (!dom->is_exact()) {
      char* end = nullptr;
      const double d = std::strtod(text.c_str(), &end);
      if (end && *end == '\0' && end != text.c_str()) return dom->from_double(d);
    }
    throw;
  }
}

std::string element_wordform(const TLElement& x) {
  const std::vector<JonesWord> words = sorted_words(x);
  if (words.empty()) return "0";
  std::string out;
  for (const JonesWord& w : words) {
    if (!out.empty()) out += " + ";
    const std::string word = word_text(w.letters);
    if (w.prefactor.is_one()) {
      out += word;
      continue;
    }
    std::string c = w.prefactor.str();
    if (c.find(' ') != std::string::npos) c = "(" + c + ")";
    if (w.letters.empty())
      out += c;
    else
      out += c + " \xc2\xb7 " + word;
  }
  return out;
}

Json element_to_json(const TLElement& x) {
  Json terms = Json::array();
  for (const JonesWord& w : sorted_words(x))
    terms.push_back({{"coeff", w.prefactor.str()}, {"word", w.letters}});
  return {{"n", x.strands()}, {"terms", terms}};
}

TLElement element_from_json(const DomainPtr& dom, const Json& j) {
  require(j.is_object(), "element must be an object");
  require(j.contains("n") && j["n"].is_number_integer(), "element needs an integer \"n\"");
  const int n = j["n"].get<int>();
  require(n >= 0, "element strand count must be nonnegative");
  TLElement x(dom, n);
  if (j.contains("terms")) {
    require(j["terms"].is_array(), "element \"terms\" must be an array");
    for (const Json& t : j["terms"]) {
      require(t.is_object() && t.contains("coeff") && t.contains("word"),
              "element term needs \"coeff\" and \"word\"");
      const Scalar c = scalar_from_json(dom, t["coeff"]);
      x += word_to_element(dom, n, int_vector(t["word"], "element word"), c);
    }
  }
  return x;
}

Json diagram_pairing(const Diagram& d) {
  return Json(d.matching());
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const Scalar& c : row) r.push_back(c.str());
    rows.push_back(std::move(r));
  }
  return rows;
}

Mat matrix_from_json(const DomainPtr& dom, const Json& j) {
  require(j.is_array(), "matrix must be an array of rows");
  Mat m;
  for (const Json& row : j) {
    require(row.is_array(), "matrix rows must be arrays");
    std::vector<Scalar> r;
    r.reserve(row.size());
    for (const Json& v : row) r.push_back(scalar_from_json(dom, v));
    m.push_back(std::move(r));
  }
  return m;
}

Json gram_to_json(const GramReport& rep) {
  Json basis = Json::array();
  for (size_t i = 0; i < rep.basis_diagrams.size(); ++i)
    basis.push_back({{"word", rep.basis_words[i]},
                     {"pairing", diagram_pairing(rep.basis_diagrams[i])}});
  return {{"n", rep.n},
          {"rank", rep.rank},
          {"positive_semidefinite", rep.positive_semidefinite},
          {"basis", basis},
          {"matrix", matrix_to_json(rep.matrix)}};
}

Json op_to_json(const ConcreteOp& op) {
  return {{"n", op.n}, {"src", op.src}, {"tgt", op.tgt}, {"matrix", matrix_to_json(op.m)}};
}

Json fmatrix_to_json(const FMatrix& F) {
  return {{"n", F.n},
          {"sigma", F.sigma},
          {"dimension", F.dimension.str()},
          {"entries", matrix_to_json(F.entries)}};
}

Json spectral_to_json(const SpectralElement& a) {
  Json terms = Json::array();
  for (const auto& [level, entries] : a.terms) {
    const auto& basis = word_basis_order(level);
    // Group the sparse entries by commutant word index.
    std::map<int, std::vector<std::pair<long, Scalar>>> by_word;
    for (const auto& [key, c] : entries) by_word[key.first].push_back({key.second, c});
    for (const auto& [i, cols] : by_word) {
      Json tl = {{"n", level},
                 {"terms", Json::array({Json{{"coeff", "1"}, {"word", basis[i].second}}})}};
      Json vec = Json::array();
      for (const auto& [col, c] : cols) {
        std::vector<int> digits(level, 0);
        long rest = col;
        for (int slot = level - 1; slot >= 0; --slot) {
          digits[slot] = static_cast<int>(rest % a.n);
          rest /= a.n;
        }
        vec.push_back({{"idx", digits}, {"coeff", c.str()}});
      }
      terms.push_back({{"level", level}, {"tl", std::move(tl)}, {"vec", std::move(vec)}});
    }
  }
  return {{"n", a.n}, {"terms", terms}};
}

SpectralElement spectral_from_json(const DomainPtr& dom, int expect_n, const Json& j) {
  require(j.is_object(), "spectral element must be an object");
  int n = expect_n;
  if (j.contains("n")) {
    require(j["n"].is_number_integer(), "spectral \"n\" must be an integer");
    n = j["n"].get<int>();
    require(expect_n <= 0 || n == expect_n, "spectral role dimension does not match the deformation");
  }
  require(n >= 1, "spectral element needs a positive role dimension");
  SpectralElement a = sp_zero(dom, n);
  if (!j.contains("terms")) return a;
  require(j["terms"].is_array(), "spectral \"terms\" must be an array");
  for (const Json& t : j["terms"]) {
    require(t.is_object() && t.contains("level") && t.contains("tl") && t.contains("vec"),
            "spectral term needs \"level\", \"tl\", \"vec\"");
    require(t["level"].is_number_integer(), "spectral level must be an integer");
    const int level = t["level"].get<int>();
    const TLElement T = element_from_json(dom, t["tl"]);
    require(T.strands() == level, "commutant strand count must equal the level");
    require(t["vec"].is_array(), "spectral \"vec\" must be an array");
    for (const Json& v : t["vec"]) {
      require(v.is_object() && v.contains("idx") && v.contains("coeff"),
              "vector entry needs \"idx\" and \"coeff\"");
      const std::vector<int> digits = int_vector(v["idx"], "vector index");
      require(static_cast<int>(digits.size()) == level, "vector index length must equal the level");
      for (int d : digits) require(d >= 0 && d < n, "vector index digit out of range");
      const Scalar c = scalar_from_json(dom, v["coeff"]);
      if (c.is_zero()) continue;
      a = sp_add(a, sp_scaled(sp_generator_idx(n, T, digits), c));
    }
  }
  return a;
}

Json coaction_to_json(const CoactionExpansion& e) {
  Json terms = Json::array();
  for (const auto& [word, el] : e.terms) {
    Json w = Json::array();
    for (const auto& [row, col] : word) w.push_back(Json::array({row, col}));
    terms.push_back({{"word", std::move(w)}, {"element", spectral_to_json(el)}});
  }
  return {{"n", e.n}, {"terms", terms}};
}

Json certificate_to_json(const LemmaCertificate& cert,
                         const std::string& domain_descriptor, double wall_ms) {
  Json cases = Json::array();
  for (const LemmaCase& c : cert.cases)
    cases.push_back(
        {{"case", c.label}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"equal", c.equal}});
  return {{"suite", cert.suite},
          {"domain", domain_descriptor},
          {"versions", Json{{"tl", kVersion}}},
          {"wall_ms", wall_ms},
          {"all_pass", cert.all_equal},
          {"cases", cases}};
}

Json graph_to_json(const PrincipalGraph& g) {
  return {{"name", g.name}, {"adjacency", g.adjacency}, {"star", g.star}};
}

PrincipalGraph graph_from_json(const Json& j) {
  require(j.is_object() && j.contains("adjacency"), "graph needs an \"adjacency\" matrix");
  require(j["adjacency"].is_array(), "graph adjacency must be an array of rows");
  std::vector<std::vector<int>> adjacency;
  for (const Json& row : j["adjacency"])
    adjacency.push_back(int_vector(row, "adjacency row"));
  int star = 0;
  if (j.contains("star")) {
    require(j["star"].is_number_integer(), "graph \"star\" must be an integer");
    star = j["star"].get<int>();
  }
  std::string name = "custom";
  if (j.contains("name")) {
    require(j["name"].is_string(), "graph \"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  return make_graph(name, adjacency, star);
}

}  // namespace tl
