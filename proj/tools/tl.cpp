// Command-line front end for the exact Temperley-Lieb engine: domain
// configuration, element I/O, verification sweeps, and machine-readable
// certificates.
//
// Exit codes: 0 success / all cases pass, 1 verification failure, 2 usage
// error. JSON, CSV, and DOT go to stdout; diagnostics go to stderr.
#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tl/serialize.hpp"

namespace {

using namespace tl;

constexpr int kDefaultCutoff = 6;

int read_cutoff_env() {
  const char* env = std::getenv("TL_MAX_LEVEL");
  if (!env || !*env) return kDefaultCutoff;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (!end || *end != '\0' || v < 0)
    throw std::invalid_argument("TL_MAX_LEVEL must be a nonnegative integer");
  return static_cast<int>(v);
}

DomainPtr make_domain(const std::string& descriptor, double eps) {
  if (eps > 0) {
    if (descriptor.rfind("float:", 0) != 0)
      throw std::invalid_argument("--eps applies only to float domains");
    return Domain::make(descriptor + ",eps=" + std::to_string(eps));
  }
  return Domain::make(descriptor);
}

// --F accepts "I<p>" (identity deformation on C^p), "t=<scalar>" (the
// canonical 2x2 deformation), an inline JSON matrix of scalar strings, or
// "@<path>" reading that JSON from a file.
FMatrix make_F(const DomainPtr& dom, const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("--F must not be empty");
  if (spec[0] == 'I') {
    const std::string digits = spec.substr(1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("identity deformation must be I<p>, e.g. I2");
    return identity_F(dom, std::stoi(digits));
  }
  if (spec.rfind("t=", 0) == 0) return canonical_F2(dom, dom->parse(spec.substr(2)));
  if (spec[0] == '[') return validate_F(dom, matrix_from_json(dom, Json::parse(spec)));
  if (spec[0] == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw std::invalid_argument("cannot open F matrix file: " + spec.substr(1));
    return validate_F(dom, matrix_from_json(dom, Json::parse(in)));
  }
  throw std::invalid_argument("unrecognized --F value: " + spec);
}

Json read_stdin_json() {
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  return Json::parse(buf.str());
}

std::vector<int> parse_word(const std::string& text) {
  std::istringstream in(text);
  std::vector<int> letters;
  std::string tok;
  while (in >> tok) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("word letter is not an integer: " + tok);
    }
    if (used != tok.size())
      throw std::invalid_argument("word letter is not an integer: " + tok);
    letters.push_back(v);
  }
  return letters;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

void print_element(const TLElement& x, bool as_json) {
  if (as_json)
    print_json(element_to_json(x));
  else
    std::cout << element_wordform(x) << '\n';
}

PrincipalGraph load_graph(const std::string& name, const std::string& json_path) {
  if (!name.empty() && !json_path.empty())
    throw std::invalid_argument("give either --graph or --graph-json, not both");
  if (!name.empty()) {
    if (name[0] != 'A' || name.size() < 2 ||
        name.find_first_not_of("0123456789", 1) != std::string::npos)
      throw std::invalid_argument("built-in graphs are A<m>, e.g. A5; use --graph-json otherwise");
    return graph_A(std::stoi(name.substr(1)));
  }
  if (json_path.empty()) throw std::invalid_argument("a graph is required: --graph or --graph-json");
  if (json_path == "-") return graph_from_json(read_stdin_json());
  std::ifstream in(json_path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + json_path);
  return graph_from_json(Json::parse(in));
}

// Prints the certificate and converts its verdict into the exit code.
int emit_certificate(const LemmaCertificate& cert, const std::string& domain_descriptor,
                     std::chrono::steady_clock::time_point t0) {
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  print_json(certificate_to_json(cert, domain_descriptor, wall_ms));
  return cert.all_equal ? 0 : 1;
}

struct CommonOpts {
  std::string domain = "symbolic";
  double eps = 0;
  bool json = false;

  DomainPtr dom() const { return make_domain(domain, eps); }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_json = true) {
  cmd->add_option("--domain", opts.domain,
                  "scalar domain: symbolic | index=q | index=4cos2(pi/m) | float:index=x");
  cmd->add_option("--eps", opts.eps, "zero threshold for float domains");
  if (with_json) cmd->add_flag("--json", opts.json, "emit JSON instead of text");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in the Temperley-Lieb tower"};
  app.require_subcommand(1);
  int rc = 0;

  // ---- mul ----------------------------------------------------------------
  struct {
    CommonOpts common;
    int n = 0;
    std::vector<std::string> words;
  } mul;
  {
    CLI::App* cmd = app.add_subcommand("mul", "multiply generator words and print the normal form");
    add_common(cmd, mul.common);
    cmd->add_option("--n", mul.n, "number of strands")->required();
    cmd->add_option("--words", mul.words, "generator indices, e.g. \"1 2 1\"")->required();
    cmd->callback([&] {
      const DomainPtr dom = mul.common.dom();
      std::vector<int> letters;
      for (const std::string& w : mul.words)
        for (int i : parse_word(w)) letters.push_back(i);
      print_element(word_to_element(dom, mul.n, letters, dom->one()), mul.common.json);
    });
  }

  // ---- nf -----------------------------------------------------------------
  struct {
    CommonOpts common;
  } nf;
  {
    CLI::App* cmd = app.add_subcommand("nf", "normal form of an element read as JSON from stdin");
    add_common(cmd, nf.common);
    cmd->callback([&] {
      const DomainPtr dom = nf.common.dom();
      print_element(element_from_json(dom, read_stdin_json()), nf.common.json);
    });
  }

  // ---- trace --------------------------------------------------------------
  struct {
    CommonOpts common;
    int n = -1;
    std::string word;
    bool have_word = false;
  } trace;
  {
    CLI::App* cmd = app.add_subcommand("trace", "normalized Markov trace of an element");
    add_common(cmd, trace.common, false);
    cmd->add_option("--n", trace.n, "number of strands (required with --word)");
    cmd->add_option("--word", trace.word, "generator indices; stdin JSON element otherwise")
        ->trigger_on_parse()
        ->each([&](const std::string&) { trace.have_word = true; });
    cmd->callback([&] {
      const DomainPtr dom = trace.common.dom();
      TLElement x;
      if (trace.have_word) {
        if (trace.n < 0) throw std::invalid_argument("--word requires --n");
        x = word_to_element(dom, trace.n, parse_word(trace.word), dom->one());
      } else {
        x = element_from_json(dom, read_stdin_json());
        if (trace.n >= 0 && x.strands() != trace.n)
          throw std::invalid_argument("--n does not match the element from stdin");
      }
      std::cout << markov_trace(x).str() << '\n';
    });
  }

  // ---- expect -------------------------------------------------------------
  struct {
    CommonOpts common;
    int n = -1;
    int steps = 1;
    std::string word;
    bool have_word = false;
  } expect;
  {
    CLI::App* cmd =
        app.add_subcommand("expect", "trace-preserving conditional expectation onto fewer strands");
    add_common(cmd, expect.common);
    cmd->add_option("--n", expect.n, "number of strands (required with --word)");
    cmd->add_option("--steps", expect.steps, "how many strands to integrate out")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--word", expect.word, "generator indices; stdin JSON element otherwise")
        ->trigger_on_parse()
        ->each([&](const std::string&) { expect.have_word = true; });
    cmd->callback([&] {
      const DomainPtr dom = expect.common.dom();
      TLElement x;
      if (expect.have_word) {
        if (expect.n < 0) throw std::invalid_argument("--word requires --n");
        x = word_to_element(dom, expect.n, parse_word(expect.word), dom->one());
      } else {
        x = element_from_json(dom, read_stdin_json());
        if (expect.n >= 0 && x.strands() != expect.n)
          throw std::invalid_argument("--n does not match the element from stdin");
      }
      print_element(composite_expectation(x, expect.steps), expect.common.json);
    });
  }

  // ---- gram ---------------------------------------------------------------
  struct {
    CommonOpts common;
    int n = 0;
  } gram;
  {
    CLI::App* cmd = app.add_subcommand("gram", "trace inner-product Gram matrix of the diagram basis");
    add_common(cmd, gram.common);
    cmd->add_option("--n", gram.n, "number of strands")->required();
    cmd->callback([&] {
      const GramReport rep = gram_matrix(gram.common.dom(), gram.n);
      if (gram.common.json) {
        print_json(gram_to_json(rep));
        return;
      }
      std::cout << "n = " << rep.n << '\n'
                << "basis = " << rep.basis_diagrams.size() << '\n'
                << "rank = " << rep.rank << '\n'
                << "positive_semidefinite = " << (rep.positive_semidefinite ? "true" : "false")
                << '\n';
    });
  }

  // ---- pword --------------------------------------------------------------
  struct {
    CommonOpts common;
    int k = 0;
    int r = 0;
    int s = 0;
    int n = -1;
  } pword;
  {
    CLI::App* cmd = app.add_subcommand("pword", "the distinguished interleaving word p_{r,s}");
    add_common(cmd, pword.common);
    cmd->add_option("--r", pword.r, "left tensor degree")->required();
    cmd->add_option("--s", pword.s, "right tensor degree")->required();
    cmd->add_option("--k", pword.k, "index shift (superscript)");
    cmd->add_option("--n", pword.n, "ambient strands (default k+r+s)");
    cmd->callback([&] {
      const int n = pword.n >= 0 ? pword.n : pword.k + pword.r + pword.s;
      print_element(build_p(pword.common.dom(), pword.k, pword.r, pword.s, n), pword.common.json);
    });
  }

  // ---- f ------------------------------------------------------------------
  struct {
    CommonOpts common;
    int r = 0;
    int n = -1;
  } fproj;
  {
    CLI::App* cmd = app.add_subcommand("f", "the Jones projection onto the first 2r strands");
    add_common(cmd, fproj.common);
    cmd->add_option("--r", fproj.r, "half the number of projected strands")->required();
    cmd->add_option("--n", fproj.n, "ambient strands (default 2r)");
    cmd->callback([&] {
      const int n = fproj.n >= 0 ? fproj.n : 2 * fproj.r;
      print_element(build_f(fproj.common.dom(), fproj.r, n), fproj.common.json);
    });
  }

  // ---- insert -------------------------------------------------------------
  struct {
    CommonOpts common;
    std::vector<int> r_at;
    std::vector<int> rstar_at;
  } insert;
  {
    CLI::App* cmd = app.add_subcommand(
        "insert", "tensor the canonical solution R (or R*) into an element from stdin");
    add_common(cmd, insert.common);
    cmd->add_option("--R", insert.r_at, "offsets r s: level r+s -> r+s+2")->expected(2);
    cmd->add_option("--Rstar", insert.rstar_at, "offsets r s: level r+s+2 -> r+s")->expected(2);
    cmd->callback([&] {
      const bool doR = !insert.r_at.empty();
      const bool doRstar = !insert.rstar_at.empty();
      if (doR == doRstar) throw std::invalid_argument("give exactly one of --R or --Rstar");
      const DomainPtr dom = insert.common.dom();
      const TLElement x = element_from_json(dom, read_stdin_json());
      const int r = doR ? insert.r_at[0] : insert.rstar_at[0];
      const int s = doR ? insert.r_at[1] : insert.rstar_at[1];
      if (r < 0 || s < 0) throw std::invalid_argument("offsets must be nonnegative");
      const int want = doR ? r + s : r + s + 2;
      if (x.strands() != want)
        throw std::invalid_argument("element has " + std::to_string(x.strands()) +
                                    " strands, expected " + std::to_string(want));
      const Arrow out = doR ? insert_R(r, s, Arrow(want, x)) : insert_R_star(r, s, Arrow(want, x));
      print_element(out.value, insert.common.json);
    });
  }

  // ---- spectral -----------------------------------------------------------
  struct {
    CommonOpts common;
    std::string mode;
    std::string F;
    int max = -1;
  } spectral;
  {
    CLI::App* cmd = app.add_subcommand(
        "spectral", "operate on graded spectral elements read as JSON from stdin");
    add_common(cmd, spectral.common);
    cmd->add_option("mode", spectral.mode, "mul | star | state | coact")
        ->required()
        ->check(CLI::IsMember({"mul", "star", "state", "coact"}));
    cmd->add_option("--F", spectral.F, "deformation: I<p> | t=<scalar> | JSON | @file")->required();
    cmd->add_option("--max", spectral.max, "level cutoff for products (default TL_MAX_LEVEL or 6)");
    cmd->callback([&] {
      const DomainPtr dom = spectral.common.dom();
      const FMatrix F = make_F(dom, spectral.F);
      const int cutoff = spectral.max >= 0 ? spectral.max : read_cutoff_env();
      const Json in = read_stdin_json();
      if (spectral.mode == "mul") {
        if (!in.is_array() || in.size() != 2)
          throw std::invalid_argument("spectral mul expects a JSON array of two elements");
        const SpectralElement a = spectral_from_json(dom, F.n, in[0]);
        const SpectralElement b = spectral_from_json(dom, F.n, in[1]);
        print_json(spectral_to_json(sp_product(a, b, cutoff)));
        return;
      }
      const SpectralElement a = spectral_from_json(dom, F.n, in);
      if (spectral.mode == "star") {
        print_json(spectral_to_json(sp_star(F, a)));
      } else if (spectral.mode == "state") {
        const Scalar h = invariant_state(F, a);
        if (spectral.common.json)
          print_json(Json{{"value", h.str()}});
        else
          std::cout << h.str() << '\n';
      } else {  // coact
        print_json(coaction_to_json(coaction_expand(a)));
      }
    });
  }

  // ---- verify -------------------------------------------------------------
  struct {
    CommonOpts common;
    std::string lemma;
    bool conjugate_eq = false;
    bool quasitensor = false;
    bool traciality = false;
    int max = 5;
    int max_level = 6;
    std::string F;
  } verify;
  {
    CLI::App* cmd = app.add_subcommand("verify", "run a verification sweep and emit a certificate");
    add_common(cmd, verify.common);
    cmd->add_option("--lemma", verify.lemma, "5.6 (run merge) or 5.7 (word exchange)")
        ->check(CLI::IsMember({"5.6", "5.7"}));
    cmd->add_flag("--conjugate-eq", verify.conjugate_eq,
                  "R / R* insertions compose to the identity (and the index at level 0)");
    cmd->add_flag("--quasitensor", verify.quasitensor,
                  "functor axioms of the graded tensor structure (needs --F)");
    cmd->add_flag("--traciality", verify.traciality,
                  "symmetry of the invariant state (needs --F)");
    cmd->add_option("--max", verify.max, "sweep bound (lemma index bound / level total)");
    cmd->add_option("--max-level", verify.max_level, "level bound for --conjugate-eq");
    cmd->add_option("--F", verify.F, "deformation for --quasitensor / --traciality");
    cmd->callback([&] {
      const int suites = (verify.lemma.empty() ? 0 : 1) + (verify.conjugate_eq ? 1 : 0) +
                         (verify.quasitensor ? 1 : 0) + (verify.traciality ? 1 : 0);
      if (suites != 1)
        throw std::invalid_argument(
            "choose exactly one of --lemma, --conjugate-eq, --quasitensor, --traciality");
      const DomainPtr dom = verify.common.dom();
      const auto t0 = std::chrono::steady_clock::now();
      LemmaCertificate cert;
      if (verify.lemma == "5.6") {
        cert = verify_run_merge_sweep(dom, verify.max);
      } else if (verify.lemma == "5.7") {
        cert = verify_pword_exchange_sweep(dom, verify.max);
      } else if (verify.conjugate_eq) {
        cert = verify_conjugate_equations(dom, verify.max_level);
      } else {
        if (verify.F.empty())
          throw std::invalid_argument("this suite needs --F (e.g. --F I2 --domain index=2)");
        const FMatrix F = make_F(dom, verify.F);
        cert = verify.quasitensor ? verify_quasitensor(F, verify.max)
                                  : verify_traciality(F, verify.max);
      }
      rc = emit_certificate(cert, dom->descriptor(), t0);
    });
  }

  // ---- dims ---------------------------------------------------------------
  struct {
    std::string graph;
    std::string graph_json;
    int levels = 10;
    bool csv = false;
    bool json = false;
  } dims;
  {
    CLI::App* cmd =
        app.add_subcommand("dims", "exact commutant dimension sequence of a principal graph");
    cmd->add_option("--graph", dims.graph, "built-in path graph, e.g. A5");
    cmd->add_option("--graph-json", dims.graph_json, "JSON graph file ('-' for stdin)");
    cmd->add_option("--levels", dims.levels, "levels to compute")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--csv", dims.csv, "emit CSV");
    cmd->add_flag("--json", dims.json, "emit JSON");
    cmd->callback([&] {
      const PrincipalGraph g = load_graph(dims.graph, dims.graph_json);
      const DimSequence d = path_dims(g, dims.levels);
      if (dims.json) {
        Json values = Json::array();
        for (const mpz_class& v : d.values) values.push_back(v.get_str());
        print_json(Json{{"graph", g.name}, {"star", g.star}, {"values", values}, {"beta", d.beta}});
        return;
      }
      if (dims.csv) std::cout << "level,dimension\n";
      for (size_t r = 0; r < d.values.size(); ++r)
        std::cout << r << (dims.csv ? "," : " ") << d.values[r].get_str() << '\n';
    });
  }

  // ---- growth -------------------------------------------------------------
  struct {
    std::string graph;
    std::string graph_json;
    int levels = 32;
    bool csv = false;
    bool json = false;
  } growth;
  {
    CLI::App* cmd =
        app.add_subcommand("growth", "per-level growth roots d_r^(1/r) and the index estimate");
    cmd->add_option("--graph", growth.graph, "built-in path graph, e.g. A5");
    cmd->add_option("--graph-json", growth.graph_json, "JSON graph file ('-' for stdin)");
    cmd->add_option("--levels", growth.levels, "levels to compute")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--csv", growth.csv, "emit CSV");
    cmd->add_flag("--json", growth.json, "emit JSON");
    cmd->callback([&] {
      const PrincipalGraph g = load_graph(growth.graph, growth.graph_json);
      const GrowthReport rep = growth_rate(path_dims(g, growth.levels));
      if (growth.json) {
        print_json(Json{{"graph", g.name}, {"roots", rep.roots}, {"estimate", rep.estimate}});
        return;
      }
      if (growth.csv) std::cout << "level,root\n";
      std::cout.precision(12);
      for (size_t i = 0; i < rep.roots.size(); ++i)
        std::cout << (i + 1) << (growth.csv ? "," : " ") << rep.roots[i] << '\n';
      if (!growth.csv) std::cout << "estimate " << rep.estimate << '\n';
    });
  }

  // ---- bratteli -----------------------------------------------------------
  struct {
    std::string graph;
    std::string graph_json;
    int levels = 6;
    bool dot = false;
  } bratteli;
  {
    CLI::App* cmd = app.add_subcommand("bratteli", "DOT layout of the path-count tower");
    cmd->add_option("--graph", bratteli.graph, "built-in path graph, e.g. A5");
    cmd->add_option("--graph-json", bratteli.graph_json, "JSON graph file ('-' for stdin)");
    cmd->add_option("--levels", bratteli.levels, "floors to draw")->check(CLI::NonNegativeNumber);
    cmd->add_flag("--dot", bratteli.dot, "emit DOT (the only supported format)");
    cmd->callback([&] {
      const PrincipalGraph g = load_graph(bratteli.graph, bratteli.graph_json);
      std::cout << bratteli_export(g, bratteli.levels);
    });
  }

  // ---- aof ----------------------------------------------------------------
  struct {
    CommonOpts common;
    std::string F;
    int levels = 2;
  } aof;
  {
    CLI::App* cmd = app.add_subcommand(
        "aof", "validate a deformation matrix and emit the concrete model data");
    add_common(cmd, aof.common);
    cmd->add_option("--F", aof.F, "deformation: I<p> | t=<scalar> | JSON | @file")->required();
    cmd->add_option("--levels", aof.levels, "tensor power for the projections")
        ->check(CLI::NonNegativeNumber);
    cmd->callback([&] {
      const DomainPtr dom = aof.common.dom();
      const FMatrix F = make_F(dom, aof.F);
      const ConcreteOp R = build_R_vector(F);
      Json rvec = Json::array();
      for (const auto& row : R.m) rvec.push_back(row[0].str());
      const bool sub = subfactor_compatible(F);
      Json out = {{"n", F.n},
                  {"sigma", F.sigma},
                  {"dimension", F.dimension.str()},
                  {"subfactor_compatible", sub},
                  {"representation_compatible", representation_compatible(F)},
                  {"entries", matrix_to_json(F.entries)},
                  {"R", rvec}};
      Json gens = Json::array();
      for (int i = 1; i <= aof.levels - 1; ++i)
        gens.push_back({{"i", i}, {"op", op_to_json(concrete_e(F, aof.levels, i))}});
      out["generators"] = gens;
      if (sub) {
        Json invdims = Json::array();
        for (int r = 0; r <= aof.levels; ++r)
          invdims.push_back(invariant_vectors(F, r).dimension);
        out["invariant_dimensions"] = invdims;
      }
      if (aof.common.json) {
        print_json(out);
        return;
      }
      std::cout << "n = " << F.n << '\n'
                << "sigma = " << (F.sigma > 0 ? "+1" : "-1") << '\n'
                << "dimension = " << F.dimension.str() << '\n'
                << "subfactor_compatible = " << (sub ? "true" : "false") << '\n'
                << "representation_compatible = "
                << (representation_compatible(F) ? "true" : "false") << '\n';
      std::cout << "R =";
      for (const auto& row : R.m) std::cout << ' ' << row[0].str();
      std::cout << '\n';
      if (sub) {
        std::cout << "invariant_dimensions =";
        for (int r = 0; r <= aof.levels; ++r)
          std::cout << ' ' << invariant_vectors(F, r).dimension;
        std::cout << '\n';
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return rc;
}
