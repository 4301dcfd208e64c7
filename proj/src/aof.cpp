#include "tl/aof.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "tl/markov.hpp"

namespace tl {

namespace {

long ipow(int base, int exp) {
  long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void require_same_domain(const DomainPtr& a, const DomainPtr& b,
                         const char* where) {
  if (!a || !b || !a->compatible(*b))
    throw std::invalid_argument(std::string(where) + ": domain mismatch");
}

}  // namespace

FMatrix validate_F(const DomainPtr& dom, const Mat& entries) {
  const int n = static_cast<int>(entries.size());
  if (n < 2) throw std::invalid_argument("validate_F: need n >= 2");
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("validate_F: matrix not square");

  if (mat_rank(entries, dom) != n)
    throw std::invalid_argument("validate_F: matrix not invertible");

  Mat sq = mat_mul(entries, entries);
  Mat id = mat_identity(dom, n);
  int sigma = 0;
  if (mat_equal(sq, id)) sigma = +1;
  Mat neg = id;
  for (auto& row : neg)
    for (auto& x : row) x = -x;
  if (sigma == 0 && mat_equal(sq, neg)) sigma = -1;
  if (sigma == 0)
    throw std::invalid_argument("validate_F: F^2 is neither +I nor -I");

  Scalar d = dom->zero();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) d += entries[i][k] * entries[i][k];

  FMatrix out;
  out.dom = dom;
  out.n = n;
  out.entries = entries;
  out.sigma = sigma;
  out.dimension = d;
  return out;
}

bool subfactor_compatible(const FMatrix& F) {
  return F.sigma == +1 && F.dimension == F.dom->beta();
}

bool representation_compatible(const FMatrix& F) {
  return F.sigma == +1 && F.dimension == F.dom->lambda_pow(1);
}

FMatrix canonical_F2(const DomainPtr& dom, const Scalar& t) {
  Mat m = mat_zero(dom, 2, 2);
  m[0][1] = t;
  m[1][0] = t.inv();
  return validate_F(dom, m);
}

FMatrix identity_F(const DomainPtr& dom, int p) {
  return validate_F(dom, mat_identity(dom, p));
}

ConcreteOp op_identity(const DomainPtr& dom, int n, int power) {
  ConcreteOp out;
  out.dom = dom;
  out.n = n;
  out.src = power;
  out.tgt = power;
  out.m = mat_identity(dom, static_cast<int>(ipow(n, power)));
  return out;
}

ConcreteOp op_compose(const ConcreteOp& a, const ConcreteOp& b) {
  require_same_domain(a.dom, b.dom, "op_compose");
  if (a.n != b.n || a.src != b.tgt)
    throw std::invalid_argument("op_compose: power mismatch");
  ConcreteOp out;
  out.dom = a.dom;
  out.n = a.n;
  out.src = b.src;
  out.tgt = a.tgt;
  out.m = mat_mul(a.m, b.m);
  return out;
}

ConcreteOp op_tensor(const ConcreteOp& a, const ConcreteOp& b) {
  require_same_domain(a.dom, b.dom, "op_tensor");
  if (a.n != b.n) throw std::invalid_argument("op_tensor: different H");
  ConcreteOp out;
  out.dom = a.dom;
  out.n = a.n;
  out.src = a.src + b.src;
  out.tgt = a.tgt + b.tgt;
  out.m = mat_kron(a.m, b.m);
  return out;
}

ConcreteOp op_star(const ConcreteOp& a) {
  ConcreteOp out;
  out.dom = a.dom;
  out.n = a.n;
  out.src = a.tgt;
  out.tgt = a.src;
  out.m = mat_transpose(a.m);
  return out;
}

ConcreteOp op_scaled(const ConcreteOp& a, const Scalar& c) {
  ConcreteOp out = a;
  for (auto& row : out.m)
    for (auto& x : row) x = x * c;
  return out;
}

ConcreteOp op_add(const ConcreteOp& a, const ConcreteOp& b) {
  require_same_domain(a.dom, b.dom, "op_add");
  if (a.n != b.n || a.src != b.src || a.tgt != b.tgt)
    throw std::invalid_argument("op_add: power mismatch");
  ConcreteOp out = a;
  for (std::size_t i = 0; i < out.m.size(); ++i)
    for (std::size_t j = 0; j < out.m[i].size(); ++j) out.m[i][j] += b.m[i][j];
  return out;
}

bool op_equal(const ConcreteOp& a, const ConcreteOp& b) {
  return a.n == b.n && a.src == b.src && a.tgt == b.tgt && mat_equal(a.m, b.m);
}

Scalar op_inner(const ConcreteOp& a, const ConcreteOp& b) {
  require_same_domain(a.dom, b.dom, "op_inner");
  if (a.n != b.n || a.src != b.src || a.tgt != b.tgt)
    throw std::invalid_argument("op_inner: power mismatch");
  Scalar acc = a.dom->zero();
  for (std::size_t i = 0; i < a.m.size(); ++i)
    for (std::size_t j = 0; j < a.m[i].size(); ++j)
      acc += a.m[i][j].conj() * b.m[i][j];
  return acc;
}

ConcreteOp build_R_vector(const FMatrix& F) {
  ConcreteOp out;
  out.dom = F.dom;
  out.n = F.n;
  out.src = 0;
  out.tgt = 2;
  out.m = mat_zero(F.dom, F.n * F.n, 1);
  for (int k = 0; k < F.n; ++k)
    for (int i = 0; i < F.n; ++i) out.m[k * F.n + i][0] = F.entries[i][k];
  return out;
}

ConcreteOp concrete_e(const FMatrix& F, int r, int i) {
  if (i < 1 || i > r - 1) throw std::invalid_argument("concrete_e: bad position");
  ConcreteOp R = build_R_vector(F);
  ConcreteOp RRstar = op_compose(R, op_star(R));
  ConcreteOp out = op_scaled(RRstar, F.dimension.inv());
  if (i > 1) out = op_tensor(op_identity(F.dom, F.n, i - 1), out);
  if (i < r - 1) out = op_tensor(out, op_identity(F.dom, F.n, r - 1 - i));
  return out;
}

ConcreteOp represent_element(const FMatrix& F, const TLElement& x) {
  if (!representation_compatible(F))
    throw std::domain_error(
        "represent_element: F dimension must equal the loop constant of the "
        "domain");
  require_same_domain(F.dom, x.domain(), "represent_element");
  const int r = x.strands();
  std::map<int, ConcreteOp> gens;
  ConcreteOp acc = op_scaled(op_identity(F.dom, F.n, r), F.dom->zero());
  for (const auto& w : element_to_reduced_words(x)) {
    ConcreteOp term = op_identity(F.dom, F.n, r);
    for (int letter : w.letters) {
      auto it = gens.find(letter);
      if (it == gens.end())
        it = gens.emplace(letter, concrete_e(F, r, letter)).first;
      term = op_compose(term, it->second);
    }
    acc = op_add(acc, op_scaled(term, w.prefactor));
  }
  return acc;
}

ConcreteOp insert_R_vector(const FMatrix& F, int a, int b,
                           const ConcreteOp& v) {
  if (v.src != 0 || v.tgt != a + b)
    throw std::invalid_argument("insert_R_vector: power mismatch");
  const int n = F.n;
  const long lo = ipow(n, b);
  ConcreteOp out;
  out.dom = F.dom;
  out.n = n;
  out.src = 0;
  out.tgt = a + b + 2;
  out.m = mat_zero(F.dom, static_cast<int>(ipow(n, a + b + 2)), 1);
  for (long idx = 0; idx < ipow(n, a + b); ++idx) {
    const Scalar& c = v.m[idx][0];
    if (c.is_zero()) continue;
    const long x = idx / lo, y = idx % lo;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        long o = ((x * n + k) * n + i) * lo + y;
        out.m[o][0] += F.entries[i][k] * c;
      }
  }
  return out;
}

ConcreteOp remove_R_vector(const FMatrix& F, int a, int b,
                           const ConcreteOp& v) {
  if (v.src != 0 || v.tgt != a + b + 2)
    throw std::invalid_argument("remove_R_vector: power mismatch");
  const int n = F.n;
  const long lo = ipow(n, b);
  ConcreteOp out;
  out.dom = F.dom;
  out.n = n;
  out.src = 0;
  out.tgt = a + b;
  out.m = mat_zero(F.dom, static_cast<int>(ipow(n, a + b)), 1);
  for (long idx = 0; idx < ipow(n, a + b); ++idx) {
    const long x = idx / lo, y = idx % lo;
    Scalar acc = F.dom->zero();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        long o = ((x * n + k) * n + i) * lo + y;
        acc += F.entries[i][k] * v.m[o][0];
      }
    out.m[idx][0] = acc;
  }
  return out;
}

InvariantVectors invariant_vectors(const FMatrix& F, int r) {
  InvariantVectors out;
  out.level = r;
  for (const auto& matching : noncrossing_matchings(r)) {
    ConcreteOp v;
    v.dom = F.dom;
    v.n = F.n;
    v.src = 0;
    v.tgt = 0;
    v.m = mat_zero(F.dom, 1, 1);
    v.m[0][0] = F.dom->one();
    for (const auto& [pos, target] : matching_insertion_plan(matching, r))
      v = insert_R_vector(F, pos, target - pos - 2, v);
    out.planar.push_back(std::move(v));
  }
  const int k = static_cast<int>(out.planar.size());
  out.gram = mat_zero(F.dom, k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      out.gram[i][j] = op_inner(out.planar[i], out.planar[j]);
  std::vector<Scalar> norms;
  auto rows = orthogonalize_by_gram(out.gram, F.dom, &norms);
  for (const auto& row : rows) {
    ConcreteOp u = op_scaled(out.planar[0], row[0]);
    for (int i = 1; i < k; ++i)
      u = op_add(u, op_scaled(out.planar[i], row[i]));
    out.ortho.push_back(std::move(u));
  }
  out.norms2 = norms;
  out.dimension = static_cast<int>(rows.size());
  return out;
}

namespace {

// Word-basis coordinate data for one level, with the Gram and its inverse
// (the latter needed to form adjoints of the graded product).
struct LevelData {
  int level = 0;
  std::vector<TLElement> basis;
  std::map<Diagram, int> index;
  std::vector<int> wordlen;
  Mat gram;
  Mat gram_inv;
};

LevelData make_level(const DomainPtr& dom, int l) {
  LevelData L;
  L.level = l;
  L.basis = word_basis(dom, l);
  auto order = word_basis_order(l);
  for (std::size_t i = 0; i < order.size(); ++i) {
    L.index[order[i].first] = static_cast<int>(i);
    L.wordlen.push_back(static_cast<int>(order[i].second.size()));
  }
  const int k = static_cast<int>(L.basis.size());
  L.gram = mat_zero(dom, k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      L.gram[i][j] = trace_inner(L.basis[i], L.basis[j]);
  try {
    L.gram_inv = mat_inverse(L.gram, dom);
  } catch (const std::exception&) {
    throw std::domain_error(
        "verify_quasitensor: degenerate level form at this loop parameter; "
        "lower the level budget");
  }
  return L;
}

std::vector<Scalar> level_coords(const LevelData& L, const TLElement& x) {
  const DomainPtr& dom = x.domain();
  std::vector<Scalar> c(L.basis.size(), dom->zero());
  for (const auto& [d, coef] : x.terms()) {
    int i = L.index.at(d);
    c[i] = coef * dom->lambda_pow(L.wordlen[i]);
  }
  return c;
}

// Matrix of the graded product map (level r) x (level s) -> level r+s in
// word-basis coordinates; the column index is i * dim_s + j.
Mat graded_product_matrix(const DomainPtr& dom, const LevelData& Lr,
                          const LevelData& Ls, const LevelData& Lrs) {
  const int dr = static_cast<int>(Lr.basis.size());
  const int ds = static_cast<int>(Ls.basis.size());
  const int dn = static_cast<int>(Lrs.basis.size());
  Mat A = mat_zero(dom, dn, dr * ds);
  for (int i = 0; i < dr; ++i)
    for (int j = 0; j < ds; ++j) {
      Arrow t = tensor_arrows(Arrow(Lr.level, Lr.basis[i]),
                              Arrow(Ls.level, Ls.basis[j]));
      auto col = level_coords(Lrs, t.value);
      for (int k = 0; k < dn; ++k) A[k][i * ds + j] = col[k];
    }
  return A;
}

// Adjoint of a map (pair space, gram Gr x Gs) -> (level space, gram Gn).
Mat pair_adjoint(const Mat& A, const LevelData& Lr, const LevelData& Ls,
                 const LevelData& Ln) {
  Mat kinv = mat_kron(Lr.gram_inv, Ls.gram_inv);
  return mat_mul(kinv, mat_mul(mat_transpose(A), Ln.gram));
}

}  // namespace

LemmaCertificate verify_quasitensor(const FMatrix& F, int r_max) {
  if (!subfactor_compatible(F))
    throw std::domain_error(
        "verify_quasitensor: F must be real-type with dimension equal to the "
        "loop parameter");
  const DomainPtr& dom = F.dom;
  LemmaCertificate cert;
  cert.suite = "quasitensor";
  auto add_case = [&cert](const std::string& label, bool ok,
                          const std::string& note) {
    cert.cases.push_back({label, ok ? note : "mismatch", note, ok});
    if (!ok) cert.all_equal = false;
  };

  std::vector<LevelData> levels;
  for (int l = 0; l <= r_max; ++l) levels.push_back(make_level(dom, l));

  // Trivial level: the level-0 space is one-dimensional and the graded
  // product restricted to it is plain scalar multiplication.
  {
    bool ok = invariant_arrow_basis(dom, 0).elements.size() == 1;
    Scalar a = dom->from_rational(mpq_class(2, 3));
    Scalar b = dom->lambda_pow(1);
    ok = ok && tensor_arrows(arrow_scalar(a), arrow_scalar(b)) ==
                   arrow_scalar(a * b);
    add_case("trivial level is the scalars", ok, "dimension 1, scalar product");
  }

  // Unit laws: tensoring with the level-0 unit on either side is the
  // identity map.
  {
    bool ok = true;
    Arrow one = arrow_unit(dom, 0);
    for (int r = 0; r <= r_max; ++r)
      for (const auto& S : levels[r].basis) {
        Arrow a(r, S);
        if (!(tensor_arrows(a, one) == a) || !(tensor_arrows(one, a) == a))
          ok = false;
      }
    add_case("unit laws", ok, "identity map at all levels");
  }

  // Graded isometry: the product preserves the tensor-product inner product.
  {
    bool ok = true;
    for (int r = 0; r <= r_max; ++r)
      for (int s = 0; r + s <= r_max; ++s)
        for (const auto& S : levels[r].basis)
          for (const auto& Sp : levels[r].basis)
            for (const auto& T : levels[s].basis)
              for (const auto& Tp : levels[s].basis) {
                Arrow a = tensor_arrows(Arrow(r, S), Arrow(s, T));
                Arrow b = tensor_arrows(Arrow(r, Sp), Arrow(s, Tp));
                if (!(arrow_inner(a, b) ==
                      trace_inner(S, Sp) * trace_inner(T, Tp)))
                  ok = false;
              }
    add_case("graded isometry", ok, "inner products multiply");
  }

  // Exchange identity: regrouping a triple product through the adjoint of
  // the graded product gives the same operator both ways.
  {
    bool ok = true;
    for (int r = 0; r <= r_max; ++r)
      for (int s = 0; r + s <= r_max; ++s)
        for (int t = 0; r + s + t <= r_max; ++t) {
          const LevelData& Lr = levels[r];
          const LevelData& Ls = levels[s];
          const LevelData& Lt = levels[t];
          const LevelData& Lrs = levels[r + s];
          const LevelData& Lst = levels[s + t];
          const LevelData& Ln = levels[r + s + t];
          Mat A = graded_product_matrix(dom, Lr, Lst, Ln);
          Mat B = graded_product_matrix(dom, Lrs, Lt, Ln);
          Mat C = graded_product_matrix(dom, Ls, Lt, Lst);
          Mat D = graded_product_matrix(dom, Lr, Ls, Lrs);
          Mat lhs = mat_mul(pair_adjoint(A, Lr, Lst, Ln), B);
          Mat Dstar = pair_adjoint(D, Lr, Ls, Lrs);
          const int dr = static_cast<int>(Lr.basis.size());
          const int dt = static_cast<int>(Lt.basis.size());
          Mat rhs = mat_mul(mat_kron(mat_identity(dom, dr), C),
                            mat_kron(Dstar, mat_identity(dom, dt)));
          if (!mat_equal(lhs, rhs)) ok = false;
        }
    add_case("exchange identity", ok, "both regroupings agree");
  }

  // Naturality of the generating insertions, abstract side: inserting into
  // one factor before or after taking the graded product is the same.
  {
    bool ok = true;
    for (int a = 0; a <= r_max; ++a)
      for (int b = 0; a + b <= r_max; ++b)
        for (int s = 0; a + b + s <= r_max; ++s)
          for (const auto& Z1 : levels[a + b].basis)
            for (const auto& Z2 : levels[s].basis) {
              Arrow z1(a + b, Z1), z2(s, Z2);
              Arrow lhs = tensor_arrows(insert_R(a, b, z1), z2);
              Arrow rhs = insert_R(a, b + s, tensor_arrows(z1, z2));
              if (!(lhs == rhs)) ok = false;
              Arrow lhs2 = tensor_arrows(z2, insert_R(a, b, z1));
              Arrow rhs2 = insert_R(s + a, b, tensor_arrows(z2, z1));
              if (!(lhs2 == rhs2)) ok = false;
            }
    add_case("naturality of insertions (coordinates)", ok,
             "insertion commutes with the graded product");
  }

  // Concrete model: the planar arrows and the planar fixed vectors have
  // identical Gram matrices level by level.
  {
    bool ok = true;
    for (int r = 0; r <= r_max + 1; r += 2) {
      auto span = planar_r_span(dom, r);
      auto inv = invariant_vectors(F, r);
      const int k = static_cast<int>(span.size());
      if (static_cast<int>(inv.planar.size()) != k) {
        ok = false;
        continue;
      }
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          if (!(arrow_inner(span[i], span[j]) == inv.gram[i][j])) ok = false;
    }
    add_case("concrete model: Gram agreement", ok,
             "planar arrows match planar fixed vectors");
  }

  // Concrete model: inserting the distinguished vector pairs identically on
  // both sides of the correspondence.
  {
    bool ok = true;
    for (int r = 0; r + 2 <= r_max + 1; r += 2) {
      auto span_lo = planar_r_span(dom, r);
      auto span_hi = planar_r_span(dom, r + 2);
      auto inv_lo = invariant_vectors(F, r);
      auto inv_hi = invariant_vectors(F, r + 2);
      for (std::size_t mp = 0; mp < span_lo.size(); ++mp)
        for (int a = 0; a <= r; ++a) {
          int b = r - a;
          Arrow zi = insert_R(a, b, span_lo[mp]);
          ConcreteOp vi = insert_R_vector(F, a, b, inv_lo.planar[mp]);
          for (std::size_t m = 0; m < span_hi.size(); ++m)
            if (!(arrow_inner(span_hi[m], zi) ==
                  op_inner(inv_hi.planar[m], vi)))
              ok = false;
        }
    }
    add_case("concrete model: insertion pairings", ok,
             "insertions pair identically");
  }

  // Concrete model: the distinguished vector solves the conjugate relation
  // on every strand position.
  {
    bool ok = true;
    for (int p = 1; p <= r_max; ++p) {
      const long dim = ipow(F.n, p);
      for (long idx = 0; idx < dim; ++idx) {
        ConcreteOp v;
        v.dom = dom;
        v.n = F.n;
        v.src = 0;
        v.tgt = p;
        v.m = mat_zero(dom, static_cast<int>(dim), 1);
        v.m[idx][0] = dom->one();
        for (int a = 0; a + 1 <= p; ++a) {
          int b = p - 1 - a;
          ConcreteOp r1 = remove_R_vector(F, a, b + 1,
                                          insert_R_vector(F, a + 1, b, v));
          ConcreteOp r2 = remove_R_vector(F, a + 1, b,
                                          insert_R_vector(F, a, b + 1, v));
          if (!op_equal(r1, v) || !op_equal(r2, v)) ok = false;
        }
      }
    }
    add_case("concrete model: conjugate relation", ok,
             "remove after insert is the identity");
  }

  return cert;
}

}  // namespace tl
