#pragma once

#include <utility>
#include <vector>

#include "tl/arrows.hpp"
#include "tl/linalg.hpp"

namespace tl {

// Validated deformation matrix for the concrete model on H = C^n.
// All entries are real scalars of the active domain; F must square to +I or
// -I, and its squared Hilbert-Schmidt norm d = Trace(F^T F) is the loop
// parameter the concrete cup/cap calculus realizes.
struct FMatrix {
  DomainPtr dom;
  int n = 0;
  Mat entries;       // n x n
  int sigma = +1;    // F^2 = sigma * I
  Scalar dimension;  // d = Trace(F^T F)
};

// Checks squareness (n >= 2), invertibility, and F^2 = +-I; fills sigma and
// the dimension. Throws std::invalid_argument on violations.
FMatrix validate_F(const DomainPtr& dom, const Mat& entries);

// True iff sigma = +1 and the dimension equals the index beta of the
// domain. This is the pairing under which fixed vectors and planar arrows
// have identical Gram matrices, so it gates the invariant-vector and
// certificate operations.
bool subfactor_compatible(const FMatrix& F);

// True iff sigma = +1 and the dimension equals the loop constant lambda of
// the domain. A closed concrete loop contributes a factor d, so this is
// the only pairing under which the word calculus maps onto the concrete
// operators multiplicatively; it gates represent_element.
bool representation_compatible(const FMatrix& F);

// Canonical 2x2 deformation [[0, t], [1/t, 0]]: sigma = +1, d = t^2 + t^-2.
FMatrix canonical_F2(const DomainPtr& dom, const Scalar& t);

// Identity deformation on C^p: sigma = +1, d = p.
FMatrix identity_F(const DomainPtr& dom, int p);

// Dense linear map H^{src} -> H^{tgt} between tensor powers of H = C^n,
// stored as an n^tgt by n^src matrix. The leftmost tensor factor is the
// most significant index digit; vectors are operators with src = 0.
struct ConcreteOp {
  DomainPtr dom;
  int n = 0;
  int src = 0;
  int tgt = 0;
  Mat m;
};

ConcreteOp op_identity(const DomainPtr& dom, int n, int power);
ConcreteOp op_compose(const ConcreteOp& a, const ConcreteOp& b);  // a after b
ConcreteOp op_tensor(const ConcreteOp& a, const ConcreteOp& b);
ConcreteOp op_star(const ConcreteOp& a);  // adjoint = transpose (real entries)
ConcreteOp op_scaled(const ConcreteOp& a, const Scalar& c);
ConcreteOp op_add(const ConcreteOp& a, const ConcreteOp& b);
bool op_equal(const ConcreteOp& a, const ConcreteOp& b);
// Entrywise pairing sum_ij a_ij b_ij: the inner product for vectors and the
// Hilbert-Schmidt pairing for operators (real entries).
Scalar op_inner(const ConcreteOp& a, const ConcreteOp& b);

// The distinguished vector sum_k psi_k (x) F psi_k in H (x) H, as a map
// from C. Its squared norm is the dimension of F.
ConcreteOp build_R_vector(const FMatrix& F);

// Projection at position i on H^{(x)r}: d^{-1} (1 (x) R R* (x) 1) with the
// R R* factor covering slots i, i+1. Requires 1 <= i <= r-1. These are
// self-adjoint idempotents with e_i e_{i+-1} e_i = d^{-2} e_i, i.e. the
// concrete loop constant is d itself.
ConcreteOp concrete_e(const FMatrix& F, int r, int i);

// Representation of a diagram element on H^{(x)r} through its reduced
// words. Requires representation compatibility (lambda = d); under
// subfactor pairing (beta = d) no multiplicative extension exists because
// the two sides close loops at different values.
ConcreteOp represent_element(const FMatrix& F, const TLElement& x);

// (1^{(x)a} (x) R (x) 1^{(x)b}) v for a vector v of power a+b.
ConcreteOp insert_R_vector(const FMatrix& F, int a, int b, const ConcreteOp& v);

// (1^{(x)a} (x) R* (x) 1^{(x)b}) v for a vector v of power a+b+2.
ConcreteOp remove_R_vector(const FMatrix& F, int a, int b, const ConcreteOp& v);

// Fixed vectors of H^{(x)r}: the planar insertion vectors (one per
// noncrossing matching of r points), their Gram matrix, and an orthogonal
// basis of their span with squared norms. dimension = rank of the Gram.
struct InvariantVectors {
  int level = 0;
  std::vector<ConcreteOp> planar;
  Mat gram;
  std::vector<ConcreteOp> ortho;
  std::vector<Scalar> norms2;
  int dimension = 0;
};
InvariantVectors invariant_vectors(const FMatrix& F, int r);

// Certificate that the level functor satisfies the quasitensor axioms:
// trivial level, unit laws, the exchange identity between the two ways of
// regrouping a triple tensor, isometry of the graded product, and
// naturality of the generating insertions — the latter cross-checked
// against the concrete model (Gram agreement and matching insertion
// pairings). Sweeps all level splits with total <= r_max.
LemmaCertificate verify_quasitensor(const FMatrix& F, int r_max);

}  // namespace tl
