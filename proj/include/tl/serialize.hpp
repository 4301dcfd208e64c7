#pragma once

#include <json.hpp>

#include <string>

#include "tl/aof.hpp"
#include "tl/graphs.hpp"
#include "tl/markov.hpp"
#include "tl/spectral.hpp"

namespace tl {

using Json = nlohmann::ordered_json;

// Library version stamped into certificates.
inline constexpr const char* kVersion = "1.0.0";

// One scalar from a JSON value: strings go through the domain parser,
// integers are exact, floating numbers require the float domain.
Scalar scalar_from_json(const DomainPtr& dom, const Json& v);

// Text presentation of an element in the reduced-word basis, shortest
// words first: "λ^-2 · e1", unit word rendered "1", zero rendered "0".
std::string element_wordform(const TLElement& x);

// {"n": strands, "terms": [{"coeff": "<scalar>", "word": [i, ...]}, ...]}
// Emission uses the reduced-word expansion; parsing accepts arbitrary
// generator words and sums them.
Json element_to_json(const TLElement& x);
TLElement element_from_json(const DomainPtr& dom, const Json& j);

// A diagram as its pairing (involution) array over the 2n boundary ids.
Json diagram_pairing(const Diagram& d);

// Matrices as row-major arrays of scalar strings.
Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const DomainPtr& dom, const Json& j);

// {"n", "rank", "positive_semidefinite", "basis": [{"word", "pairing"}],
//  "matrix": [[...]]}
Json gram_to_json(const GramReport& rep);

// {"n", "src", "tgt", "matrix"}
Json op_to_json(const ConcreteOp& op);

// {"n", "sigma", "dimension", "entries"}
Json fmatrix_to_json(const FMatrix& F);

// {"n": role dimension, "terms": [{"level": r, "tl": <element>,
//  "vec": [{"idx": [k1..kr], "coeff": "<scalar>"}, ...]}, ...]}
Json spectral_to_json(const SpectralElement& a);
// expect_n > 0 pins the role dimension (mismatch throws); 0 reads it from
// the payload.
SpectralElement spectral_from_json(const DomainPtr& dom, int expect_n, const Json& j);

// {"n", "terms": [{"word": [[row, col], ...], "element": <spectral>}]}
Json coaction_to_json(const CoactionExpansion& e);

// {"suite", "domain", "versions", "wall_ms", "all_pass",
//  "cases": [{"case", "lhs", "rhs", "equal"}, ...]} — byte-stable except
// for wall_ms.
Json certificate_to_json(const LemmaCertificate& cert,
                         const std::string& domain_descriptor, double wall_ms);

// {"name", "adjacency", "star"}; parsing requires "adjacency", defaults
// star to 0 and name to "custom".
Json graph_to_json(const PrincipalGraph& g);
PrincipalGraph graph_from_json(const Json& j);

}  // namespace tl
