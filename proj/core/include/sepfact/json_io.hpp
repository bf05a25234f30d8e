#pragma once

#include <string>

#include <json.hpp>

#include "sepfact/automorphisms.hpp"
#include "sepfact/decomposition.hpp"
#include "sepfact/faces.hpp"
#include "sepfact/sampling.hpp"
#include "sepfact/septests.hpp"
#include "sepfact/states.hpp"

namespace sepfact {

// Reports keep insertion order so serialized output is byte-stable.
using Json = nlohmann::ordered_json;

// Matrices: {"rows": r, "cols": c, "re": [[...]], "im": [[...]]}, row-major.
Json matrix_to_json(const ComplexMatrix& mat);
ComplexMatrix matrix_from_json(const Json& j, const std::string& field);

// Vectors: [[re, im], ...].
Json cvector_to_json(const ComplexVector& v);
ComplexVector cvector_from_json(const Json& j, const std::string& field, int expected = -1);

// {"m":., "n":., "components": [{"weight":., "e": [...], "f": [...]}]}
Json ensemble_to_json(const Ensemble& ens);
Ensemble ensemble_from_json(const Json& j);

// {"m":., "n":., "matrix": {...}}; parsing runs the validate_state gate.
Json density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j, const Tolerance& tol);

Json certificate_to_json(const VkCertificate& cert);
Json coarse_to_json(const CoarseDecomposition& coarse, Dims dims);
Json face_to_json(const BlockSimplexFace& face);
std::string relation_name(FaceRelation rel);

// {"m":., "n":., "word": [{"g":"swap"} | {"g":"pt","side":"A"|"B"}
//                         | {"g":"lu","U":{...},"V":{...}}]}
AutomorphismWord word_from_json(const Json& j);
Json word_to_json(const AutomorphismWord& word);
Json canonical_to_json(const CanonicalAutomorphism& canon);

struct ProductPair {
  Dims dims;
  ProductVector pv1, pv2;
};
// {"m":., "n":., "pv1": {"e": [...], "f": [...]}, "pv2": {...}}
ProductPair pair_from_json(const Json& j);

Json ppt_to_json(const PptReport& report);
Json sample_to_json(const SampleStats& stats);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace sepfact
