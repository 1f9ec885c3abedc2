#pragma once

// JSON encodings of the library types. Every object may carry "schema": 1;
// any other unknown field is an InputError.
//
//   form       {"epsilon": 1, "gram": [[2, -1], [-1, 2]]}     entries: int or "a/b"
//   linking    {"epsilon": 1, "orders": [4], "gram_num": [[1]], "gram_den": [[4]]}
//   manifold   {"dimension": 2, "facets": [[0,1,2], ...], "signs": [1, -1, ...]}
//              ("signs" may be omitted; an orientation is then chosen)
//   system     {"rank": 2, "edges": {"0,3": [[1,1],[0,1]], ...}, "pairing": form}
//              (edges not listed carry the identity)
//   isometry   {"form": form, "matrix": [[...]]}

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "fsl/charclass.hpp"
#include "fsl/forms.hpp"
#include "fsl/linking.hpp"
#include "fsl/local_systems.hpp"

namespace fsl::io {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::filesystem::path& path);
Json parse_json(const std::string& text);

Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& q);
IntMatrix int_matrix_from_json(const Json& j);
RatMatrix rat_matrix_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
Json matrix_to_json(const RatMatrix& m);

EpsSymmetricForm form_from_json(const Json& j);
Json form_to_json(const EpsSymmetricForm& f);

LinkingForm linking_from_json(const Json& j);
Json linking_to_json(const LinkingForm& t);

SimplicialManifold manifold_from_json(const Json& j);
Json manifold_to_json(const SimplicialManifold& m);

struct SystemSpec {
  LocalSystem system;
  std::optional<EpsSymmetricForm> pairing;
};
SystemSpec system_from_json(const Json& j);
Json system_to_json(const LocalSystem& s, const std::optional<EpsSymmetricForm>& pairing = std::nullopt);

Isometry isometry_from_json(const Json& j);
Json isometry_to_json(const Isometry& phi);

/// [{"coefficient": "7/45", "monomial": "p2"}, ...] in print order.
Json poly_to_json(const GradedPoly& p);

/// $FSL_FIXTURES if set, else the directory baked in at build time.
std::filesystem::path fixture_dir();
Json load_fixture(const std::string& name);

}  // namespace fsl::io
