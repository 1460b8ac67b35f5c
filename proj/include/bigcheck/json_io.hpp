#pragma once

// JSON formats for fields, groups, family specifications and reports. Key
// order is fixed so that equal inputs serialize to identical bytes.
//
// field:  5 | {"l": 5, "d": 2} | {"l": 5, "modulus": [2, 4, 1]}
// group:  {"field": ..., "n": 2, "generators": [[[1, 1], [0, 1]], ...]}
//         entries are integers (prime field) or coefficient lists [c0, c1, ...]
// family: {"family": "wreath", "field": ..., "params": {...}, "seed": 7}

#include <string>

#include <json.hpp>

#include "bigcheck/bigness.hpp"
#include "bigcheck/families.hpp"

namespace bigcheck {

using Json = nlohmann::ordered_json;

Field field_from_json(const Json &j);
Json field_to_json(const Field &f);

Elt element_from_json(const FieldSpec &f, const Json &j);
Json element_to_json(const FieldSpec &f, Elt a);
Json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const Field &f, std::size_t rows, std::size_t cols, const Json &j);

Group group_from_json(const Json &j, std::size_t cap = kDefaultClosureCap);
Json group_to_json(const MatrixGroup &g);

/// Builds a family member. Missing "field" and "n" fall back to the given
/// defaults. Families: reducible, wreath (alias imprimitive), tensor_product,
/// iterated_tensor, sl_scalars, almost_simple_lift, binary_tetrahedral,
/// binary_tetrahedral_tensor, induced_tensor, random.
LabeledGroup family_from_json(const Json &j, const Field &default_field, std::size_t default_n,
                              std::uint64_t default_seed, std::size_t cap = kDefaultClosureCap);

Json report_to_json(const BignessReport &r, const MatrixGroup &g);

/// Parses text, mapping every syntax or schema problem to ParseError.
Json parse_json(const std::string &text);
Json read_json_file(const std::string &path);

} // namespace bigcheck
