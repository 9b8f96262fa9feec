#pragma once

#include <string>

#include "json.hpp"
#include "nonflat/coend.hpp"
#include "nonflat/witness.hpp"

namespace nonflat {

using Json = nlohmann::ordered_json;

// Every reader throws Error(parse_error) on malformed or ill-shaped input.

Json to_json(const Field& f);
Field field_from_json(const Json& j);

/// "a/b" for rationals, "v mod p" for prime fields, {"root_order", "coeffs"} for cyclotomics.
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const Field& f);

Json to_json(const Vector& v);
Vector vector_from_json(const Json& j, const Field& f, std::size_t n);
Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const Field& f, std::size_t rows, std::size_t cols);

/// {"field", "dim", "mult", "unit", "comult", "counit", "antipode", "name", "generators"}.
Json to_json(const HopfData& h);
HopfData hopf_from_json(const Json& j);

Json to_json(const Rep& r);
/// Reads a module; an embedded "hopf" is used when `h` is null, otherwise it must match.
Rep rep_from_json(const Json& j, HopfPtr h = nullptr);
/// "regular", "trivial:n", or sums such as "regular+trivial:1"; `side` applies to every summand.
Rep rep_from_spec(const std::string& spec, HopfPtr h, Side side = Side::left);

Json to_json(const EndoOnTensor& e, std::optional<Parity> parity = std::nullopt);
EndoOnTensor endo_from_json(const Json& j, const Field& f);

Json to_json(const ModuleCoalgebra& c);

/// Level-0 cells in order, each {"id", "matrix"}.
Json cells_to_json(const ShapedOperator& f);
ShapedOperator level0_from_json(const Json& cells, const BlockLayout& layout);

/// SHA-256 of the canonical serialization of `h`, lowercase hex.
std::string content_hash(const HopfData& h);

Json read_json_file(const std::string& path);
/// Writes `text` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace nonflat
