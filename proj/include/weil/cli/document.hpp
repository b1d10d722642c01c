#pragma once

// The JSON input document: parsing with schema checks, canonical
// serialization, and conversion to the library's data types.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weil/zetaval/examples.hpp"

namespace weil::cli {

using exactalg::Integer;
using exactalg::IntMatrix;

struct InputDocument {
  Integer q;
  unsigned long p = 0;
  int d = 0;
  long n = 0;
  std::map<int, frobmod::FrobeniusModule> etale;
  std::optional<std::vector<std::vector<Integer>>> zeta_factors;
  std::optional<std::vector<Integer>> point_counts;
  std::optional<zetaval::HodgeTable> hodge;
  std::optional<IntMatrix> pairing;
  std::optional<std::map<int, std::size_t>> motivic_q_dims;
};

/// Throws InvalidInput with the offending path on any schema violation.
InputDocument parse_document(const std::string& text);
/// Canonical form: sorted keys, two-space indent, trailing newline.
std::string serialize_document(const InputDocument& doc);

InputDocument read_document_file(const std::string& path);

weilcoh::EtaleData etale_data(const InputDocument& doc);
/// Throws InvalidInput when the document has no zeta section.
zetaval::ZetaInput zeta_input(const InputDocument& doc);
InputDocument document_from_example(const zetaval::ExampleData& ex);

}  // namespace weil::cli
