#ifndef BRDG_JSON_IO_HPP
#define BRDG_JSON_IO_HPP

#include <stdexcept>

#include "json.hpp"

#include "brdg/filters.hpp"
#include "brdg/frames.hpp"
#include "brdg/structure.hpp"

namespace brdg {

using Json = nlohmann::ordered_json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Partial structure: {"class", "properties", "carrier", "leq", "ops",
/// "zero", "one", "e"?, "names"?}. Reflexive pairs of leq are implied.
Json structure_to_json(const PartialStructure& b);
PartialStructure structure_from_json(const Json& j);

/// Same layout with every table entry present.
Json algebra_to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const Json& j);

/// {"points", "leq", "R", "E"?}; R holds triples, or pairs for diamond frames.
Json frame_to_json(const Frame& f);
Frame frame_from_json(const Json& j, bool binary);

Json certificate_to_json(const PartialStructure& b, const Certificate& c);
Json valuation_to_json(const Valuation& v);

}  // namespace brdg

#endif  // BRDG_JSON_IO_HPP
