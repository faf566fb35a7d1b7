#pragma once

#include <string>

#include <json.hpp>

#include "mixtilt/coxeter.hpp"
#include "mixtilt/hecke.hpp"
#include "mixtilt/laurent.hpp"
#include "mixtilt/tilting.hpp"

// JSON schemas:
//   polynomial  {"3":"1","1":"1"}           exponent -> coefficient, both decimal strings
//   vector      {"1,2":{...}, "e":{...}}     word -> polynomial
//   matrix      {"system":{"label":..,"cartan":[[..]]},
//                "ideal":[words], "columns":{object-word:{stratum-word:polynomial}}}
// Keys appear in (length, ShortLex) order, exponents in descending order.

namespace mixtilt {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent serialized data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

Json system_to_json(const CoxeterSystem& sys);

Json to_json(const CoxeterSystem& sys, const WeightVector& v);
WeightVector vector_from_json(const CoxeterSystem& sys, const Json& j);

Json to_json(const CoxeterSystem& sys, const WeightMatrix& m);
/// The system block must carry the same Cartan matrix as sys.
WeightMatrix matrix_from_json(const CoxeterSystem& sys, const Json& j);

/// Rows "object,stratum,polynomial" for the nonzero entries, column by column.
std::string matrix_to_csv(const CoxeterSystem& sys, const WeightMatrix& m);
std::string matrix_to_text(const CoxeterSystem& sys, const WeightMatrix& m);

}  // namespace mixtilt
