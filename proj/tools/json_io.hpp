#pragma once

#include <initializer_list>
#include <string>

#include "bergman/divisor.hpp"
#include "bergman/extremal.hpp"
#include "bergman/projection.hpp"
#include "json.hpp"

namespace bergman::io {

using nlohmann::json;

// Complex numbers travel as [re, im]; plain numbers are accepted on input.
json to_json(Complex z);
json to_json(const std::vector<Complex>& v);
json to_json(const Poly& p);
json to_json(const RationalRep& f);
json to_json(const PowerRep& F);
json to_json(const FunctionalSpec& s);
json to_json(const Certificate& c);
json to_json(const SolutionReport& r);
json to_json(const DivisorAnsatz& a);

Complex complex_from(const json& j, const std::string& where);
std::vector<Complex> complex_list_from(const json& j, const std::string& where);
Poly poly_from(const json& j, const std::string& where);
RationalRep rational_from(const json& j, const std::string& where);
PowerRep power_from(const json& j, const std::string& where);
FunctionalSpec functional_from(const json& j, const std::string& where);
std::vector<FunctionalSpec> functionals_from(const json& j, const std::string& where);
// [[point, multiplicity], ...] or a single [point, multiplicity]
ZeroSet zeros_from(const json& j, const std::string& where);

// Rejects keys outside required + optional and missing required keys.
void expect_keys(const json& j, std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional, const std::string& where);

double real_from(const json& j, const std::string& where);
int int_from(const json& j, const std::string& where);

}  // namespace bergman::io
