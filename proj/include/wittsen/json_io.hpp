#pragma once

#include <string>

#include "json.hpp"
#include "wittsen/constructions.hpp"
#include "wittsen/delta_poly.hpp"
#include "wittsen/lattice.hpp"
#include "wittsen/sen.hpp"

namespace wittsen {

using json = nlohmann::json;

// All integers travel as decimal strings to survive 64-bit overflow.
json to_json(const PAdic& x);
PAdic padic_from_json(const json& j);

json to_json(const Eisenstein& E);
Eisenstein eisenstein_from_json(const json& j);

json to_json(const SRingElem& x);
json to_json(const DigitElem& x);
json to_json(const DSElem& x);
json to_json(const DDElem& x);

template <class R>
json witt_to_json(const WittVec<R>& w) {
    json comps = json::array();
    for (const auto& c : w.c) comps.push_back(to_json(c));
    json j;
    j["L"] = w.length();
    j["comps"] = comps;
    return j;
}

json to_json(const GhostCheck& g);
json to_json(const ValuationCheck& v);
json to_json(const ConstructionReport& r);
json to_json(const BRecursionTable& t);

json to_json(const SenModule& m);
SenModule sen_module_from_json(const json& j);
json to_json(const LeibnizReport& r);
json to_json(const NilpotenceReport& r);
json to_json(const CohomologyReport& r);
json to_json(const WeightsReport& r);
json to_json(const StableLatticeResult& r);
RationalTheta rational_theta_from_json(const json& j, const SenRing& R);

json to_json(const DeltaVerifyReport& r);

}  // namespace wittsen
