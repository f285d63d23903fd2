#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cix/corners.hpp"
#include "cix/deligne.hpp"
#include "cix/faces.hpp"
#include "cix/ledger.hpp"
#include "cix/spectral.hpp"

namespace cix::io {

using nlohmann::json;

json read_file(const std::string& path);
Rat rat_of(const json& j);  // "p/q" string or integer
Int int_of(const json& j);

// faceposet.v1
Cornered cornered_from_json(const json& j);
json to_json(const Cornered& m);

// scomplex.v1; load_complex also accepts built-in names
SimplicialComplex complex_from_json(const json& j);
json to_json(const SimplicialComplex& K);
SimplicialComplex load_complex(const std::string& name_or_path);

// cochain.v1 / chain.v1: {"degree", "values":[{"simplex":[...],"value":"p/q"}]}
Cochain cochain_from_json(const SimplicialComplex& K, const json& j);
json to_json(const SimplicialComplex& K, const Cochain& c);
Chain chain_from_json(const SimplicialComplex& K, const json& j);
json to_json(const SimplicialComplex& K, const Chain& c);
CechCochain cech_from_json(const SimplicialComplex& K, const json& j);

// deligne-cochain.v1: {"k", "degree", "entries":[{"nerve":[...],"base":[...]|null,"value":"p/q"}]}
DeligneCochain deligne_from_json(const DeligneModel& M, const json& j);
json to_json(const DeligneModel& M, const DeligneCochain& c);

// ledger.v1
EtaLedgerData ledger_from_json(const json& j);
json to_json(const EtaLedgerData& d);

// supplier.v1: {"scalable", "levels":[{"degree","coeffs":{face: n}}]}
Supplier supplier_from_json(const json& j);
ObstructionChain obstruction_from_json(const json& j);
json to_json(const ObstructionChain& c);

// path.v1: {"matrices":[M0, M1, ...]} with entries numbers, "p/q" strings or [re, im]
std::vector<CMat> path_from_json(const json& j);
std::vector<cplx> samples_from_json(const json& j);

json to_json(const HomologyGroup& g);
json to_json(const ClassCoords& c);

json schemas();

}  // namespace cix::io
