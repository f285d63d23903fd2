#include "cix/io.hpp"

#include <filesystem>
#include <fstream>

namespace cix::io {

namespace {

void expect_schema(const json& j, const std::string& name) {
  if (j.is_object() && j.contains("schema") && j["schema"] != name)
    throw Error("schema", "expected " + name + ", got " + j["schema"].dump());
}

Simplex simplex_of(const json& j) {
  Simplex s = j.get<std::vector<int>>();
  std::sort(s.begin(), s.end());
  return s;
}

long index_of(const SimplicialComplex& K, const Simplex& s, int q, const char* what) {
  long i = K.index(s);
  if (i < 0 || static_cast<int>(s.size()) - 1 != q) throw Error("shape", std::string(what) + " " + json(s).dump() + " is not a " + std::to_string(q) + "-simplex of the base");
  return i;
}

double num_of(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>()).get_d();
  return j.get<double>();
}

cplx cplx_of(const json& j) {
  if (j.is_array()) return {num_of(j.at(0)), num_of(j.at(1))};
  return {num_of(j), 0.0};
}

}  // namespace

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io", "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("parse", path + ": " + e.what());
  }
}

Rat rat_of(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw Error("parse", "expected a rational string, got " + j.dump());
}

Int int_of(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Rat r = parse_rat(j.get<std::string>());
    if (!is_integer(r)) throw Error("parse", "expected an integer, got " + j.dump());
    return r.get_num();
  }
  throw Error("parse", "expected an integer, got " + j.dump());
}

Cornered cornered_from_json(const json& j) {
  expect_schema(j, "faceposet.v1");
  Cornered m;
  try {
    m.poset.dim = j.at("dim").get<int>();
    for (const auto& a : j.at("atoms")) {
      Atom at;
      at.id = a.at("id").get<std::string>();
      at.codim = a.at("codim").get<int>();
      at.connected = a.value("connected", true);
      m.poset.atoms.push_back(at);
    }
    for (const auto& p : j.at("passages"))
      m.poset.passages.push_back(
          {p.at("lower").get<std::string>(), p.at("upper").get<std::string>(), p.value("sign", 1), p.value("mult", 1)});
    if (j.contains("orientations"))
      for (const auto& [k, v] : j["orientations"].items()) m.poset.orientations[k] = v.get<int>();
    if (j.contains("decomposition")) {
      for (const auto& f : j["decomposition"].at("faces")) {
        Face face;
        face.codim = f.at("codim").get<int>();
        face.atoms = f.at("atoms").get<std::vector<std::string>>();
        std::sort(face.atoms.begin(), face.atoms.end());
        face.id = f.contains("id") ? f["id"].get<std::string>() : default_face_id(face.atoms);
        m.decomposition.faces.push_back(face);
      }
    } else {
      m.decomposition = atomic_decomposition(m.poset);
    }
  } catch (const json::exception& e) {
    throw Error("parse", std::string("faceposet.v1: ") + e.what());
  }
  return m;
}

json to_json(const Cornered& m) {
  json j{{"schema", "faceposet.v1"}, {"dim", m.poset.dim}};
  auto atoms = m.poset.atoms;
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.id < b.id; });
  j["atoms"] = json::array();
  for (const auto& a : atoms) {
    json ja{{"id", a.id}, {"codim", a.codim}};
    if (!a.connected) ja["connected"] = false;
    j["atoms"].push_back(ja);
  }
  auto ps = m.poset.passages;
  std::sort(ps.begin(), ps.end(), [](const Passage& a, const Passage& b) {
    return std::tie(a.lower, a.upper, a.sign) < std::tie(b.lower, b.upper, b.sign);
  });
  j["passages"] = json::array();
  for (const auto& p : ps) j["passages"].push_back({{"lower", p.lower}, {"upper", p.upper}, {"sign", p.sign}, {"mult", p.mult}});
  if (!m.poset.orientations.empty()) j["orientations"] = m.poset.orientations;
  auto fs = m.decomposition.faces;
  std::sort(fs.begin(), fs.end(), [](const Face& a, const Face& b) { return std::tie(a.codim, a.id) < std::tie(b.codim, b.id); });
  j["decomposition"]["faces"] = json::array();
  for (const auto& f : fs) j["decomposition"]["faces"].push_back({{"id", f.id}, {"codim", f.codim}, {"atoms", f.atoms}});
  return j;
}

SimplicialComplex complex_from_json(const json& j) {
  expect_schema(j, "scomplex.v1");
  try {
    std::vector<int> verts = j.value("vertices", std::vector<int>{});
    auto simp = j.at("simplices").get<std::vector<std::vector<int>>>();
    for (const auto& s : simp)
      for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = a + 1; b < s.size(); ++b)
          if (s[a] == s[b]) throw Error("shape", "simplex " + json(s).dump() + " repeats a vertex");
    return SimplicialComplex::from_simplices(simp, verts);
  } catch (const json::exception& e) {
    throw Error("parse", std::string("scomplex.v1: ") + e.what());
  }
}

json to_json(const SimplicialComplex& K) {
  return {{"schema", "scomplex.v1"}, {"vertices", K.vertices()}, {"simplices", K.maximal()}};
}

SimplicialComplex load_complex(const std::string& s) {
  if (std::filesystem::exists(s)) return complex_from_json(read_file(s));
  return complexes::by_name(s);
}

Cochain cochain_from_json(const SimplicialComplex& K, const json& j) {
  expect_schema(j, "cochain.v1");
  try {
    Cochain c = zero_cochain(K, j.at("degree").get<int>());
    for (const auto& e : j.at("values")) c.v[index_of(K, simplex_of(e.at("simplex")), c.q, "cochain entry")] = rat_of(e.at("value"));
    return c;
  } catch (const json::exception& e) {
    throw Error("parse", std::string("cochain.v1: ") + e.what());
  }
}

json to_json(const SimplicialComplex& K, const Cochain& c) {
  json j{{"schema", "cochain.v1"}, {"degree", c.q}, {"values", json::array()}};
  for (std::size_t i = 0; i < c.v.size(); ++i)
    if (c.v[i] != 0) j["values"].push_back({{"simplex", K.simplex(c.q, i)}, {"value", to_string(c.v[i])}});
  return j;
}

Chain chain_from_json(const SimplicialComplex& K, const json& j) {
  expect_schema(j, "chain.v1");
  try {
    Chain z{j.at("degree").get<int>(), IntVec(K.count(j.at("degree").get<int>()))};
    for (const auto& e : j.at("terms")) z.c[index_of(K, simplex_of(e.at("simplex")), z.q, "chain term")] = int_of(e.at("coeff"));
    return z;
  } catch (const json::exception& e) {
    throw Error("parse", std::string("chain.v1: ") + e.what());
  }
}

json to_json(const SimplicialComplex& K, const Chain& z) {
  json j{{"schema", "chain.v1"}, {"degree", z.q}, {"terms", json::array()}};
  for (std::size_t i = 0; i < z.c.size(); ++i)
    if (z.c[i] != 0) j["terms"].push_back({{"simplex", K.simplex(z.q, i)}, {"coeff", to_string(z.c[i])}});
  return j;
}

CechCochain cech_from_json(const SimplicialComplex& K, const json& j) {
  Cochain c = cochain_from_json(K, j);
  Coeff g = parse_coeff(j.value("coeff", std::string("Z")));
  return {c.q, g, c.v};
}

DeligneCochain deligne_from_json(const DeligneModel& M, const json& j) {
  expect_schema(j, "deligne-cochain.v1");
  const auto& K = M.base();
  try {
    if (j.contains("k") && j["k"].get<int>() != M.k()) throw Error("degree", "cochain k does not match the model");
    DeligneCochain c = zero_cochain(M, j.value("degree", M.k() - 1));
    for (const auto& e : j.at("entries")) {
      Simplex x = simplex_of(e.at("nerve"));
      int p = static_cast<int>(x.size()) - 1;
      long xi = K.index(x);
      if (xi < 0) throw Error("shape", "nerve simplex " + json(x).dump() + " is empty");
      if (!e.contains("base") || e["base"].is_null()) {
        if (p != c.n + 1) throw Error("shape", "integral entry on " + json(x).dump() + " has the wrong degree");
        Rat v = rat_of(e.at("value"));
        if (!is_integer(v)) throw Error("shape", "integral entry on " + json(x).dump() + " is not an integer");
        c.comp.at(-1)[xi] = v;
        continue;
      }
      Simplex t = simplex_of(e["base"]);
      int q = static_cast<int>(t.size()) - 1;
      long ti = K.index(t);
      long s = ti < 0 || !c.comp.count(q) || p + q != c.n ? -1 : M.find(p, q, xi, ti);
      if (s < 0) throw Error("shape", "entry " + json(x).dump() + "/" + json(t).dump() + " is not in the model");
      c.comp.at(q)[s] = rat_of(e.at("value"));
    }
    return c;
  } catch (const json::exception& e) {
    throw Error("parse", std::string("deligne-cochain.v1: ") + e.what());
  }
}

json to_json(const DeligneModel& M, const DeligneCochain& c) {
  const auto& K = M.base();
  json j{{"schema", "deligne-cochain.v1"}, {"k", c.k}, {"degree", c.n}, {"entries", json::array()}};
  for (const auto& [q, v] : c.comp) {
    const int p = c.n - q;
    const auto& it = M.items(p, q);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      json e{{"nerve", K.simplex(p, it[i].x)}, {"base", nullptr}, {"value", to_string(v[i])}};
      if (q >= 0) e["base"] = K.simplex(q, it[i].tau);
      j["entries"].push_back(e);
    }
  }
  return j;
}

EtaLedgerData ledger_from_json(const json& j) {
  expect_schema(j, "ledger.v1");
  try {
    EtaLedgerData d;
    const auto& b = j.at("base");
    d.base = b.is_string() ? complexes::by_name(b.get<std::string>()) : complex_from_json(b);
    d.k = j.at("k").get<int>();
    if (d.k < 0) throw Error("degree", "ledger degree must be nonnegative");
    for (const auto& e : j.value("eta", json::array())) d.eta[{simplex_of(e.at("nerve")), simplex_of(e.at("base"))}] = rat_of(e.at("value"));
    for (const auto& e : j.value("index", json::array())) d.index[simplex_of(e.at("nerve"))] = int_of(e.at("value"));
    for (const auto& e : j.value("omega", json::array())) d.omega[simplex_of(e.at("simplex"))] = rat_of(e.at("value"));
    return d;
  } catch (const json::exception& e) {
    throw Error("parse", std::string("ledger.v1: ") + e.what());
  }
}

json to_json(const EtaLedgerData& d) {
  json j{{"schema", "ledger.v1"}, {"base", to_json(d.base)}, {"k", d.k}};
  j["eta"] = json::array();
  for (const auto& [key, v] : d.eta)
    if (v != 0) j["eta"].push_back({{"nerve", key.first}, {"base", key.second}, {"value", to_string(v)}});
  j["index"] = json::array();
  for (const auto& [x, v] : d.index)
    if (v != 0) j["index"].push_back({{"nerve", x}, {"value", to_string(v)}});
  j["omega"] = json::array();
  for (const auto& [s, v] : d.omega)
    if (v != 0) j["omega"].push_back({{"simplex", s}, {"value", to_string(v)}});
  return j;
}

ObstructionChain obstruction_from_json(const json& j) {
  ObstructionChain c;
  c.degree = j.at("degree").get<int>();
  for (const auto& [f, v] : j.at("coeffs").items()) c.coeffs[f] = int_of(v);
  return c;
}

json to_json(const ObstructionChain& c) {
  json co = json::object();
  for (const auto& [f, v] : c.coeffs)
    if (v != 0) co[f] = to_string(v);
  return {{"degree", c.degree}, {"coeffs", co}};
}

Supplier supplier_from_json(const json& j) {
  expect_schema(j, "supplier.v1");
  try {
    Supplier s;
    s.scalable = j.value("scalable", false);
    for (const auto& l : j.at("levels")) s.levels.push_back(obstruction_from_json(l));
    return s;
  } catch (const json::exception& e) {
    throw Error("parse", std::string("supplier.v1: ") + e.what());
  }
}

std::vector<CMat> path_from_json(const json& j) {
  expect_schema(j, "path.v1");
  try {
    std::vector<CMat> out;
    for (const auto& m : j.at("matrices")) {
      const long n = static_cast<long>(m.size());
      CMat A(n, n);
      for (long r = 0; r < n; ++r) {
        if (static_cast<long>(m[r].size()) != n) throw Error("shape", "path matrices must be square");
        for (long c = 0; c < n; ++c) A(r, c) = cplx_of(m[r][c]);
      }
      if (!A.isApprox(A.adjoint(), 1e-12) && n > 0) throw Error("shape", "path matrices must be hermitian");
      if (!out.empty() && out.back().rows() != n) throw Error("shape", "path matrices must share one size");
      out.push_back(A);
    }
    if (out.size() < 2) throw Error("shape", "a path needs at least two matrices");
    return out;
  } catch (const json::exception& e) {
    throw Error("parse", std::string("path.v1: ") + e.what());
  }
}

std::vector<cplx> samples_from_json(const json& j) {
  const json& s = j.is_object() ? j.at("samples") : j;
  std::vector<cplx> out;
  for (const auto& e : s) out.push_back(cplx_of(e));
  return out;
}

json to_json(const HomologyGroup& g) {
  json t = json::array();
  for (const auto& x : g.torsion) t.push_back(to_string(x));
  return {{"betti", g.betti}, {"torsion", t}, {"group", g.str()}};
}

json to_json(const ClassCoords& c) {
  auto strs = [](const IntVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
  };
  return {{"free", strs(c.free)}, {"torsion", strs(c.torsion)}, {"orders", strs(c.orders)}, {"zero", c.is_zero()}};
}

json schemas() {
  const json rat{{"type", "string"}, {"pattern", "^-?[0-9]+(/[0-9]+)?$"}};
  const json simplex{{"type", "array"}, {"items", {{"type", "integer"}}}};
  const json scomplex{{"type", "object"},
                      {"required", {"simplices"}},
                      {"properties",
                       {{"schema", {{"const", "scomplex.v1"}}},
                        {"vertices", {{"type", "array"}, {"items", {{"type", "integer"}}}}},
                        {"simplices", {{"type", "array"}, {"items", simplex}}}}}};
  json s;
  s["faceposet.v1"] = {
      {"type", "object"},
      {"required", {"dim", "atoms", "passages"}},
      {"properties",
       {{"dim", {{"type", "integer"}}},
        {"atoms", {{"type", "array"}, {"items", {{"type", "object"}, {"required", {"id", "codim"}}, {"properties", {{"id", {{"type", "string"}}}, {"codim", {{"type", "integer"}}}, {"connected", {{"type", "boolean"}}}}}}}}},
        {"passages", {{"type", "array"}, {"items", {{"type", "object"}, {"required", {"lower", "upper"}}, {"properties", {{"lower", {{"type", "string"}}}, {"upper", {{"type", "string"}}}, {"sign", {{"enum", {1, -1}}}}, {"mult", {{"type", "integer"}, {"minimum", 1}}}}}}}}},
        {"orientations", {{"type", "object"}, {"additionalProperties", {{"enum", {1, -1}}}}}},
        {"decomposition", {{"type", "object"}, {"properties", {{"faces", {{"type", "array"}, {"items", {{"type", "object"}, {"required", {"codim", "atoms"}}, {"properties", {{"id", {{"type", "string"}}}, {"codim", {{"type", "integer"}}}, {"atoms", {{"type", "array"}, {"items", {{"type", "string"}}}}}}}}}}}}}}}}}};
  s["scomplex.v1"] = scomplex;
  s["cochain.v1"] = {{"type", "object"},
                     {"required", {"degree", "values"}},
                     {"properties",
                      {{"degree", {{"type", "integer"}}},
                       {"coeff", {{"enum", {"Z", "Q", "Q/Z"}}}},
                       {"values", {{"type", "array"}, {"items", {{"type", "object"}, {"properties", {{"simplex", simplex}, {"value", rat}}}}}}}}}};
  s["chain.v1"] = {{"type", "object"},
                   {"required", {"degree", "terms"}},
                   {"properties",
                    {{"degree", {{"type", "integer"}}},
                     {"terms", {{"type", "array"}, {"items", {{"type", "object"}, {"properties", {{"simplex", simplex}, {"coeff", {{"type", {"integer", "string"}}}}}}}}}}}}};
  s["deligne-cochain.v1"] = {
      {"type", "object"},
      {"required", {"entries"}},
      {"properties",
       {{"k", {{"type", "integer"}}},
        {"degree", {{"type", "integer"}}},
        {"entries", {{"type", "array"}, {"items", {{"type", "object"}, {"properties", {{"nerve", simplex}, {"base", {{"type", {"array", "null"}}}}, {"value", rat}}}}}}}}}};
  s["ledger.v1"] = {
      {"type", "object"},
      {"required", {"base", "k"}},
      {"properties",
       {{"base", {{"oneOf", {scomplex, {{"type", "string"}}}}}},
        {"k", {{"type", "integer"}, {"minimum", 0}}},
        {"eta", {{"type", "array"}, {"items", {{"type", "object"}, {"properties", {{"nerve", simplex}, {"base", simplex}, {"value", rat}}}}}}},
        {"index", {{"type", "array"}, {"items", {{"type", "object"}, {"properties", {{"nerve", simplex}, {"value", {{"type", {"integer", "string"}}}}}}}}}},
        {"omega", {{"type", "array"}, {"items", {{"type", "object"}, {"properties", {{"simplex", simplex}, {"value", rat}}}}}}}}}};
  s["supplier.v1"] = {
      {"type", "object"},
      {"required", {"levels"}},
      {"properties",
       {{"scalable", {{"type", "boolean"}}},
        {"levels", {{"type", "array"}, {"items", {{"type", "object"}, {"properties", {{"degree", {{"type", "integer"}}}, {"coeffs", {{"type", "object"}}}}}}}}}}}};
  s["path.v1"] = {{"type", "object"},
                  {"required", {"matrices"}},
                  {"properties", {{"matrices", {{"type", "array"}, {"minItems", 2}, {"items", {{"type", "array"}}}}}}}};
  s["samples.v1"] = {{"type", "object"},
                     {"required", {"samples"}},
                     {"properties", {{"samples", {{"type", "array"}, {"items", {{"type", "array"}, {"minItems", 2}, {"maxItems", 2}}}}}}}};
  return s;
}

}  // namespace cix::io
