#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "cix/io.hpp"

namespace cix::cli {

namespace {

using io::json;

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 1;
  bool numeric = false;
  bool explain = false;
};

std::string scalar(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Flattens nested objects to dotted keys; arrays of scalars are joined.
void table_rows(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) table_rows(v, prefix.empty() ? k : prefix + "." + k, rows);
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return !e.is_structured(); });
    if (flat) {
      std::string s;
      for (const auto& e : j) s += (s.empty() ? "" : " ") + scalar(e);
      rows.push_back({prefix, s});
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) table_rows(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    }
  } else {
    rows.push_back({prefix, scalar(j)});
  }
}

void emit(std::ostream& out, const Globals& g, const json& j) {
  if (g.format == "table") {
    std::vector<std::pair<std::string, std::string>> rows;
    table_rows(j, "", rows);
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.first.size());
    for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
}

SimplicialComplex base_for(const std::string& opt, const json& doc) {
  if (!opt.empty()) return io::load_complex(opt);
  if (doc.contains("base")) {
    const auto& b = doc["base"];
    return b.is_string() ? io::load_complex(b.get<std::string>()) : io::complex_from_json(b);
  }
  throw Error("usage", "no base complex given (use --base or a \"base\" field)");
}

Chain cycle_for(const SimplicialComplex& K, const std::string& spec, int degree) {
  if (spec == "fundamental") {
    if (K.dim() != degree) throw Error("degree", "the fundamental cycle has degree " + std::to_string(K.dim()));
    return fundamental_cycle(K);
  }
  return io::chain_from_json(K, io::read_file(spec));
}

int max_refine_env(int fallback) {
  if (const char* s = std::getenv("CIX_MAX_REFINE")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end && *end == '\0' && v >= 0 && v <= 60) return static_cast<int>(v);
    throw Error("usage", std::string("CIX_MAX_REFINE must be an integer in [0,60], got '") + s + "'");
  }
  return fallback;
}

json validation_json(const ValidationReport& r) {
  json f = json::array();
  for (const auto& x : r.failures) f.push_back({{"kind", x.kind}, {"lower", x.lower}, {"upper", x.upper}, {"detail", x.detail}});
  return {{"valid", r.valid}, {"failures", f}, {"notes", r.notes}};
}

json admissibility_json(const AdmissibilityReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"kind", x.kind}, {"face", x.face}, {"witness", x.witness}, {"detail", x.detail}});
  return {{"admissible", r.verdict}, {"violations", v}};
}

json counts_json(const Cornered& m) {
  json a = json::array(), f = json::array();
  for (long c : atom_counts(m.poset)) a.push_back(c);
  for (long c : face_counts(m)) f.push_back(c);
  return {{"atoms", a}, {"faces", f}};
}

json defect_json(const LedgerDefect& d) {
  json j{{"nerve", d.nerve}, {"q", d.q}, {"value", to_string(d.value)}};
  j["base"] = d.q < 0 ? json(nullptr) : json(d.base);
  return j;
}

json report_json(const LedgerReport& r) {
  json d = json::array(), c = json::array();
  for (const auto& x : r.defects) d.push_back(defect_json(x));
  for (const auto& x : r.curvature_defects) c.push_back(defect_json(x));
  json j{{"closed", r.closed}, {"curvature_ok", r.curvature_ok}, {"ok", r.ok()}, {"defects", d}, {"curvature_defects", c}};
  j["v_group"] = io::to_json(r.v_group);
  if (r.closed) j["v_class"] = io::to_json(r.v_class);
  j["v_sign"] = r.v_sign;
  return j;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cix: exact index-theory computations on combinatorial models"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed", g.seed, "seed for randomized subcommands");
  app.add_flag("--numeric", g.numeric, "also print floating-point diagnostics");
  app.add_flag("--explain", g.explain, "add a short model description to the output");

  json result;
  std::function<void()> action;
  auto model = [&](const std::string& s) {
    if (g.explain) result["model"] = s;
  };

  // corners
  std::string f1, f2;
  auto* validate = app.add_subcommand("validate", "check diamond and sign coherence of a face poset");
  validate->add_option("file", f1)->required();
  validate->callback([&] {
    action = [&] { result = validation_json(validate_poset(io::cornered_from_json(io::read_file(f1)).poset)); };
  });

  auto* admissible = app.add_subcommand("admissible", "check admissibility of a face decomposition");
  admissible->add_option("file", f1)->required();
  admissible->callback([&] {
    action = [&] { result = admissibility_json(check_admissibility(io::cornered_from_json(io::read_file(f1)))); };
  });

  auto* prod = app.add_subcommand("product", "product of two cornered posets");
  prod->add_option("first", f1)->required();
  prod->add_option("second", f2)->required();
  prod->callback([&] {
    action = [&] {
      Cornered m = product(io::cornered_from_json(io::read_file(f1)), io::cornered_from_json(io::read_file(f2)));
      result = io::to_json(m);
      result["counts"] = counts_json(m);
    };
  });

  int simplex_n = 0;
  auto* simp = app.add_subcommand("simplex", "face poset of the standard n-simplex");
  simp->add_option("n", simplex_n)->required()->check(CLI::Range(0, 8));
  simp->callback([&] { action = [&] { result = io::to_json(simplex(simplex_n)); }; });

  // faces
  bool want_homology = false;
  std::optional<int> degree;
  std::vector<std::string> flips;
  auto* faces = app.add_subcommand("faces", "face complex and its homology");
  faces->add_option("file", f1)->required();
  faces->add_flag("--homology", want_homology);
  faces->add_option("--degree", degree);
  faces->add_option("--flip", flips, "reverse the representative orientation of a face");
  faces->callback([&] {
    action = [&] {
      FaceComplexOptions opt;
      opt.flip.insert(flips.begin(), flips.end());
      FaceComplex F = build_face_complex(io::cornered_from_json(io::read_file(f1)), opt);
      result = {{"dim", F.dim}};
      json gens = json::array(), ranks = json::array();
      for (int k = 0; k <= F.dim; ++k) {
        gens.push_back(F.generators[k]);
        ranks.push_back(F.rank(k));
      }
      result["ranks"] = ranks;
      result["generators"] = gens;
      json diff = json::array();
      for (int k = 0; k < F.dim; ++k) {
        json terms = json::array();
        for (std::size_t j = 0; j < F.rank(k + 1); ++j)
          for (std::size_t i = 0; i < F.rank(k); ++i) {
            const Int& v = F.complex.boundary[k + 1](i, j);
            if (v != 0) terms.push_back({{"from", F.generators[k + 1][j]}, {"to", F.generators[k][i]}, {"coeff", to_string(v)}});
          }
        diff.push_back(terms);
      }
      result["differential"] = diff;
      if (want_homology || degree) {
        json h = json::array();
        for (int k = 0; k <= F.dim; ++k) {
          if (degree && *degree != k) continue;
          json e = io::to_json(face_homology(F, k));
          e["degree"] = k;
          h.push_back(e);
        }
        result["homology"] = h;
      }
      model("degree = codimension; the differential maps a face to the faces it bounds");
    };
  });

  std::string supplier_file;
  auto* obstruct = app.add_subcommand("obstruct", "inductive taming feasibility from obstruction chains");
  obstruct->add_option("file", f1)->required();
  obstruct->add_option("--supplier", supplier_file)->required();
  obstruct->callback([&] {
    action = [&] {
      auto m = io::cornered_from_json(io::read_file(f1));
      auto s = io::supplier_from_json(io::read_file(supplier_file));
      auto r = taming_feasibility(m, s);
      json steps = json::array();
      for (const auto& st : r.steps) {
        json e{{"degree", st.degree}, {"action", st.action}, {"scale", to_string(st.scale)}, {"class", io::to_json(st.cls)}};
        if (st.action == "corrected") e["correction"] = io::to_json(st.correction);
        steps.push_back(e);
      }
      FaceComplex F = build_face_complex(m);
      json h = json::array();
      for (int k = 0; k <= F.dim; ++k) {
        json e = io::to_json(face_homology(F, k));
        e["degree"] = k;
        h.push_back(e);
      }
      result = {{"feasible", r.feasible}, {"scale", to_string(r.scale)}, {"steps", steps}, {"homology", h}};
      if (!r.witness.empty()) result["witness"] = r.witness;
    };
  });

  // nerve
  std::string coeff = "Z";
  int cech_degree = 0;
  auto* cech = app.add_subcommand("cech", "Cech cohomology of the star covering");
  cech->add_option("complex", f1, "scomplex.v1 file or built-in name")->required();
  cech->add_option("--coeff", coeff);
  cech->add_option("--degree", cech_degree)->required();
  cech->callback([&] {
    action = [&] {
      auto K = io::load_complex(f1);
      auto c = cech_cohomology(K, parse_coeff(coeff), cech_degree);
      result = io::to_json(c.group);
      result["group"] = c.str();
      result["coeff"] = coeff_name(c.coeff);
      result["degree"] = cech_degree;
      json sizes = json::array();
      for (int p = 0; p <= K.dim(); ++p) sizes.push_back(K.count(p));
      result["nerve_sizes"] = sizes;
    };
  });

  // deligne
  std::string base, cocycle, op = "class", cycle, nb = "support";
  auto* del = app.add_subcommand("deligne", "curvature, characteristic class or holonomy of a Deligne cocycle");
  del->add_option("--base", base);
  del->add_option("--cocycle", cocycle)->required();
  del->add_option("--op", op)->check(CLI::IsMember({"curvature", "class", "holonomy", "closed"}));
  del->add_option("--cycle", cycle);
  del->add_option("--neighborhood", nb)->check(CLI::IsMember({"support", "star"}));
  del->callback([&] {
    action = [&] {
      json doc = io::read_file(cocycle);
      auto K = base_for(base, doc);
      if (!doc.contains("k")) throw Error("usage", "deligne-cochain.v1 input needs \"k\"");
      DeligneModel M(K, doc["k"].get<int>());
      auto x = io::deligne_from_json(M, doc);
      result = {{"k", M.k()}, {"closed", is_closed(M, x)}};
      if (op == "closed") return;
      if (op == "curvature") {
        result["curvature"] = io::to_json(K, curvature(M, x));
      } else if (op == "class") {
        result["class"] = io::to_json(char_class(M, x));
        result["group"] = io::to_json(cech_presentation(K, M.k()).group());
      } else {
        if (cycle.empty()) throw Error("usage", "--op holonomy needs --cycle");
        Chain z = cycle_for(K, cycle, M.k() - 1);
        Rat h = holonomy(M, x, z, nb == "star" ? Neighborhood::ClosedStar : Neighborhood::SupportClosure);
        result["holonomy"] = to_string(h);
        if (g.numeric) result["holonomy_numeric"] = h.get_d();
      }
    };
  });

  // spectral
  std::string path_file, conv = "paper";
  auto* sf = app.add_subcommand("sf", "spectral flow along a piecewise-linear hermitian path");
  sf->add_option("--path", path_file)->required();
  sf->add_option("--sf-convention", conv)->check(CLI::IsMember({"paper", "standard"}));
  sf->callback([&] {
    action = [&] {
      SfOptions o;
      o.convention = conv == "paper" ? SfConvention::Default : SfConvention::Standard;
      o.max_halvings = max_refine_env(o.max_halvings);
      auto path = io::path_from_json(io::read_file(path_file));
      auto r = spectral_flow(path, o);
      json cr = json::array();
      for (const auto& c : r.crossings) {
        json e{{"segment", c.segment}, {"count", c.count}};
        if (g.numeric) e["t"] = c.t;
        cr.push_back(e);
      }
      result = {{"sf", r.sf}, {"convention", conv}, {"crossings", cr}};
      model("default convention (\"paper\") counts an eigenvalue moving from positive to negative as +1; standard is the negative");
    };
  });

  std::string loop, samples;
  auto* tr = app.add_subcommand("transmission", "index of the transmission family for a unitary loop");
  auto* lo = tr->add_option("--loop", loop, "e^{ik t}");
  auto* so = tr->add_option("--samples", samples, "samples.v1 file");
  lo->excludes(so);
  tr->callback([&] {
    action = [&] {
      UnitaryLoop u;
      if (!loop.empty())
        u = parse_loop(loop);
      else if (!samples.empty())
        u.samples = io::samples_from_json(io::read_file(samples));
      else
        throw Error("usage", "give --loop or --samples");
      auto r = transmission(u);
      result = {{"index", r.index}};
      if (g.numeric) {
        result["winding"] = winding_number(u);
        result["ccw"] = r.ccw;
        result["cw"] = r.cw;
      }
      model("index equals minus the winding number of the loop");
    };
  });

  std::string a_str, spin = "nonbounding";
  bool kernel_mode = false;
  auto* eta = app.add_subcommand("eta", "eta0 of the progression a + Z");
  eta->add_option("--a", a_str)->required();
  eta->add_option("--spin", spin)->check(CLI::IsMember({"bounding", "nonbounding"}));
  eta->add_flag("--kernel", kernel_mode, "allow a in Z (kernel present)");
  eta->callback([&] {
    action = [&] {
      Rat a = parse_rat(a_str);
      if (spin == "bounding") a += Rat(1, 2);
      auto e = eta0_progression(a, kernel_mode);
      result = {{"eta0", to_string(*e.exact)}, {"dim_ker", e.dim_ker}};
      if (g.numeric) {
        result["value"] = e.value;
        result["error"] = e.error;
      }
    };
  });

  int bern_n = 0;
  auto* bern = app.add_subcommand("bernoulli", "Bernoulli number from x e^x / (e^x - 1)");
  bern->add_option("n", bern_n)->required()->check(CLI::Range(0, 200));
  bern->callback([&] { action = [&] { result = {{"value", to_string(bernoulli(bern_n))}}; }; });

  int m = 1;
  std::string c1_file;
  auto* goette = app.add_subcommand("goette", "eta form B_{m+1}/(m+1)! c1^m of a circle bundle");
  goette->add_option("--m", m);
  goette->add_option("--c1", c1_file)->required();
  goette->add_option("--base", base);
  goette->callback([&] {
    action = [&] {
      json doc = io::read_file(c1_file);
      auto K = base_for(base, doc);
      auto gf = goette_eta_form(K, m, io::cochain_from_json(K, doc));
      result = {{"form", io::to_json(K, gf.form)}, {"even", gf.even}, {"warnings", gf.warnings},
                {"coefficient", to_string(bernoulli(m + 1) / Rat(factorial(m + 1)))}};
    };
  });

  std::string cycle_spec = "fundamental";
  auto* gerbe = app.add_subcommand("gerbe", "Deligne class of a circle bundle's eta forms and its holonomy");
  gerbe->add_option("--base", base);
  gerbe->add_option("--c1", c1_file)->required();
  gerbe->add_option("--m", m);
  gerbe->add_option("--cycle", cycle_spec);
  gerbe->callback([&] {
    action = [&] {
      json doc = io::read_file(c1_file);
      auto K = base_for(base, doc);
      Chain z = cycle_for(K, cycle_spec, 2 * m);
      auto r = s1_bundle_pipeline(K, io::cochain_from_json(K, doc), m, {z});
      DeligneModel M(K, 2 * m + 1);
      json h = json::array();
      for (const auto& x : r.holonomies) h.push_back(to_string(x));
      result = {{"k", 2 * m + 1}, {"holonomy", h}, {"v_zero", r.v_zero}, {"curvature_zero", r.curvature_zero},
                {"class", io::to_json(M, r.cls)}};
      // order of the class: smallest n with n * class a coboundary, searched up to (m+1)!·denominator
      Int bound = factorial(m + 1) * bernoulli(m + 1).get_den();
      for (Int n = 1; n <= bound; ++n)
        if (is_coboundary(M, scale(r.cls, Rat(n)))) {
          result["order"] = to_string(n);
          break;
        }
    };
  });

  // ledger
  std::string ledger_action, ledger_file, corr_file;
  int ledger_k = 1;
  auto* ledger = app.add_subcommand("ledger", "eta/index ledgers: verify | correct | chern | fixture");
  ledger->add_option("action", ledger_action)->required()->check(CLI::IsMember({"verify", "correct", "chern", "fixture"}));
  ledger->add_option("file", ledger_file, "ledger.v1 file (fixture: base complex)");
  ledger->add_option("--c", corr_file, "cochain.v1 of integer spectral flows on (k-1)-simplices");
  ledger->add_option("--k", ledger_k, "degree for fixture");
  ledger->add_option("--base", base, "base complex for fixture");
  ledger->callback([&] {
    action = [&] {
      if (ledger_action == "fixture") {
        auto K = io::load_complex(!base.empty() ? base : (!ledger_file.empty() ? ledger_file : "hexagon"));
        result = io::to_json(random_fixture(K, ledger_k, g.seed));
        return;
      }
      if (ledger_file.empty()) throw Error("usage", "ledger " + ledger_action + " needs a ledger.v1 file");
      auto d = io::ledger_from_json(io::read_file(ledger_file));
      if (ledger_action == "verify") {
        result = report_json(verify_closed(d));
      } else if (ledger_action == "correct") {
        if (corr_file.empty()) throw Error("usage", "ledger correct needs --c");
        json cj = io::read_file(corr_file);
        std::map<Simplex, Int> c;
        for (const auto& e : cj.at("values")) {
          Simplex s = e.at("simplex").get<Simplex>();
          std::sort(s.begin(), s.end());
          c[s] = io::int_of(e.at("value"));
        }
        result = io::to_json(index_correction(d, c));
      } else {
        auto h = chern_hat(d);
        DeligneModel M(d.base, d.k);
        result = {{"k", d.k}, {"factor", to_string(h.factor)}, {"class", io::to_json(M, h.cls)},
                  {"curvature", io::to_json(d.base, h.curvature)}};
        if (d.k == 1)
          for (std::size_t v = 0; v < d.base.count(0); ++v) {
            Chain pt{0, IntVec(d.base.count(0))};
            pt.c[v] = 1;
            result["point_holonomy"][std::to_string(d.base.simplex(0, v)[0])] = to_string(holonomy(M, h.cls, pt));
          }
        model("factor (-1)^(m-1) (m-1)! with m = ceil(k/2); k = 0 returns the index function");
      }
    };
  });

  auto* sch = app.add_subcommand("schemas", "dump the JSON schemas");
  sch->callback([&] { action = [&] { result = io::schemas(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }

  try {
    action();
    emit(out, g, result);
    return 0;
  } catch (const Error& e) {
    if (e.kind == "usage") {
      err << "usage error: " << e.what() << "\n";
      return 2;
    }
    emit(out, g, json{{"error", {{"kind", e.kind}, {"detail", e.what()}}}});
    return 1;
  } catch (const std::exception& e) {
    emit(out, g, json{{"error", {{"kind", "internal"}, {"detail", e.what()}}}});
    return 1;
  }
}

}  // namespace cix::cli
