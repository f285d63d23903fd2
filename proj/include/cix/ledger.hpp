#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cix/deligne.hpp"

namespace cix {

// Eta forms per nerve p-simplex (p <= k-1, form degree k-1-p on its closed star),
// integer indices per nerve k-simplex, and the local index form omega.
struct EtaLedgerData {
  SimplicialComplex base;
  int k = 1;
  std::map<std::pair<Simplex, Simplex>, Rat> eta;  // (nerve simplex, base simplex) -> value
  std::map<Simplex, Int> index;
  std::map<Simplex, Rat> omega;
  int m() const { return (k + 1) / 2; }
};

DeligneCochain assemble(const DeligneModel& M, const EtaLedgerData& d);
EtaLedgerData disassemble(const DeligneModel& M, const DeligneCochain& c, const Cochain& omega);
Cochain omega_cochain(const EtaLedgerData& d);

struct LedgerDefect {
  Simplex nerve;
  Simplex base;  // empty for the integral row
  int q = 0;
  Rat value;
};

struct LedgerReport {
  bool closed = true;
  bool curvature_ok = true;
  std::vector<LedgerDefect> defects;            // nonzero entries of the total differential
  std::vector<LedgerDefect> curvature_defects;  // (vertex, k-simplex) where d(eta top) differs from omega
  ClassCoords v_class;
  HomologyGroup v_group;
  int v_sign = 1;  // (-1)^m
  bool ok() const { return closed && curvature_ok; }
};

LedgerReport verify_closed(const EtaLedgerData& d);

// Shift by the spectral-flow cochain c on nerve (k-1)-simplices: eta0 row by -c, index by (-1)^(k+1) delta c.
EtaLedgerData index_correction(const EtaLedgerData& d, const std::map<Simplex, Int>& c);

Int chern_factor(int k);  // (-1)^(m-1) (m-1)!, and 1 for k = 0
struct ChernHat {
  DeligneCochain cls;
  Cochain curvature;
  Int factor;
};
ChernHat chern_hat(const EtaLedgerData& d);

struct S1Bundle {
  DeligneCochain cls;
  Cochain form;
  bool v_zero = true;
  bool curvature_zero = true;
  std::vector<Rat> holonomies;
};
S1Bundle s1_bundle_pipeline(const SimplicialComplex& base, const Cochain& c1, int m, const std::vector<Chain>& cycles);

// Closed data: lift of a random integral cocycle + a(random form) + d(random primitive); omega = curvature.
EtaLedgerData random_fixture(const SimplicialComplex& K, int k, std::uint64_t seed);

}  // namespace cix
