#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cix/corners.hpp"
#include "cix/homology.hpp"

namespace cix {

struct FaceComplex {
  int dim = 0;
  std::vector<std::vector<std::string>> generators;  // degree k: codim-k face ids, sorted
  std::map<std::string, std::map<std::string, int>> orientation;  // representative orientation per face
  IntChainComplex complex;  // boundary[k+1] : C_{k+1} -> C_k

  std::size_t rank(int k) const { return k < 0 || k > dim ? 0 : generators[k].size(); }
  int position(int k, const std::string& face) const;  // -1 if absent
  int kappa(const std::string& lower, const std::string& upper) const;
};

struct FaceComplexOptions {
  std::map<std::string, int> base_orientations;  // overrides the poset's codim-0 tokens
  std::set<std::string> flip;                    // faces whose representative is reversed
};

FaceComplex build_face_complex(const Cornered& m, const FaceComplexOptions& opt = {});
HomologyGroup face_homology(const FaceComplex& F, int k);

struct ObstructionChain {
  int degree = 0;
  std::map<std::string, Int> coeffs;
};

IntVec to_vector(const FaceComplex& F, const ObstructionChain& c);
ObstructionChain from_vector(const FaceComplex& F, int degree, const IntVec& v);
ObstructionChain boundary(const FaceComplex& F, const ObstructionChain& c);  // the face differential
ObstructionChain dual_d(const FaceComplex& F, const ObstructionChain& u);    // adjoint, degree + 1

Int dual_pairing(const FaceComplex& F, const ObstructionChain& c, const ObstructionChain& u);

struct DescendResult {
  ClassCoords cls;
  HomologyGroup group;
  bool zero = false;
};
DescendResult obstruction_descend(const FaceComplex& F, const ObstructionChain& c);

// D with c2 = c + boundary(D), or nullopt when the classes differ.
std::optional<ObstructionChain> correction_chain(const FaceComplex& F, const ObstructionChain& c,
                                                 const ObstructionChain& c2);

struct Supplier {
  std::vector<ObstructionChain> levels;  // in processing order, top codim first
  bool scalable = false;
};

struct FeasibilityStep {
  int degree = 0;
  std::string action;  // "zero" | "corrected" | "scaled" | "blocked"
  Int scale = 1;
  ClassCoords cls;
  ObstructionChain correction;
};

struct FeasibilityResult {
  bool feasible = true;
  Int scale = 1;
  std::vector<FeasibilityStep> steps;
  std::string witness;
};

FeasibilityResult taming_feasibility(const Cornered& m, const Supplier& s, const FaceComplexOptions& opt = {});

}  // namespace cix
