#pragma once

#include <map>
#include <string>
#include <vector>

#include "cix/arith.hpp"

namespace cix {

struct Atom {
  std::string id;
  int codim = 0;
  bool connected = true;
};

// lower has codim one more than upper. A self-touching atom repeats a passage.
struct Passage {
  std::string lower, upper;
  int sign = 1;
  int mult = 1;
};

struct FacePoset {
  int dim = 0;
  std::vector<Atom> atoms;
  std::vector<Passage> passages;
  std::map<std::string, int> orientations;  // codim-0 atom -> +1/-1 (default +1)
};

struct Face {
  std::string id;
  int codim = 0;
  std::vector<std::string> atoms;
};

struct FaceDecomposition {
  std::vector<Face> faces;
};

struct Cornered {
  FacePoset poset;
  FaceDecomposition decomposition;
};

// Adjacency view of a poset; passages expanded by multiplicity.
class PosetIndex {
 public:
  explicit PosetIndex(const FacePoset& p);  // throws Error("structure") on malformed input
  std::size_t size() const { return codim_.size(); }
  int index(const std::string& id) const;  // -1 if unknown
  const std::string& id(std::size_t i) const { return ids_[i]; }
  int codim(std::size_t i) const { return codim_[i]; }
  struct Step {
    std::size_t to;
    int sign;
  };
  const std::vector<Step>& up(std::size_t i) const { return up_[i]; }
  const std::vector<Step>& down(std::size_t i) const { return down_[i]; }
  // number of passage chains from a (lower) up to b
  long chains(std::size_t a, std::size_t b) const;
  bool below(std::size_t a, std::size_t b) const { return a == b || chains(a, b) > 0; }

 private:
  std::vector<std::string> ids_;
  std::vector<int> codim_;
  std::map<std::string, std::size_t> pos_;
  std::vector<std::vector<Step>> up_, down_;
};

struct ValidationFailure {
  std::string kind;  // "diamond" | "sign"
  std::string lower, upper;
  std::string detail;
};

struct ValidationReport {
  bool valid = true;
  std::vector<ValidationFailure> failures;
  std::vector<std::string> notes;
};

ValidationReport validate_poset(const FacePoset& p);

struct AdmissibilityViolation {
  std::string kind;  // "embedding-failure" | "face-union-failure"
  std::string face;
  std::vector<std::string> witness;
  std::string detail;
};

struct AdmissibilityReport {
  bool verdict = true;
  std::vector<AdmissibilityViolation> violations;
};

// Throws Error("partition") if d is not a partition of the atoms by codim.
void check_partition(const FacePoset& p, const FaceDecomposition& d);
AdmissibilityReport check_admissibility(const FacePoset& p, const FaceDecomposition& d);
inline AdmissibilityReport check_admissibility(const Cornered& m) { return check_admissibility(m.poset, m.decomposition); }

Cornered product(const Cornered& a, const Cornered& b);
Cornered boundary_face(const Cornered& m, const std::string& face);
std::string adjacent_face(const Cornered& m, const std::string& i, const std::string& k);
FaceDecomposition reduce(const FacePoset& p, const FaceDecomposition& d);
FaceDecomposition atomic_decomposition(const FacePoset& p);
std::string default_face_id(std::vector<std::string> atoms);
// atom counts per codim 0..dim
std::vector<long> atom_counts(const FacePoset& p);
std::vector<long> face_counts(const Cornered& m);
// faces j < i: some atom of j lies below some atom of i
bool face_below(const Cornered& m, const PosetIndex& idx, const Face& j, const Face& i);
const Face& find_face(const FaceDecomposition& d, const std::string& id);

Cornered point();
Cornered interval();
Cornered interval_merged();
Cornered simplex(int n);
Cornered one_eck();
Cornered q4_example();
Cornered power(const Cornered& m, int n);

}  // namespace cix
