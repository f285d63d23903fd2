#include "doctest.h"

#include <random>

#include "cix/nerve.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cix;

namespace {

const std::vector<long> kPrimes = {2, 3, 5};

SimplicialComplex named(const std::string& n) { return complexes::by_name(n); }

}  // namespace

TEST_CASE("complex builders") {
  CHECK(named("hexagon").count(0) == 6);
  CHECK(named("hexagon").count(1) == 6);
  CHECK(named("octahedron").count(2) == 8);
  CHECK(named("torus").count(2) == 16);
  CHECK(named("torus").count(1) == 24);
  CHECK(named("torus").count(0) == 8);
  // euler characteristics
  auto chi = [](const SimplicialComplex& K) {
    long c = 0;
    for (int p = 0; p <= K.dim(); ++p) c += (p % 2 ? -1 : 1) * static_cast<long>(K.count(p));
    return c;
  };
  CHECK(chi(named("octahedron")) == 2);
  CHECK(chi(named("torus")) == 0);
  CHECK(chi(named("rp2")) == 1);
  CHECK(chi(complexes::prism(named("hexagon"))) == 0);
  CHECK_THROWS_AS(named("klein"), Error);
}

TEST_CASE("sort_sign") {
  std::vector<int> t{2, 0, 1};
  CHECK(sort_sign(t) == 1);
  CHECK(t == std::vector<int>{0, 1, 2});
  std::vector<int> u{1, 0};
  CHECK(sort_sign(u) == -1);
  std::vector<int> r{1, 1};
  CHECK(sort_sign(r) == 0);
}

TEST_CASE("cech cohomology: known groups") {
  auto H = [](const std::string& n, Coeff g, int k) { return cech_cohomology(named(n), g, k).group; };
  CHECK(H("hexagon", Coeff::Z, 0) == HomologyGroup{1, {}});
  CHECK(H("hexagon", Coeff::Z, 1) == HomologyGroup{1, {}});
  CHECK(H("octahedron", Coeff::Z, 1) == HomologyGroup{0, {}});
  CHECK(H("octahedron", Coeff::Z, 2) == HomologyGroup{1, {}});
  CHECK(H("torus", Coeff::Z, 1) == HomologyGroup{2, {}});
  CHECK(H("torus", Coeff::Z, 2) == HomologyGroup{1, {}});
  CHECK(H("rp2", Coeff::Z, 1) == HomologyGroup{0, {}});
  CHECK(H("rp2", Coeff::Z, 2) == HomologyGroup{0, {Int(2)}});
  CHECK(H("rp2", Coeff::Q, 2) == HomologyGroup{0, {}});
  // Q/Z: H^1(RP^2; Q/Z) = Z/2 (universal coefficients), top degree Q/Z-summands on orientable surfaces
  CHECK(H("rp2", Coeff::QZ, 1) == HomologyGroup{0, {Int(2)}});
  CHECK(H("torus", Coeff::QZ, 2).betti == 1);
}

TEST_CASE("cech cohomology agrees with the unnormalized ordered nerve") {
  for (const std::string n : {"hexagon", "octahedron", "rp2", "torus"}) {
    auto K = named(n);
    int top = n == "torus" ? 1 : K.dim();  // the ordered torus nerve is large in degree 2
    for (int k = 0; k <= top; ++k) {
      auto g = cech_cohomology(K, Coeff::Z, k).group;
      auto o = oracle::ordered_cech_cohomology(K, k, kPrimes);
      CHECK(g.betti == o.betti);
      CHECK(oracle::divisible_counts(g, kPrimes) == o.divisible);
    }
  }
}

TEST_CASE("coboundary squares to zero") {
  for (const std::string n : {"hexagon", "octahedron", "rp2", "torus"}) {
    auto K = named(n);
    for (int p = 0; p + 2 <= K.dim(); ++p) CHECK(matmul(coboundary_matrix(K, p + 1), coboundary_matrix(K, p)).is_zero());
  }
}

TEST_CASE("alternating evaluation") {
  auto K = complexes::full_simplex(2);
  CechCochain c;
  c.p = 1;
  c.values = {Rat(1), Rat(2), Rat(3)};  // [0,1], [0,2], [1,2]
  CHECK(c.eval(K, {0, 1}) == 1);
  CHECK(c.eval(K, {1, 0}) == -1);
  CHECK(c.eval(K, {2, 1}) == -3);
  CHECK(c.eval(K, {1, 1}) == 0);
}

TEST_CASE("cup product: hand values on the 2-simplex") {
  auto K = complexes::full_simplex(2);
  auto e = [&](std::vector<int> s) {
    Cochain c = zero_cochain(K, 1);
    c.v[K.index(s)] = 1;
    return c;
  };
  Cochain a = e({0, 1}), b = e({1, 2});
  CHECK(cup(K, a, b).v[K.index({0, 1, 2})] == 1);
  CHECK(cup(K, b, a).v[K.index({0, 1, 2})] == 0);
  CHECK(oracle::aw_value(K, a, b, {0, 1, 2}) == 1);
}

TEST_CASE("cup product: Leibniz and agreement with the oracle") {
  std::mt19937_64 rng(31);
  for (const std::string n : {"octahedron", "torus", "rp2"}) {
    auto K = named(n);
    for (int t = 0; t < 10; ++t) {
      int p = rng() % 2, q = static_cast<int>(rng() % 2);
      if (p + q + 1 > K.dim()) q = 0;
      Cochain a = fixture::random_cochain(rng, K, p), b = fixture::random_cochain(rng, K, q);
      Cochain ab = cup(K, a, b);
      for (std::size_t i = 0; i < K.count(p + q); ++i) CHECK(ab.v[i] == oracle::aw_value(K, a, b, K.simplex(p + q, i)));
      Cochain lhs = simplicial_d(K, ab);
      Cochain rhs = add(cup(K, simplicial_d(K, a), b), cup(K, a, simplicial_d(K, b)), p % 2 ? -1 : 1);
      CHECK(lhs.v == rhs.v);
    }
  }
}

TEST_CASE("fundamental cycles") {
  for (const std::string n : {"hexagon", "octahedron", "torus"}) {
    auto K = named(n);
    Chain z = fundamental_cycle(K);
    CHECK(z.q == K.dim());
    Chain bz = simplicial_boundary(K, z);
    for (const auto& x : bz.c) CHECK(x == 0);
    for (const auto& x : z.c) CHECK(abs(x) == 1);
  }
  CHECK_THROWS_AS(fundamental_cycle(named("rp2")), Error);
}

TEST_CASE("stokes: evaluate(dw, z) = evaluate(w, bz)") {
  std::mt19937_64 rng(37);
  auto K = complexes::prism(named("hexagon"));
  for (int t = 0; t < 10; ++t) {
    Cochain w = fixture::random_cochain(rng, K, 1);
    Chain z{2, IntVec(K.count(2))};
    for (auto& x : z.c) x = static_cast<long>(rng() % 5) - 2;
    CHECK(evaluate(simplicial_d(K, w), z) == evaluate(w, simplicial_boundary(K, z)));
  }
}
