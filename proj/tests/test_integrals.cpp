#include <doctest.h>

#include <cmath>
#include <iostream>

#include "cbohf/constants.hpp"
#include "cbohf/integrals.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace cbohf;

namespace {

// molecule + inline basis holding one shell per atom, for oracle comparisons
struct TinySystem {
  Molecule mol;
  BasisSet bs;
};

TinySystem two_function_system(double ra_exp, double rb_exp, int la, int lb,
                               const Vec3& a_pos, const Vec3& b_pos) {
  TinySystem t;
  t.mol.atoms.emplace_back(1, a_pos);
  t.mol.atoms.emplace_back(1, b_pos);
  t.mol.monomers.emplace_back(0, 2);
  Shell sa;
  sa.l = la;
  sa.exponents = {ra_exp};
  sa.coefficients = {1.0};
  sa.normalize();
  Shell sb;
  sb.l = lb;
  sb.exponents = {rb_exp};
  sb.coefficients = {1.0};
  sb.normalize();
  // one element entry per distinct atom is enough here: both atoms are H, so
  // attach the two shells to the same element and give each atom one of them
  // by using two elements instead
  t.mol.atoms[1].z = 2;
  t.mol.atoms[1].mass_amu = 4.0026;
  t.mol.charge = 1;  // even electron count; irrelevant for integrals
  t.bs.shells_by_element[1] = {sa};
  t.bs.shells_by_element[2] = {sb};
  return t;
}

oracle::PrimGauss normalized_prim(double alpha, const std::array<int, 3>& pow,
                                  const Vec3& c) {
  oracle::PrimGauss g{c, alpha, pow};
  return g;
}

double oracle_norm(const oracle::PrimGauss& g) {
  return 1.0 / std::sqrt(oracle::self_overlap(g));
}

}  // namespace

TEST_CASE("single normalized s function: S = [[1]], parity zeros") {
  TinySystem t = two_function_system(0.9, 0.5, 0, 0, Vec3(0, 0, 0), Vec3(0, 0, 9.0));
  t.mol.atoms.resize(1);
  t.mol.monomers.clear();
  t.mol.monomers.emplace_back(0, 1);
  t.mol.charge = -1;  // 2 electrons on one center; irrelevant for integrals
  IntegralSettings st;
  st.origin_from_molecule = false;
  IntegralStore ints = compute_one_electron(t.mol, t.bs, st);
  REQUIRE(ints.dim == 1);
  CHECK(ints.S(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  // s function centered at the origin: <s|x|s> = 0 by parity
  CHECK(std::abs(ints.dipole[0](0, 0)) < 1e-14);
  CHECK(std::abs(ints.dipole[2](0, 0)) < 1e-14);
}

TEST_CASE("two s functions, exps 1.0/0.5 at 1 bohr separation: frozen oracle values") {
  TinySystem t = two_function_system(1.0, 0.5, 0, 0, Vec3(0, 0, 0), Vec3(0, 0, 1.0));
  IntegralSettings st;
  st.origin_from_molecule = false;  // multipole origin at (0,0,0)
  IntegralStore ints = compute_one_electron(t.mol, t.bs, st);
  REQUIRE(ints.dim == 2);

  auto ga = normalized_prim(1.0, {0, 0, 0}, Vec3(0, 0, 0));
  auto gb = normalized_prim(0.5, {0, 0, 0}, Vec3(0, 0, 1.0));
  const double na = oracle_norm(ga), nb = oracle_norm(gb);

  const double s01 = oracle::overlap(ga, gb) * na * nb;
  const double t01 = oracle::kinetic(ga, gb) * na * nb;
  const double z01 = oracle::moment(ga, gb, {0, 0, 1}, Vec3(0, 0, 0)) * na * nb;

  CHECK(ints.S(0, 1) == doctest::Approx(s01).epsilon(1e-9));
  CHECK(ints.T(0, 1) == doctest::Approx(t01).epsilon(1e-9));
  CHECK(ints.dipole[2](0, 1) == doctest::Approx(z01).epsilon(1e-9));

  // frozen values computed with the quadrature oracle
  CHECK(s01 == doctest::Approx(0.655950067155821).epsilon(1e-10));
  CHECK(t01 == doctest::Approx(0.510183385565640).epsilon(1e-10));
  CHECK(z01 == doctest::Approx(0.218650022385275).epsilon(1e-10));
}

TEST_CASE("one-electron engine vs quadrature oracle for p and d functions") {
  const Vec3 pa(0.1, -0.2, 0.3), pb(-0.4, 0.5, 1.1);
  const Vec3 origin(0.05, -0.1, 0.2);
  TinySystem t = two_function_system(0.8, 1.3, 1, 2, pa, pb);
  IntegralSettings st;
  st.origin = origin;
  st.origin_from_molecule = false;
  IntegralStore ints = compute_one_electron(t.mol, t.bs, st);
  REQUIRE(ints.dim == 3 + 6);

  const auto pcomp = cartesian_components(1);
  const auto dcomp = cartesian_components(2);
  for (int ia = 0; ia < 3; ++ia)
    for (int ib = 0; ib < 6; ++ib) {
      auto ga = normalized_prim(0.8, pcomp[ia], pa);
      auto gb = normalized_prim(1.3, dcomp[ib], pb);
      const double nn = oracle_norm(ga) * oracle_norm(gb);
      CHECK(ints.S(ia, 3 + ib) ==
            doctest::Approx(nn * oracle::overlap(ga, gb)).epsilon(1e-9));
      CHECK(ints.T(ia, 3 + ib) ==
            doctest::Approx(nn * oracle::kinetic(ga, gb)).epsilon(1e-9));
      // nuclear attraction: charges 1 and 2 at the two centers
      const double v = -1.0 * oracle::coulomb_point(ga, gb, pa) -
                       2.0 * oracle::coulomb_point(ga, gb, pb);
      CHECK(ints.V(ia, 3 + ib) == doctest::Approx(nn * v).epsilon(1e-8));
      for (int p = 0; p < 3; ++p) {
        std::array<int, 3> op{0, 0, 0};
        op[p] = 1;
        CHECK(ints.dipole[p](ia, 3 + ib) ==
              doctest::Approx(nn * oracle::moment(ga, gb, op, origin)).epsilon(1e-9));
      }
      const std::array<std::array<int, 3>, 6> secs = {
          {{2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}}};
      for (int c = 0; c < 6; ++c)
        CHECK(ints.second[c](ia, 3 + ib) ==
              doctest::Approx(nn * oracle::moment(ga, gb, secs[c], origin))
                  .epsilon(1e-9));
    }
}

TEST_CASE("matrices symmetric; overlap positive definite") {
  Molecule m = testutil::hf_molecule();
  BasisSet bs = testutil::basis("sto-3g");
  IntegralStore ints = compute_one_electron(m, bs);
  CHECK((ints.S - ints.S.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((ints.T - ints.T.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((ints.V - ints.V.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  for (int p = 0; p < 3; ++p)
    CHECK((ints.dipole[p] - ints.dipole[p].transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(ints.smallest_s_eigenvalue > 0);
}

TEST_CASE("(ss|ss) same center, exponent one: closed-form Boys oracle") {
  TinySystem t = two_function_system(1.0, 1.0, 0, 0, Vec3(0, 0, 0), Vec3(0, 0, 0));
  t.mol.atoms.resize(1);
  t.mol.monomers.clear();
  t.mol.monomers.emplace_back(0, 1);
  t.mol.charge = -1;
  t.bs.shells_by_element.erase(2);
  IntegralSettings st;
  st.origin_from_molecule = false;
  IntegralStore ints = compute_integrals(t.mol, t.bs, st);
  std::vector<double> g = dense_eri(ints);
  const double norm = std::pow(2.0 / constants::pi, 0.75);  // (2a/pi)^(3/4), a=1
  const double f0 = 1.0;                                    // F_0(0)
  const double ref = std::pow(norm, 4) * 2.0 * std::pow(constants::pi, 2.5) /
                     (2.0 * 2.0 * std::sqrt(4.0)) * f0;
  CHECK(g[eri_index(1, 0, 0, 0, 0)] == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("eri engine vs transform-quadrature oracle, two-center s/p mix") {
  const Vec3 pa(0, 0, 0), pb(0.1, 0.2, 0.9);
  TinySystem t = two_function_system(1.0, 0.8, 0, 1, pa, pb);
  IntegralSettings st;
  st.origin_from_molecule = false;
  IntegralStore ints = compute_integrals(t.mol, t.bs, st);
  REQUIRE(ints.dim == 4);
  std::vector<double> g = dense_eri(ints);

  const auto pcomp = cartesian_components(1);
  auto prim = [&](int idx) {
    if (idx == 0) return normalized_prim(1.0, {0, 0, 0}, pa);
    return normalized_prim(0.8, pcomp[idx - 1], pb);
  };
  // a representative set of index quartets, including off-diagonal ones
  const std::array<std::array<int, 4>, 8> quartets = {{{0, 0, 0, 0},
                                                       {0, 1, 0, 1},
                                                       {0, 0, 1, 1},
                                                       {1, 1, 3, 3},
                                                       {0, 1, 2, 3},
                                                       {3, 0, 2, 0},
                                                       {2, 2, 3, 1},
                                                       {0, 3, 3, 3}}};
  for (const auto& q : quartets) {
    auto a = prim(q[0]), b = prim(q[1]), c = prim(q[2]), d = prim(q[3]);
    const double nn = oracle_norm(a) * oracle_norm(b) * oracle_norm(c) * oracle_norm(d);
    const double ref = nn * oracle::eri(a, b, c, d);
    CHECK(g[eri_index(4, q[0], q[1], q[2], q[3])] == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("eri permutational symmetry on a real molecule") {
  Molecule m = testutil::hf_molecule();
  BasisSet bs = testutil::basis("sto-3g");
  IntegralStore ints = compute_integrals(m, bs);
  std::vector<double> g = dense_eri(ints);
  const std::size_t n = ints.dim;
  // spot-check the full 8-fold symmetry on a deterministic index sample
  for (std::size_t a = 0; a < n; a += 2)
    for (std::size_t b = 0; b <= a; b += 1)
      for (std::size_t c = 0; c < n; c += 3)
        for (std::size_t d = 0; d <= c; ++d) {
          const double v = g[eri_index(n, a, b, c, d)];
          CHECK(g[eri_index(n, b, a, c, d)] == doctest::Approx(v).epsilon(1e-12));
          CHECK(g[eri_index(n, a, b, d, c)] == doctest::Approx(v).epsilon(1e-12));
          CHECK(g[eri_index(n, c, d, a, b)] == doctest::Approx(v).epsilon(1e-12));
        }
}

TEST_CASE("serial and parallel integral passes agree exactly") {
  Molecule m = testutil::hf_molecule();
  BasisSet bs = testutil::basis("cc-pvdz");
  IntegralSettings ser;
  ser.exec = Exec::Serial;
  IntegralSettings par;
  par.exec = Exec::Parallel;
  IntegralStore a = compute_integrals(m, bs, ser);
  IntegralStore b = compute_integrals(m, bs, par);
  CHECK((a.S - b.S).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.V - b.V).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(a.eri.size() == b.eri.size());
  for (size_t i = 0; i < a.eri.size(); i += 97) {
    CHECK(a.eri[i].value == b.eri[i].value);
    CHECK(a.eri[i].a == b.eri[i].a);
  }
}
