#include "cbohf/deriv_integrals.hpp"

#include <cmath>
#include <stdexcept>

#include "md_kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cbohf {

using md::ETab;
using md::RTab;
using md::ShellPairData;

namespace {

// derivative selector acting on the 1D Hermite coefficients: value, bra- or
// ket-center derivative via the exact angular-momentum shift identity
enum class EMode { Val, DBra, DKet };

inline double ecoef(const ETab& e, double a, double b, EMode m, int i, int j, int t) {
  switch (m) {
    case EMode::Val: return e(i, j, t);
    case EMode::DBra: return 2.0 * a * e(i + 1, j, t) - i * e(i - 1, j, t);
    case EMode::DKet: return 2.0 * b * e(i, j + 1, t) - j * e(i, j - 1, t);
  }
  return 0.0;
}

constexpr std::array<std::array<int, 2>, 6> sec_pairs = {
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

struct PairDerivBlocks {
  std::array<Eigen::MatrixXd, 3> s_bra, t_bra, v_bra;
  std::array<Eigen::MatrixXd, 3> s_ket, t_ket, v_ket;
  std::array<std::array<Eigen::MatrixXd, 3>, 3> dip_bra, dip_ket;  // [dir][p]
  std::array<std::array<Eigen::MatrixXd, 6>, 3> sec_bra, sec_ket;  // [dir][c]
  std::vector<std::array<Eigen::MatrixXd, 3>> v_nuc;  // per-nucleus bra+ket sum
};

void one_electron_deriv_pair(const std::vector<Shell>& shells, const Molecule& mol,
                             const Vec3& origin, const ShellPairData& sp,
                             PairDerivBlocks& blk) {
  const Shell& sa = shells[sp.i];
  const Shell& sb = shells[sp.j];
  const auto ca = cartesian_components(sa.l);
  const auto cb = cartesian_components(sb.l);
  const auto na = md::component_norms(sa.l);
  const auto nb = md::component_norms(sb.l);
  const int nca = static_cast<int>(ca.size());
  const int ncb = static_cast<int>(cb.size());
  const int natoms = mol.n_atoms();

  const auto zero = Eigen::MatrixXd::Zero(nca, ncb).eval();
  for (int d = 0; d < 3; ++d) {
    blk.s_bra[d] = zero;
    blk.t_bra[d] = zero;
    blk.v_bra[d] = zero;
    blk.s_ket[d] = zero;
    blk.t_ket[d] = zero;
    blk.v_ket[d] = zero;
    for (int p = 0; p < 3; ++p) {
      blk.dip_bra[d][p] = zero;
      blk.dip_ket[d][p] = zero;
    }
    for (int c = 0; c < 6; ++c) {
      blk.sec_bra[d][c] = zero;
      blk.sec_ket[d][c] = zero;
    }
  }
  blk.v_nuc.assign(natoms, {zero, zero, zero});

  const Vec3 ra = mol.atoms[sa.atom].position;
  const Vec3 rb = mol.atoms[sb.atom].position;
  std::array<ETab, 3> e;
  RTab r;

  for (const auto& pp : sp.prims) {
    const double root = std::sqrt(constants::pi / pp.p);
    for (int d = 0; d < 3; ++d)
      md::build_e(e[d], pp.pctr[d] - ra[d], pp.pctr[d] - rb[d], pp.inv2p, pp.k[d],
                  sa.l + 1, sb.l + 3);

    auto s1 = [&](int d, EMode m, int i, int j) {
      return ecoef(e[d], pp.a, pp.b, m, i, j, 0) * root;
    };
    auto d1 = [&](int d, EMode m, int i, int j) {
      return (ecoef(e[d], pp.a, pp.b, m, i, j, 1) +
              (pp.pctr[d] - origin[d]) * ecoef(e[d], pp.a, pp.b, m, i, j, 0)) *
             root;
    };
    auto q1 = [&](int d, EMode m, int i, int j) {
      const double pc = pp.pctr[d] - origin[d];
      return (2.0 * ecoef(e[d], pp.a, pp.b, m, i, j, 2) +
              pp.inv2p * ecoef(e[d], pp.a, pp.b, m, i, j, 0) +
              2.0 * pc * ecoef(e[d], pp.a, pp.b, m, i, j, 1) +
              pc * pc * ecoef(e[d], pp.a, pp.b, m, i, j, 0)) *
             root;
    };
    auto t1 = [&](int d, EMode m, int i, int j) {
      double val = -2.0 * pp.b * pp.b * s1(d, m, i, j + 2) +
                   pp.b * (2.0 * j + 1.0) * s1(d, m, i, j);
      if (j >= 2) val -= 0.5 * j * (j - 1.0) * s1(d, m, i, j - 2);
      return val;
    };

    for (int ia = 0; ia < nca; ++ia)
      for (int ib = 0; ib < ncb; ++ib) {
        const auto& A = ca[ia];
        const auto& B = cb[ib];
        const double w = pp.cc;
        for (int dir = 0; dir < 3; ++dir)
          for (int which = 0; which < 2; ++which) {
            const EMode dm = which == 0 ? EMode::DBra : EMode::DKet;
            auto mode = [&](int d) { return d == dir ? dm : EMode::Val; };
            auto& sdst = which == 0 ? blk.s_bra : blk.s_ket;
            auto& tdst = which == 0 ? blk.t_bra : blk.t_ket;
            auto& ddst = which == 0 ? blk.dip_bra : blk.dip_ket;
            auto& qdst = which == 0 ? blk.sec_bra : blk.sec_ket;

            sdst[dir](ia, ib) += w * s1(0, mode(0), A[0], B[0]) *
                                 s1(1, mode(1), A[1], B[1]) *
                                 s1(2, mode(2), A[2], B[2]);
            double tval = 0.0;
            for (int dk = 0; dk < 3; ++dk) {
              double prod = w;
              for (int d = 0; d < 3; ++d)
                prod *= (d == dk) ? t1(d, mode(d), A[d], B[d])
                                  : s1(d, mode(d), A[d], B[d]);
              tval += prod;
            }
            tdst[dir](ia, ib) += tval;
            for (int p = 0; p < 3; ++p) {
              double prod = w;
              for (int d = 0; d < 3; ++d)
                prod *= (d == p) ? d1(d, mode(d), A[d], B[d])
                                 : s1(d, mode(d), A[d], B[d]);
              ddst[dir][p](ia, ib) += prod;
            }
            for (int c = 0; c < 6; ++c) {
              const int p = sec_pairs[c][0], q = sec_pairs[c][1];
              double prod = w;
              for (int d = 0; d < 3; ++d) {
                if (p == q)
                  prod *= (d == p) ? q1(d, mode(d), A[d], B[d])
                                   : s1(d, mode(d), A[d], B[d]);
                else
                  prod *= (d == p || d == q) ? d1(d, mode(d), A[d], B[d])
                                             : s1(d, mode(d), A[d], B[d]);
              }
              qdst[dir][c](ia, ib) += prod;
            }
          }
      }

    const int l_tot = sa.l + sb.l + 1;
    for (int nuc = 0; nuc < natoms; ++nuc) {
      md::build_r(r, pp.p, pp.pctr - mol.atoms[nuc].position, l_tot);
      const double pref = -mol.atoms[nuc].z * 2.0 * constants::pi / pp.p * pp.cc;
      for (int ia = 0; ia < nca; ++ia)
        for (int ib = 0; ib < ncb; ++ib) {
          const auto& A = ca[ia];
          const auto& B = cb[ib];
          for (int dir = 0; dir < 3; ++dir)
            for (int which = 0; which < 2; ++which) {
              const EMode dm = which == 0 ? EMode::DBra : EMode::DKet;
              auto mode = [&](int d) { return d == dir ? dm : EMode::Val; };
              double sum = 0.0;
              const int tx = A[0] + B[0] + (dir == 0 ? 1 : 0);
              const int ty = A[1] + B[1] + (dir == 1 ? 1 : 0);
              const int tz = A[2] + B[2] + (dir == 2 ? 1 : 0);
              for (int t = 0; t <= tx; ++t) {
                const double ex = ecoef(e[0], pp.a, pp.b, mode(0), A[0], B[0], t);
                if (ex == 0.0) continue;
                for (int u = 0; u <= ty; ++u) {
                  const double exy =
                      ex * ecoef(e[1], pp.a, pp.b, mode(1), A[1], B[1], u);
                  if (exy == 0.0) continue;
                  for (int w2 = 0; w2 <= tz; ++w2)
                    sum += exy * ecoef(e[2], pp.a, pp.b, mode(2), A[2], B[2], w2) *
                           r(t, u, w2);
                }
              }
              auto& dst = which == 0 ? blk.v_bra : blk.v_ket;
              dst[dir](ia, ib) += pref * sum;
              blk.v_nuc[nuc][dir](ia, ib) += pref * sum;
            }
        }
    }
  }

  for (int ia = 0; ia < nca; ++ia)
    for (int ib = 0; ib < ncb; ++ib) {
      const double f = na[ia] * nb[ib];
      for (int d = 0; d < 3; ++d) {
        blk.s_bra[d](ia, ib) *= f;
        blk.s_ket[d](ia, ib) *= f;
        blk.t_bra[d](ia, ib) *= f;
        blk.t_ket[d](ia, ib) *= f;
        blk.v_bra[d](ia, ib) *= f;
        blk.v_ket[d](ia, ib) *= f;
        for (int p = 0; p < 3; ++p) {
          blk.dip_bra[d][p](ia, ib) *= f;
          blk.dip_ket[d][p](ia, ib) *= f;
        }
        for (int c = 0; c < 6; ++c) {
          blk.sec_bra[d][c](ia, ib) *= f;
          blk.sec_ket[d][c](ia, ib) *= f;
        }
      }
      for (int nuc = 0; nuc < natoms; ++nuc)
        for (int d = 0; d < 3; ++d) blk.v_nuc[nuc][d](ia, ib) *= f;
    }
}

}  // namespace

OneElectronDerivatives compute_one_electron_derivatives(const IntegralStore& ints,
                                                        int atom, Exec exec) {
  if (atom < 0 || atom >= ints.molecule.n_atoms())
    throw std::invalid_argument("derivative atom index out of range");
  const int m = ints.dim;
  OneElectronDerivatives out;
  for (int d = 0; d < 3; ++d) {
    out.s[d] = Eigen::MatrixXd::Zero(m, m);
    out.t[d] = out.s[d];
    out.v[d] = out.s[d];
    out.v_operator[d] = out.s[d];
    for (int p = 0; p < 3; ++p) out.dipole[d][p] = out.s[d];
    for (int c = 0; c < 6; ++c) out.second[d][c] = out.s[d];
  }

  const int nsh = static_cast<int>(ints.shells.size());
  std::vector<std::pair<int, int>> ij;
  for (int i = 0; i < nsh; ++i)
    for (int j = 0; j <= i; ++j) ij.emplace_back(i, j);

  const bool par = exec == Exec::Parallel;
  // shell pairs write disjoint matrix blocks, so the loop is race-free
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(ij.size()); ++k) {
    const auto [i, j] = ij[k];
    const Shell& sa = ints.shells[i];
    const Shell& sb = ints.shells[j];
    const bool bra_on = sa.atom == atom;
    const bool ket_on = sb.atom == atom;

    PairDerivBlocks blk;
    ShellPairData sp = md::make_shell_pair(ints.shells, i, j, ints.molecule, 1e-18);
    one_electron_deriv_pair(ints.shells, ints.molecule, ints.origin, sp, blk);

    const int oi = ints.offsets[i], oj = ints.offsets[j];
    const int ni = sa.n_cartesian(), nj = sb.n_cartesian();
    auto add = [&](Eigen::MatrixXd& full, const Eigen::MatrixXd& b, double w) {
      full.block(oi, oj, ni, nj) += w * b;
      if (i != j) full.block(oj, oi, nj, ni) += w * b.transpose();
    };
    for (int d = 0; d < 3; ++d) {
      if (bra_on) {
        add(out.s[d], blk.s_bra[d], 1.0);
        add(out.t[d], blk.t_bra[d], 1.0);
        add(out.v[d], blk.v_bra[d], 1.0);
        for (int p = 0; p < 3; ++p) add(out.dipole[d][p], blk.dip_bra[d][p], 1.0);
        for (int c = 0; c < 6; ++c) add(out.second[d][c], blk.sec_bra[d][c], 1.0);
      }
      if (ket_on) {
        add(out.s[d], blk.s_ket[d], 1.0);
        add(out.t[d], blk.t_ket[d], 1.0);
        add(out.v[d], blk.v_ket[d], 1.0);
        for (int p = 0; p < 3; ++p) add(out.dipole[d][p], blk.dip_ket[d][p], 1.0);
        for (int c = 0; c < 6; ++c) add(out.second[d][c], blk.sec_ket[d][c], 1.0);
      }
      // operator-center (Hellmann-Feynman) piece via translational invariance
      // of the single-nucleus attraction: dV_C/dC = -(bra + ket)
      add(out.v_operator[d], blk.v_nuc[atom][d], -1.0);
      add(out.v[d], blk.v_nuc[atom][d], -1.0);
    }
  }
  return out;
}

namespace {

// derivative ERI component blocks for one shell quartet: slots A,B,C are
// evaluated by angular shifts, slot D follows from translational invariance.
void eri_deriv_quartet(const std::vector<Shell>& shells, const Molecule& mol,
                       const ShellPairData& bra, const ShellPairData& ket,
                       std::array<std::array<std::vector<double>, 3>, 4>& blocks) {
  const Shell& sa = shells[bra.i];
  const Shell& sb = shells[bra.j];
  const Shell& sc = shells[ket.i];
  const Shell& sd = shells[ket.j];
  const auto compa = cartesian_components(sa.l);
  const auto compb = cartesian_components(sb.l);
  const auto compc = cartesian_components(sc.l);
  const auto compd = cartesian_components(sd.l);
  const int nca = static_cast<int>(compa.size()), ncb = static_cast<int>(compb.size());
  const int ncc = static_cast<int>(compc.size()), ncd = static_cast<int>(compd.size());
  const auto na = md::component_norms(sa.l), nb = md::component_norms(sb.l);
  const auto nc = md::component_norms(sc.l), nd = md::component_norms(sd.l);
  const size_t nel = static_cast<size_t>(nca) * ncb * ncc * ncd;
  for (int slot = 0; slot < 3; ++slot)
    for (auto& dirblk : blocks[slot]) dirblk.assign(nel, 0.0);

  const Vec3 ra = mol.atoms[sa.atom].position;
  const Vec3 rb = mol.atoms[sb.atom].position;
  const Vec3 rc = mol.atoms[sc.atom].position;
  const Vec3 rd = mol.atoms[sd.atom].position;

  const int lbra = sa.l + sb.l + 1;  // headroom for the angular shifts
  const int lket = sc.l + sd.l + 1;
  const int ltot = lbra + lket;

  std::array<ETab, 3> eb, ek;
  RTab r;
  const int hb = lbra + 1;
  // H tables: 0 = plain ket (serves bra slots), 1..3 = ket-C derivative per
  // dir; the fourth slot follows from translational invariance downstream
  std::array<std::vector<double>, 4> h;
  for (auto& hh : h) hh.assign(static_cast<size_t>(ncc) * ncd * hb * hb * hb, 0.0);

  for (const auto& pb : bra.prims) {
    for (int d = 0; d < 3; ++d)
      md::build_e(eb[d], pb.pctr[d] - ra[d], pb.pctr[d] - rb[d], pb.inv2p, pb.k[d],
                  sa.l + 1, sb.l + 1);
    for (const auto& pk : ket.prims) {
      const double w = std::abs(pb.cc) * pb.k[0] * pb.k[1] * pb.k[2] *
                       std::abs(pk.cc) * pk.k[0] * pk.k[1] * pk.k[2];
      if (w < 1e-19) continue;
      for (int d = 0; d < 3; ++d)
        md::build_e(ek[d], pk.pctr[d] - rc[d], pk.pctr[d] - rd[d], pk.inv2p, pk.k[d],
                    sc.l + 1, sd.l + 1);
      const double alpha = pb.p * pk.p / (pb.p + pk.p);
      md::build_r(r, alpha, pb.pctr - pk.pctr, ltot);
      const double pref = 2.0 * std::pow(constants::pi, 2.5) /
                          (pb.p * pk.p * std::sqrt(pb.p + pk.p)) * pb.cc * pk.cc;

      auto kmode = [](int hidx, int d) {
        if (hidx >= 1 && hidx <= 3 && d == hidx - 1) return EMode::DBra;
        return EMode::Val;
      };

      for (int hidx = 0; hidx < 4; ++hidx)
        for (int ic = 0; ic < ncc; ++ic)
          for (int id = 0; id < ncd; ++id) {
            const auto& C = compc[ic];
            const auto& D = compd[id];
            double* hs = &h[hidx][(static_cast<size_t>(ic) * ncd + id) * hb * hb * hb];
            const int mx = C[0] + D[0] + (kmode(hidx, 0) != EMode::Val ? 1 : 0);
            const int my = C[1] + D[1] + (kmode(hidx, 1) != EMode::Val ? 1 : 0);
            const int mz = C[2] + D[2] + (kmode(hidx, 2) != EMode::Val ? 1 : 0);
            for (int t = 0; t < hb; ++t)
              for (int u = 0; t + u < hb; ++u)
                for (int v = 0; t + u + v < hb; ++v) {
                  double sum = 0.0;
                  for (int tau = 0; tau <= mx; ++tau) {
                    const double ex =
                        ecoef(ek[0], pk.a, pk.b, kmode(hidx, 0), C[0], D[0], tau);
                    if (ex == 0.0) continue;
                    for (int nu = 0; nu <= my; ++nu) {
                      const double exy = ex * ecoef(ek[1], pk.a, pk.b,
                                                    kmode(hidx, 1), C[1], D[1], nu);
                      if (exy == 0.0) continue;
                      for (int ph = 0; ph <= mz; ++ph) {
                        const double sign = ((tau + nu + ph) % 2) ? -1.0 : 1.0;
                        sum += sign * exy *
                               ecoef(ek[2], pk.a, pk.b, kmode(hidx, 2), C[2], D[2],
                                     ph) *
                               r(t + tau, u + nu, v + ph);
                      }
                    }
                  }
                  hs[(t * hb + u) * hb + v] = sum;
                }
          }

      for (int ia = 0; ia < nca; ++ia)
        for (int ib = 0; ib < ncb; ++ib) {
          const auto& A = compa[ia];
          const auto& B = compb[ib];
          for (int ic = 0; ic < ncc; ++ic)
            for (int id = 0; id < ncd; ++id) {
              const size_t eidx =
                  ((static_cast<size_t>(ia) * ncb + ib) * ncc + ic) * ncd + id;
              const double* hval =
                  &h[0][(static_cast<size_t>(ic) * ncd + id) * hb * hb * hb];
              for (int slot = 0; slot < 2; ++slot)
                for (int dir = 0; dir < 3; ++dir) {
                  const EMode dm = slot == 0 ? EMode::DBra : EMode::DKet;
                  auto bmode = [&](int d) { return d == dir ? dm : EMode::Val; };
                  double sum = 0.0;
                  const int tx = A[0] + B[0] + (dir == 0 ? 1 : 0);
                  const int ty = A[1] + B[1] + (dir == 1 ? 1 : 0);
                  const int tz = A[2] + B[2] + (dir == 2 ? 1 : 0);
                  for (int t = 0; t <= tx; ++t) {
                    const double ex = ecoef(eb[0], pb.a, pb.b, bmode(0), A[0], B[0], t);
                    if (ex == 0.0) continue;
                    for (int u = 0; u <= ty; ++u) {
                      const double exy =
                          ex * ecoef(eb[1], pb.a, pb.b, bmode(1), A[1], B[1], u);
                      if (exy == 0.0) continue;
                      for (int v = 0; v <= tz; ++v)
                        sum += exy *
                               ecoef(eb[2], pb.a, pb.b, bmode(2), A[2], B[2], v) *
                               hval[(t * hb + u) * hb + v];
                    }
                  }
                  blocks[slot][dir][eidx] += pref * sum;
                }
              for (int slot = 2; slot < 3; ++slot)
                for (int dir = 0; dir < 3; ++dir) {
                  const int hidx = 1 + dir;
                  const double* hs =
                      &h[hidx][(static_cast<size_t>(ic) * ncd + id) * hb * hb * hb];
                  double sum = 0.0;
                  for (int t = 0; t <= A[0] + B[0]; ++t) {
                    const double ex = eb[0](A[0], B[0], t);
                    for (int u = 0; u <= A[1] + B[1]; ++u) {
                      const double exy = ex * eb[1](A[1], B[1], u);
                      for (int v = 0; v <= A[2] + B[2]; ++v)
                        sum += exy * eb[2](A[2], B[2], v) * hs[(t * hb + u) * hb + v];
                    }
                  }
                  blocks[slot][dir][eidx] += pref * sum;
                }
            }
        }
    }
  }

  for (int ia = 0; ia < nca; ++ia)
    for (int ib = 0; ib < ncb; ++ib)
      for (int ic = 0; ic < ncc; ++ic)
        for (int id = 0; id < ncd; ++id) {
          const size_t eidx =
              ((static_cast<size_t>(ia) * ncb + ib) * ncc + ic) * ncd + id;
          const double f = na[ia] * nb[ib] * nc[ic] * nd[id];
          for (int slot = 0; slot < 3; ++slot)
            for (int dir = 0; dir < 3; ++dir) blocks[slot][dir][eidx] *= f;
        }
}

// sum of the closed-shell two-particle coefficient over the distinct
// permutation images of (a,b,c,d)
double symmetrized_gamma(const Eigen::MatrixXd& d, int a, int b, int c, int dd) {
  const std::array<std::array<int, 4>, 8> perms = {{{a, b, c, dd},
                                                    {b, a, c, dd},
                                                    {a, b, dd, c},
                                                    {b, a, dd, c},
                                                    {c, dd, a, b},
                                                    {dd, c, a, b},
                                                    {c, dd, b, a},
                                                    {dd, c, b, a}}};
  double sum = 0.0;
  for (int i = 0; i < 8; ++i) {
    bool dup = false;
    for (int j = 0; j < i; ++j)
      if (perms[j] == perms[i]) {
        dup = true;
        break;
      }
    if (dup) continue;
    const auto& p = perms[i];
    sum += 0.5 * d(p[0], p[1]) * d(p[2], p[3]) - 0.25 * d(p[0], p[3]) * d(p[2], p[1]);
  }
  return sum;
}

}  // namespace

Eigen::MatrixXd eri_gradient_contraction(const IntegralStore& ints,
                                         const Eigen::MatrixXd& density, Exec exec) {
  const auto pairs = md::make_pair_list(ints.shells, ints.molecule, 1e-18);
  const int npairs = static_cast<int>(pairs.size());
  const int natoms = ints.molecule.n_atoms();
  const double thresh = ints.schwarz_threshold;
  const double dmax = std::max(1.0, density.cwiseAbs().maxCoeff());

  const bool par = exec == Exec::Parallel;
  const int nthreads = par ? thread_count() : 1;
  std::vector<Eigen::MatrixXd> partial(nthreads, Eigen::MatrixXd::Zero(natoms, 3));

#ifdef _OPENMP
#pragma omp parallel num_threads(nthreads) if (par)
#endif
  {
#ifdef _OPENMP
    const int tid = omp_get_thread_num();
#else
    const int tid = 0;
#endif
    Eigen::MatrixXd& grad = partial[tid];
    std::array<std::array<std::vector<double>, 3>, 4> blocks;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (int p = 0; p < npairs; ++p) {
      for (int q = 0; q <= p; ++q) {
        const auto& bra = pairs[p];
        const auto& ket = pairs[q];
        if (ints.schwarz.size() > 0 &&
            ints.schwarz(bra.i, bra.j) * ints.schwarz(ket.i, ket.j) * dmax * dmax <
                thresh)
          continue;
        const std::array<int, 4> atom_of = {
            ints.shells[bra.i].atom, ints.shells[bra.j].atom, ints.shells[ket.i].atom,
            ints.shells[ket.j].atom};
        if (atom_of[0] == atom_of[1] && atom_of[1] == atom_of[2] &&
            atom_of[2] == atom_of[3])
          continue;  // one-center quartet: derivatives cancel exactly
        eri_deriv_quartet(ints.shells, ints.molecule, bra, ket, blocks);

        const int oa = ints.offsets[bra.i], ob = ints.offsets[bra.j];
        const int oc = ints.offsets[ket.i], od = ints.offsets[ket.j];
        const int nca = ints.shells[bra.i].n_cartesian();
        const int ncb = ints.shells[bra.j].n_cartesian();
        const int ncc = ints.shells[ket.i].n_cartesian();
        const int ncd = ints.shells[ket.j].n_cartesian();
        for (int ia = 0; ia < nca; ++ia)
          for (int ib = 0; ib < ncb; ++ib) {
            const int a = oa + ia, b = ob + ib;
            if (a < b) continue;
            const std::int64_t pab = static_cast<std::int64_t>(a) * (a + 1) / 2 + b;
            for (int ic = 0; ic < ncc; ++ic)
              for (int id = 0; id < ncd; ++id) {
                const int c = oc + ic, dd = od + id;
                if (c < dd) continue;
                const std::int64_t pcd =
                    static_cast<std::int64_t>(c) * (c + 1) / 2 + dd;
                if (p == q && pab < pcd) continue;
                const double g = symmetrized_gamma(density, a, b, c, dd);
                if (g == 0.0) continue;
                const size_t eidx =
                    ((static_cast<size_t>(ia) * ncb + ib) * ncc + ic) * ncd + id;
                for (int dir = 0; dir < 3; ++dir) {
                  const double va = blocks[0][dir][eidx];
                  const double vb = blocks[1][dir][eidx];
                  const double vc = blocks[2][dir][eidx];
                  grad(atom_of[0], dir) += g * va;
                  grad(atom_of[1], dir) += g * vb;
                  grad(atom_of[2], dir) += g * vc;
                  grad(atom_of[3], dir) -= g * (va + vb + vc);
                }
              }
          }
      }
    }
  }

  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(natoms, 3);
  for (const auto& g : partial) total += g;
  return total;
}

std::vector<double> dense_eri_derivative(const IntegralStore& ints, int atom,
                                         int dir) {
  const std::size_t m = ints.dim;
  if (m * m * m * m > 20'000'000)
    throw std::runtime_error("dense derivative ERI tensor too large");
  if (atom < 0 || atom >= ints.molecule.n_atoms())
    throw std::invalid_argument("derivative atom index out of range");
  std::vector<double> out(m * m * m * m, 0.0);
  const auto pairs = md::make_pair_list(ints.shells, ints.molecule, 1e-18);
  std::array<std::array<std::vector<double>, 3>, 4> blocks;
  for (int p = 0; p < static_cast<int>(pairs.size()); ++p)
    for (int q = 0; q <= p; ++q) {
      const auto& bra = pairs[p];
      const auto& ket = pairs[q];
      eri_deriv_quartet(ints.shells, ints.molecule, bra, ket, blocks);
      const std::array<int, 4> atom_of = {
          ints.shells[bra.i].atom, ints.shells[bra.j].atom, ints.shells[ket.i].atom,
          ints.shells[ket.j].atom};
      const int oa = ints.offsets[bra.i], ob = ints.offsets[bra.j];
      const int oc = ints.offsets[ket.i], od = ints.offsets[ket.j];
      const int nca = ints.shells[bra.i].n_cartesian();
      const int ncb = ints.shells[bra.j].n_cartesian();
      const int ncc = ints.shells[ket.i].n_cartesian();
      const int ncd = ints.shells[ket.j].n_cartesian();
      for (int ia = 0; ia < nca; ++ia)
        for (int ib = 0; ib < ncb; ++ib)
          for (int ic = 0; ic < ncc; ++ic)
            for (int id = 0; id < ncd; ++id) {
              const std::size_t a = oa + ia, b = ob + ib, c = oc + ic, dd = od + id;
              // avoid double filling from the symmetric images of this loop
              if (p == q && (static_cast<std::int64_t>(a) * (a + 1) / 2 + b) <
                                (static_cast<std::int64_t>(c) * (c + 1) / 2 + dd))
                continue;
              const size_t eidx =
                  ((static_cast<size_t>(ia) * ncb + ib) * ncc + ic) * ncd + id;
              double v = 0.0;
              for (int slot = 0; slot < 3; ++slot)
                if (atom_of[slot] == atom) v += blocks[slot][dir][eidx];
              if (atom_of[3] == atom)
                v -= blocks[0][dir][eidx] + blocks[1][dir][eidx] + blocks[2][dir][eidx];
              const std::size_t idx[8][4] = {{a, b, c, dd}, {b, a, c, dd},
                                             {a, b, dd, c}, {b, a, dd, c},
                                             {c, dd, a, b}, {dd, c, a, b},
                                             {c, dd, b, a}, {dd, c, b, a}};
              for (const auto& qd : idx)
                out[eri_index(m, qd[0], qd[1], qd[2], qd[3])] = v;
            }
    }
  return out;
}

}  // namespace cbohf
