#include "cbohf/integrals.hpp"

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

constexpr double eri_storage_eps = 1e-16;

// symmetric second-moment component order: xx,xy,xz,yy,yz,zz
constexpr std::array<std::array<int, 2>, 6> sec_pairs = {
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

struct OneEBlock {
  Eigen::MatrixXd s, t, v;
  std::array<Eigen::MatrixXd, 3> dip;
  std::array<Eigen::MatrixXd, 6> sec;
};

void one_electron_pair(const std::vector<Shell>& shells, const Molecule& mol,
                       const Vec3& origin, const ShellPairData& sp, OneEBlock& blk) {
  const Shell& sa = shells[sp.i];
  const Shell& sb = shells[sp.j];
  const auto ca = cartesian_components(sa.l);
  const auto cb = cartesian_components(sb.l);
  const auto na = md::component_norms(sa.l);
  const auto nb = md::component_norms(sb.l);
  const int nca = static_cast<int>(ca.size());
  const int ncb = static_cast<int>(cb.size());

  blk.s = Eigen::MatrixXd::Zero(nca, ncb);
  blk.t = blk.s;
  blk.v = blk.s;
  for (auto& m : blk.dip) m = blk.s;
  for (auto& m : blk.sec) m = blk.s;

  const Vec3 ra = mol.atoms[sa.atom].position;
  const Vec3 rb = mol.atoms[sb.atom].position;
  std::array<ETab, 3> e;
  RTab r;

  for (const auto& pp : sp.prims) {
    const double root = std::sqrt(constants::pi / pp.p);
    for (int d = 0; d < 3; ++d)
      md::build_e(e[d], pp.pctr[d] - ra[d], pp.pctr[d] - rb[d], pp.inv2p, pp.k[d],
                  sa.l, sb.l + 2);

    auto s1 = [&](int d, int i, int j) { return e[d](i, j, 0) * root; };
    auto d1 = [&](int d, int i, int j) {
      return (e[d](i, j, 1) + (pp.pctr[d] - origin[d]) * e[d](i, j, 0)) * root;
    };
    auto q1 = [&](int d, int i, int j) {
      const double pc = pp.pctr[d] - origin[d];
      return (2.0 * e[d](i, j, 2) + pp.inv2p * e[d](i, j, 0) +
              2.0 * pc * e[d](i, j, 1) + pc * pc * e[d](i, j, 0)) *
             root;
    };
    auto t1 = [&](int d, int i, int j) {
      double val = -2.0 * pp.b * pp.b * s1(d, i, j + 2) +
                   pp.b * (2.0 * j + 1.0) * s1(d, i, j);
      if (j >= 2) val -= 0.5 * j * (j - 1.0) * s1(d, i, j - 2);
      return val;
    };

    for (int ia = 0; ia < nca; ++ia)
      for (int ib = 0; ib < ncb; ++ib) {
        const auto& A = ca[ia];
        const auto& B = cb[ib];
        const double w = pp.cc;
        const std::array<double, 3> sv{s1(0, A[0], B[0]), s1(1, A[1], B[1]),
                                       s1(2, A[2], B[2])};
        const std::array<double, 3> dv{d1(0, A[0], B[0]), d1(1, A[1], B[1]),
                                       d1(2, A[2], B[2])};
        blk.s(ia, ib) += w * sv[0] * sv[1] * sv[2];
        blk.t(ia, ib) += w * (t1(0, A[0], B[0]) * sv[1] * sv[2] +
                              sv[0] * t1(1, A[1], B[1]) * sv[2] +
                              sv[0] * sv[1] * t1(2, A[2], B[2]));
        for (int p = 0; p < 3; ++p) {
          double val = w;
          for (int d = 0; d < 3; ++d) val *= (d == p) ? dv[d] : sv[d];
          blk.dip[p](ia, ib) += val;
        }
        for (int c = 0; c < 6; ++c) {
          const int p = sec_pairs[c][0], q = sec_pairs[c][1];
          double val = w;
          if (p == q) {
            for (int d = 0; d < 3; ++d) val *= (d == p) ? q1(d, A[d], B[d]) : sv[d];
          } else {
            for (int d = 0; d < 3; ++d) val *= (d == p || d == q) ? dv[d] : sv[d];
          }
          blk.sec[c](ia, ib) += val;
        }
      }

    const int l_tot = sa.l + sb.l;
    for (const auto& atom : mol.atoms) {
      md::build_r(r, pp.p, pp.pctr - atom.position, l_tot);
      const double pref = -atom.z * 2.0 * constants::pi / pp.p * pp.cc;
      for (int ia = 0; ia < nca; ++ia)
        for (int ib = 0; ib < ncb; ++ib) {
          const auto& A = ca[ia];
          const auto& B = cb[ib];
          double sum = 0.0;
          for (int t = 0; t <= A[0] + B[0]; ++t)
            for (int u = 0; u <= A[1] + B[1]; ++u)
              for (int w2 = 0; w2 <= A[2] + B[2]; ++w2)
                sum += e[0](A[0], B[0], t) * e[1](A[1], B[1], u) *
                       e[2](A[2], B[2], w2) * r(t, u, w2);
          blk.v(ia, ib) += pref * sum;
        }
    }
  }

  for (int ia = 0; ia < nca; ++ia)
    for (int ib = 0; ib < ncb; ++ib) {
      const double f = na[ia] * nb[ib];
      blk.s(ia, ib) *= f;
      blk.t(ia, ib) *= f;
      blk.v(ia, ib) *= f;
      for (auto& m : blk.dip) m(ia, ib) *= f;
      for (auto& m : blk.sec) m(ia, ib) *= f;
    }
}

}  // namespace

namespace md {

// Full Cartesian component block of (ab|cd) for one shell quartet.
// Declared here for reuse by the derivative translation unit.
void eri_quartet_block(const std::vector<Shell>& shells, const Molecule& mol,
                       const ShellPairData& bra, const ShellPairData& ket,
                       std::vector<double>& block) {
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
  const auto na = component_norms(sa.l), nb = component_norms(sb.l);
  const auto nc = component_norms(sc.l), nd = component_norms(sd.l);

  block.assign(static_cast<size_t>(nca) * ncb * ncc * ncd, 0.0);

  const Vec3 ra = mol.atoms[sa.atom].position;
  const Vec3 rb = mol.atoms[sb.atom].position;
  const Vec3 rc = mol.atoms[sc.atom].position;
  const Vec3 rd = mol.atoms[sd.atom].position;

  const int lbra = sa.l + sb.l;
  const int lket = sc.l + sd.l;
  const int ltot = lbra + lket;

  std::array<ETab, 3> eb, ek;
  RTab r;
  const int hb = lbra + 1;
  std::vector<double> h(static_cast<size_t>(ncc) * ncd * hb * hb * hb);

  for (const auto& pb : bra.prims) {
    for (int d = 0; d < 3; ++d)
      md::build_e(eb[d], pb.pctr[d] - ra[d], pb.pctr[d] - rb[d], pb.inv2p, pb.k[d],
                  sa.l, sb.l);
    for (const auto& pk : ket.prims) {
      const double w = std::abs(pb.cc) * pb.k[0] * pb.k[1] * pb.k[2] *
                       std::abs(pk.cc) * pk.k[0] * pk.k[1] * pk.k[2];
      if (w < 1e-19) continue;
      for (int d = 0; d < 3; ++d)
        md::build_e(ek[d], pk.pctr[d] - rc[d], pk.pctr[d] - rd[d], pk.inv2p, pk.k[d],
                    sc.l, sd.l);
      const double alpha = pb.p * pk.p / (pb.p + pk.p);
      md::build_r(r, alpha, pb.pctr - pk.pctr, ltot);
      const double pref = 2.0 * std::pow(constants::pi, 2.5) /
                          (pb.p * pk.p * std::sqrt(pb.p + pk.p)) * pb.cc * pk.cc;

      // half transform: fold the ket Hermite coefficients into R
      for (int ic = 0; ic < ncc; ++ic)
        for (int id = 0; id < ncd; ++id) {
          const auto& C = compc[ic];
          const auto& D = compd[id];
          double* hs = &h[(static_cast<size_t>(ic) * ncd + id) * hb * hb * hb];
          for (int t = 0; t <= lbra; ++t)
            for (int u = 0; t + u <= lbra; ++u)
              for (int v = 0; t + u + v <= lbra; ++v) {
                double sum = 0.0;
                for (int tau = 0; tau <= C[0] + D[0]; ++tau) {
                  const double ex = ek[0](C[0], D[0], tau);
                  for (int nu = 0; nu <= C[1] + D[1]; ++nu) {
                    const double exy = ex * ek[1](C[1], D[1], nu);
                    for (int ph = 0; ph <= C[2] + D[2]; ++ph) {
                      const double sign = ((tau + nu + ph) % 2) ? -1.0 : 1.0;
                      sum += sign * exy * ek[2](C[2], D[2], ph) *
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
              const double* hs = &h[(static_cast<size_t>(ic) * ncd + id) * hb * hb * hb];
              double sum = 0.0;
              for (int t = 0; t <= A[0] + B[0]; ++t) {
                const double ex = eb[0](A[0], B[0], t);
                for (int u = 0; u <= A[1] + B[1]; ++u) {
                  const double exy = ex * eb[1](A[1], B[1], u);
                  for (int v = 0; v <= A[2] + B[2]; ++v)
                    sum += exy * eb[2](A[2], B[2], v) * hs[(t * hb + u) * hb + v];
                }
              }
              block[((static_cast<size_t>(ia) * ncb + ib) * ncc + ic) * ncd + id] +=
                  pref * sum;
            }
        }
    }
  }

  for (int ia = 0; ia < nca; ++ia)
    for (int ib = 0; ib < ncb; ++ib)
      for (int ic = 0; ic < ncc; ++ic)
        for (int id = 0; id < ncd; ++id)
          block[((static_cast<size_t>(ia) * ncb + ib) * ncc + ic) * ncd + id] *=
              na[ia] * nb[ib] * nc[ic] * nd[id];
}

std::vector<ShellPairData> make_pair_list(const std::vector<Shell>& shells,
                                          const Molecule& mol, double prim_threshold) {
  std::vector<ShellPairData> pairs;
  const int nsh = static_cast<int>(shells.size());
  for (int i = 0; i < nsh; ++i)
    for (int j = 0; j <= i; ++j) {
      ShellPairData sp = make_shell_pair(shells, i, j, mol, prim_threshold);
      if (!sp.prims.empty()) pairs.push_back(std::move(sp));
    }
  return pairs;
}

}  // namespace md

const Eigen::MatrixXd& IntegralStore::second_pq(int p, int q) const {
  static constexpr int map[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  return second[map[p][q]];
}

Eigen::MatrixXd IntegralStore::lambda_dipole(const Vec3& lam) const {
  return lam.x() * dipole[0] + lam.y() * dipole[1] + lam.z() * dipole[2];
}

Eigen::MatrixXd IntegralStore::lambda_second(const Vec3& lam) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) m += lam[p] * lam[q] * second_pq(p, q);
  return m;
}

IntegralStore compute_one_electron(const Molecule& m, const BasisSet& bs,
                                   const IntegralSettings& settings) {
  m.validate();
  IntegralStore st;
  st.molecule = m;
  st.shells = bs.shells_for(m);
  st.offsets = shell_offsets(st.shells);
  st.dim = basis_dimension(st.shells);
  st.origin = settings.origin_from_molecule ? center_of_nuclear_charge(m) : settings.origin;
  st.schwarz_threshold = settings.schwarz_threshold;

  st.S = Eigen::MatrixXd::Zero(st.dim, st.dim);
  st.T = st.S;
  st.V = st.S;
  for (auto& mm : st.dipole) mm = st.S;
  for (auto& mm : st.second) mm = st.S;

  const int nsh = static_cast<int>(st.shells.size());
  std::vector<std::pair<int, int>> ij;
  for (int i = 0; i < nsh; ++i)
    for (int j = 0; j <= i; ++j) ij.emplace_back(i, j);

  const bool par = settings.exec == Exec::Parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(ij.size()); ++k) {
    const auto [i, j] = ij[k];
    md::ShellPairData sp =
        md::make_shell_pair(st.shells, i, j, m, settings.prim_pair_threshold);
    OneEBlock blk;
    one_electron_pair(st.shells, m, st.origin, sp, blk);
    const int oi = st.offsets[i], oj = st.offsets[j];
    const int ni = st.shells[i].n_cartesian(), nj = st.shells[j].n_cartesian();
    auto put = [&](Eigen::MatrixXd& full, const Eigen::MatrixXd& b) {
      full.block(oi, oj, ni, nj) = b;
      if (i != j) full.block(oj, oi, nj, ni) = b.transpose();
    };
    put(st.S, blk.s);
    put(st.T, blk.t);
    put(st.V, blk.v);
    for (int p = 0; p < 3; ++p) put(st.dipole[p], blk.dip[p]);
    for (int c = 0; c < 6; ++c) put(st.second[c], blk.sec[c]);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(st.S);
  st.smallest_s_eigenvalue = es.eigenvalues().minCoeff();
  st.lindep_warning = st.smallest_s_eigenvalue < settings.lindep_threshold;
  return st;
}

void compute_eri(IntegralStore& st, const IntegralSettings& settings) {
  const auto pairs = md::make_pair_list(st.shells, st.molecule, settings.prim_pair_threshold);
  const int npairs = static_cast<int>(pairs.size());
  const int nsh = static_cast<int>(st.shells.size());

  // shell-pair Schwarz bounds from the (ab|ab) diagonal
  st.schwarz = Eigen::MatrixXd::Zero(nsh, nsh);
  std::vector<double> pair_q(npairs, 0.0);
  const bool par = settings.exec == Exec::Parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
  for (int p = 0; p < npairs; ++p) {
    std::vector<double> block;
    md::eri_quartet_block(st.shells, st.molecule, pairs[p], pairs[p], block);
    const int na = st.shells[pairs[p].i].n_cartesian();
    const int nb = st.shells[pairs[p].j].n_cartesian();
    double q = 0.0;
    for (int ia = 0; ia < na; ++ia)
      for (int ib = 0; ib < nb; ++ib) {
        const double v =
            block[((static_cast<size_t>(ia) * nb + ib) * na + ia) * nb + ib];
        q = std::max(q, std::abs(v));
      }
    pair_q[p] = std::sqrt(q);
  }
  for (int p = 0; p < npairs; ++p) {
    st.schwarz(pairs[p].i, pairs[p].j) = pair_q[p];
    st.schwarz(pairs[p].j, pairs[p].i) = pair_q[p];
  }

  const double thresh = settings.schwarz_threshold;
  std::vector<std::vector<EriQuartet>> buckets(npairs);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (par)
#endif
  for (int p = 0; p < npairs; ++p) {
    std::vector<double> block;
    auto& out = buckets[p];
    for (int q = 0; q <= p; ++q) {
      if (pair_q[p] * pair_q[q] < thresh) continue;
      const auto& bra = pairs[p];
      const auto& ket = pairs[q];
      md::eri_quartet_block(st.shells, st.molecule, bra, ket, block);
      const int oa = st.offsets[bra.i], ob = st.offsets[bra.j];
      const int oc = st.offsets[ket.i], od = st.offsets[ket.j];
      const int na = st.shells[bra.i].n_cartesian(), nb = st.shells[bra.j].n_cartesian();
      const int nc = st.shells[ket.i].n_cartesian(), nd = st.shells[ket.j].n_cartesian();
      for (int ia = 0; ia < na; ++ia)
        for (int ib = 0; ib < nb; ++ib) {
          const int a = oa + ia, b = ob + ib;
          if (a < b) continue;
          const std::int64_t pab = static_cast<std::int64_t>(a) * (a + 1) / 2 + b;
          for (int ic = 0; ic < nc; ++ic)
            for (int id = 0; id < nd; ++id) {
              const int c = oc + ic, d = od + id;
              if (c < d) continue;
              const std::int64_t pcd = static_cast<std::int64_t>(c) * (c + 1) / 2 + d;
              const double v =
                  block[((static_cast<size_t>(ia) * nb + ib) * nc + ic) * nd + id];
              if (std::abs(v) < eri_storage_eps) continue;
              EriQuartet e;
              if (pab >= pcd) {
                e = {static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                     static_cast<std::uint16_t>(c), static_cast<std::uint16_t>(d), v};
              } else {
                e = {static_cast<std::uint16_t>(c), static_cast<std::uint16_t>(d),
                     static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b), v};
              }
              out.push_back(e);
            }
        }
    }
  }

  std::size_t total = 0;
  for (const auto& b : buckets) total += b.size();
  if (total * sizeof(EriQuartet) > settings.eri_memory_cap_mb * 1024 * 1024)
    throw std::runtime_error("ERI list exceeds the configured memory cap");
  st.eri.clear();
  st.eri.reserve(total);
  for (const auto& b : buckets) st.eri.insert(st.eri.end(), b.begin(), b.end());
}

IntegralStore compute_integrals(const Molecule& m, const BasisSet& bs,
                                const IntegralSettings& settings) {
  IntegralStore st = compute_one_electron(m, bs, settings);
  compute_eri(st, settings);
  return st;
}

std::vector<double> dense_eri(const IntegralStore& st) {
  const std::size_t m = st.dim;
  if (m * m * m * m > 80'000'000)
    throw std::runtime_error("dense ERI tensor too large; use the sparse list");
  std::vector<double> out(m * m * m * m, 0.0);
  for (const auto& e : st.eri) {
    const std::size_t a = e.a, b = e.b, c = e.c, d = e.d;
    const std::size_t idx[8][4] = {{a, b, c, d}, {b, a, c, d}, {a, b, d, c},
                                   {b, a, d, c}, {c, d, a, b}, {d, c, a, b},
                                   {c, d, b, a}, {d, c, b, a}};
    for (const auto& q : idx) out[eri_index(m, q[0], q[1], q[2], q[3])] = e.value;
  }
  return out;
}

}  // namespace cbohf
