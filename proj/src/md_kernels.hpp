#pragma once

// Shared McMurchie-Davidson machinery: Hermite expansion coefficients,
// Hermite Coulomb R tables and primitive shell-pair data. Internal to the
// integral translation units.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

#include "cbohf/basis.hpp"
#include "cbohf/boys.hpp"
#include "cbohf/constants.hpp"
#include "cbohf/molecule.hpp"

namespace cbohf::md {

// 1D Hermite expansion coefficients E(i,j,t) for a primitive pair.
struct ETab {
  int imax = 0, jmax = 0, tdim = 0;
  std::vector<double> v;

  double operator()(int i, int j, int t) const {
    if (t < 0 || t > i + j) return 0.0;
    return v[(i * (jmax + 1) + j) * tdim + t];
  }
  double& at(int i, int j, int t) { return v[(i * (jmax + 1) + j) * tdim + t]; }
};

// K = exp(-mu * X_AB^2) along this dimension
inline void build_e(ETab& e, double pa, double pb, double inv2p, double k, int imax,
                    int jmax) {
  e.imax = imax;
  e.jmax = jmax;
  e.tdim = imax + jmax + 1;
  e.v.assign(static_cast<size_t>(imax + 1) * (jmax + 1) * e.tdim, 0.0);
  e.at(0, 0, 0) = k;
  for (int i = 0; i < imax; ++i)
    for (int t = 0; t <= i + 1; ++t) {
      double val = pa * e(i, 0, t) + (t + 1) * e(i, 0, t + 1);
      if (t > 0) val += inv2p * e(i, 0, t - 1);
      e.at(i + 1, 0, t) = val;
    }
  for (int j = 0; j < jmax; ++j)
    for (int i = 0; i <= imax; ++i)
      for (int t = 0; t <= i + j + 1; ++t) {
        double val = pb * e(i, j, t) + (t + 1) * e(i, j, t + 1);
        if (t > 0) val += inv2p * e(i, j, t - 1);
        e.at(i, j + 1, t) = val;
      }
}

// Hermite Coulomb integrals R_{tuv} for t+u+v <= L at (alpha, PQ).
struct RTab {
  int l = 0;
  std::vector<double> v;  // [t][u][v] with stride (l+1)

  double operator()(int t, int u, int w) const {
    return v[(t * (l + 1) + u) * (l + 1) + w];
  }
};

inline void build_r(RTab& r, double alpha, const Vec3& pq, int l) {
  r.l = l;
  const int s = l + 1;
  r.v.assign(static_cast<size_t>(s) * s * s, 0.0);
  const double t_arg = alpha * pq.squaredNorm();
  std::array<double, 32> f{};
  boys(t_arg, l, f.data());

  // full auxiliary ladder [n][t][u][v]
  std::vector<double> aux(static_cast<size_t>(s) * s * s * s, 0.0);
  auto idx = [s](int n, int t, int u, int w) {
    return ((static_cast<size_t>(n) * s + t) * s + u) * s + w;
  };
  double pref = 1.0;
  for (int n = 0; n <= l; ++n) {
    aux[idx(n, 0, 0, 0)] = pref * f[n];
    pref *= -2.0 * alpha;
  }
  for (int n = l - 1; n >= 0; --n) {
    const int order = l - n;
    for (int t = 1; t <= order; ++t) {
      double val = pq.x() * aux[idx(n + 1, t - 1, 0, 0)];
      if (t > 1) val += (t - 1) * aux[idx(n + 1, t - 2, 0, 0)];
      aux[idx(n, t, 0, 0)] = val;
    }
    for (int t = 0; t <= order; ++t)
      for (int u = 1; t + u <= order; ++u) {
        double val = pq.y() * aux[idx(n + 1, t, u - 1, 0)];
        if (u > 1) val += (u - 1) * aux[idx(n + 1, t, u - 2, 0)];
        aux[idx(n, t, u, 0)] = val;
      }
    for (int t = 0; t <= order; ++t)
      for (int u = 0; t + u <= order; ++u)
        for (int w = 1; t + u + w <= order; ++w) {
          double val = pq.z() * aux[idx(n + 1, t, u, w - 1)];
          if (w > 1) val += (w - 1) * aux[idx(n + 1, t, u, w - 2)];
          aux[idx(n, t, u, w)] = val;
        }
  }
  for (int t = 0; t <= l; ++t)
    for (int u = 0; t + u <= l; ++u)
      for (int w = 0; t + u + w <= l; ++w)
        r.v[(static_cast<size_t>(t) * s + u) * s + w] = aux[idx(0, t, u, w)];
}

struct PrimPair {
  double a = 0, b = 0;       // exponents
  double p = 0, inv2p = 0;   // p = a+b
  double cc = 0;             // contraction coefficient product
  Vec3 pctr{0, 0, 0};        // P = (aA + bB)/p
  std::array<double, 3> k{}; // per-dimension exp(-mu X^2)
};

struct ShellPairData {
  int i = -1, j = -1;  // shell indices
  std::vector<PrimPair> prims;
};

inline ShellPairData make_shell_pair(const std::vector<Shell>& shells, int i, int j,
                                     const Molecule& mol, double prim_threshold) {
  ShellPairData sp;
  sp.i = i;
  sp.j = j;
  const Shell& sa = shells[i];
  const Shell& sb = shells[j];
  const Vec3 ra = mol.atoms[sa.atom].position;
  const Vec3 rb = mol.atoms[sb.atom].position;
  const Vec3 ab = ra - rb;
  for (size_t ka = 0; ka < sa.exponents.size(); ++ka)
    for (size_t kb = 0; kb < sb.exponents.size(); ++kb) {
      PrimPair pp;
      pp.a = sa.exponents[ka];
      pp.b = sb.exponents[kb];
      pp.p = pp.a + pp.b;
      pp.inv2p = 0.5 / pp.p;
      const double mu = pp.a * pp.b / pp.p;
      const double k3 = std::exp(-mu * ab.squaredNorm());
      pp.cc = sa.coefficients[ka] * sb.coefficients[kb];
      if (std::abs(pp.cc) * k3 < prim_threshold) continue;
      pp.pctr = (pp.a * ra + pp.b * rb) / pp.p;
      for (int d = 0; d < 3; ++d) pp.k[d] = std::exp(-mu * ab[d] * ab[d]);
      sp.prims.push_back(pp);
    }
  return sp;
}

// per-component normalization relative to the (l,0,0) reference
inline double component_norm(int l, const std::array<int, 3>& c) {
  auto dfac = [](int n) {
    double v = 1.0;
    for (int k = n; k > 1; k -= 2) v *= k;
    return v;
  };
  return std::sqrt(dfac(2 * l - 1) /
                   (dfac(2 * c[0] - 1) * dfac(2 * c[1] - 1) * dfac(2 * c[2] - 1)));
}

inline std::vector<double> component_norms(int l) {
  std::vector<double> out;
  for (const auto& c : cartesian_components(l)) out.push_back(component_norm(l, c));
  return out;
}

// defined in integrals.cpp, shared with the derivative translation unit
void eri_quartet_block(const std::vector<Shell>& shells, const Molecule& mol,
                       const ShellPairData& bra, const ShellPairData& ket,
                       std::vector<double>& block);
std::vector<ShellPairData> make_pair_list(const std::vector<Shell>& shells,
                                          const Molecule& mol, double prim_threshold);

}  // namespace cbohf::md
