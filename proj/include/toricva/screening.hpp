// Screening charges as graded linear maps out of the lattice Fock modules,
// exact kernel computation in weight truncation, and the split-consistency
// check that compares a kernel computed directly with one computed through a
// tensor factorization of the composition series.
//
// The kernel decomposes over (degree, source sector) blocks: a charge shifts
// the sector of its *target* only, so distinct source sectors never mix and
// each block is an independent exact nullspace problem.  Blocks are solved in
// parallel and merged in a fixed order, so results do not depend on the
// worker count.

#pragma once

#include <atomic>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "toricva/linalg.hpp"
#include "toricva/parallel.hpp"
#include "toricva/vertexop.hpp"

namespace toricva {

struct ScreeningCharge {
  std::size_t index = 0;  // position in LatticeData::screenings
  Momentum mom;           // cocharacter values plus the unit sector shift
  std::string source;     // module the charge acts out of
  std::string target;     // sector-shift tag of the image module
};

inline ScreeningCharge screening_charge(const LatticeData& L, std::size_t k) {
  if (k >= L.screenings.size())
    throw LatticeError("no screening with index " + std::to_string(k));
  ScreeningCharge q;
  q.index = k;
  q.mom = momentum_of_screening(L, k);
  std::string series;
  for (std::size_t i = 0; i < L.spec.series.size(); ++i)
    series += (i ? "," : "") + L.spec.series[i];
  q.source = "Pi(" + L.geom.name + ";" + series + ")";
  q.target = "+" + L.screenings[k].tag();
  return q;
}

inline std::vector<ScreeningCharge> all_charges(const LatticeData& L) {
  std::vector<ScreeningCharge> out;
  for (std::size_t k = 0; k < L.screenings.size(); ++k)
    out.push_back(screening_charge(L, k));
  return out;
}

inline std::vector<ScreeningCharge> charges_at_step(const LatticeData& L,
                                                    int step) {
  std::vector<ScreeningCharge> out;
  for (std::size_t k = 0; k < L.screenings.size(); ++k)
    if (L.screenings[k].step == step) out.push_back(screening_charge(L, k));
  return out;
}

// residue mode of the screening vertex operator; degree-preserving on
// homogeneous input, which is asserted because everything downstream
// (block decomposition, characters) silently depends on it
inline FockState screening_action(const LatticeData& L,
                                  const ScreeningCharge& Q,
                                  const FockState& s) {
  const FockState out = vertex_residue(L, Q.mom, s);
  if (out.is_zero()) return out;
  const std::optional<long> din = degree2(L, s);
  if (din) {
    const std::optional<long> dout = degree2(L, out);
    if (!dout || *dout != *din)
      throw LatticeError("screening charge broke the grading on a degree " +
                         degree_str(*din) + " state");
  }
  return out;
}

struct GradedKernel {
  long lo2 = 0, hi2 = 0;  // doubled-degree range covered
  int sector_bound = 0;
  // doubled degree -> kernel basis / dimension of the ambient block sum;
  // only degrees whose ambient space is nonzero appear
  std::map<long, std::vector<FockState>> vectors;
  std::map<long, std::size_t> ambient;

  std::size_t dim(long deg2) const {
    const auto it = vectors.find(deg2);
    return it == vectors.end() ? 0 : it->second.size();
  }

  std::string describe() const {
    std::string s;
    for (const auto& [d2, n] : ambient)
      s += "degree " + degree_str(d2) + ": dim " + std::to_string(dim(d2)) +
           " (ambient " + std::to_string(n) + ")\n";
    return s;
  }
};

struct KernelOptions {
  int sector_bound = -1;          // < 0: use 2N+2
  std::size_t block_limit = 4096; // columns allowed per (degree, sector) block
};


// all source sectors (no screening shifts) with every |l_i| <= bound and
// doubled degree <= hi2, in lexicographic order
inline std::vector<Sector> source_sectors(const LatticeData& L, long hi2,
                                          int bound) {
  std::vector<Sector> out;
  Sector s = Sector::zero(L);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == L.curves.size()) {
      if (sector_degree2(L, s) <= hi2) out.push_back(s);
      return;
    }
    for (long v = -bound; v <= bound; ++v) {
      s.l[i] = Int(v);
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// least doubled degree any truncated sector can carry (0 when there are no
// curve directions with negative drift)
inline long truncation_floor2(const LatticeData& L, int bound) {
  long lo = 0;
  for (const Sector& s : source_sectors(L, std::numeric_limits<long>::max(), bound))
    lo = std::min(lo, sector_degree2(L, s));
  return lo;
}

// kernel of the joint charge action, degree range [lo2, hi2] doubled
inline GradedKernel kernel_blocks(const LatticeData& L,
                                  const std::vector<ScreeningCharge>& charges,
                                  long lo2, long hi2,
                                  const KernelOptions& opt) {
  GradedKernel K;
  K.lo2 = lo2;
  K.hi2 = hi2;
  K.sector_bound = opt.sector_bound;

  const std::vector<Sector> secs = source_sectors(L, hi2, opt.sector_bound);
  std::vector<long> sec_deg2;
  for (const Sector& s : secs) sec_deg2.push_back(sector_degree2(L, s));

  struct Block {
    long deg2 = 0;
    std::size_t sec = 0;
    int level = 0;
  };
  std::vector<Block> work;
  for (long d2 = lo2; d2 <= hi2; ++d2)
    for (std::size_t i = 0; i < secs.size(); ++i) {
      const long nu2 = d2 - sec_deg2[i];
      if (nu2 < 0 || nu2 % 2 != 0) continue;
      work.push_back({d2, i, (int)(nu2 / 2)});
    }

  std::vector<std::vector<FockState>> found(work.size());
  std::vector<std::size_t> amb(work.size());

  detail::parallel_for(work.size(), [&](std::size_t w) {
    const Block& blk = work[w];
    const std::vector<BasisKey> B = osc_basis(L, secs[blk.sec], blk.level);
    if (B.empty()) return;
    if (B.size() > opt.block_limit)
      throw LatticeError(
          "truncation limit exceeded: degree " + degree_str(blk.deg2) +
          " sector " + secs[blk.sec].str() + " needs " +
          std::to_string(B.size()) + " basis vectors (limit " +
          std::to_string(opt.block_limit) + ")");
    amb[w] = B.size();

    if (charges.empty()) {
      for (const BasisKey& k : B) found[w].push_back(FockState::basis(k));
      return;
    }

    // image of every basis vector under every charge; rows of the stacked
    // matrix are (charge, target key) pairs so distinct charges never merge
    std::vector<std::vector<FockState>> im(charges.size());
    std::map<std::pair<std::size_t, BasisKey>, std::size_t> row;
    for (std::size_t q = 0; q < charges.size(); ++q) {
      im[q].reserve(B.size());
      for (const BasisKey& k : B) {
        im[q].push_back(screening_action(L, charges[q], FockState::basis(k)));
        for (const auto& [tk, c] : im[q].back().terms())
          row.emplace(std::make_pair(q, tk), row.size());
      }
    }

    Mat M(row.size(), B.size());
    for (std::size_t q = 0; q < charges.size(); ++q)
      for (std::size_t j = 0; j < B.size(); ++j)
        for (const auto& [tk, c] : im[q][j].terms())
          M.at(row.at(std::make_pair(q, tk)), j) = c;

    for (const Vec& v : nullspace(M)) {
      FockState s;
      for (std::size_t j = 0; j < B.size(); ++j)
        if (!v[j].is_zero()) s.add(B[j], v[j]);
      found[w].push_back(std::move(s));
    }
  });

  for (std::size_t w = 0; w < work.size(); ++w) {
    if (amb[w] == 0) continue;
    K.ambient[work[w].deg2] += amb[w];
    auto& dst = K.vectors[work[w].deg2];
    for (FockState& s : found[w]) dst.push_back(std::move(s));
  }
  return K;
}

inline GradedKernel kernel_basis(const LatticeData& L,
                                 const std::vector<ScreeningCharge>& charges,
                                 int N, KernelOptions opt = {}) {
  if (N < 0) throw LatticeError("negative degree cutoff");
  if (opt.sector_bound < 0) opt.sector_bound = 2 * N + 2;
  return kernel_blocks(L, charges, 0, 2L * N, opt);
}

// ---------------------------------------------------------------------------
// Split consistency.  Cutting the composition series at position k0 splits
// the sheet points, curves and all but one step of charges into a front part
// R and a back part T; the kernel of the full charge set must match the
// kernel of the crossing-step charges acting on ker(R) (x) ker(T).

struct FactorizationRow {
  long deg2 = 0;
  std::size_t direct = 0;
  std::size_t split = 0;
};

struct FactorizationReport {
  std::size_t split_at = 0;  // 1-based series position of the cut
  int cutoff = 0;
  int sector_bound = 0;
  bool ok = true;
  std::vector<FactorizationRow> rows;

  std::string describe() const {
    std::string s = "split at " + std::to_string(split_at) + ", cutoff " +
                    std::to_string(cutoff) + ", sector bound " +
                    std::to_string(sector_bound) + "\n";
    for (const FactorizationRow& r : rows) {
      s += "degree " + degree_str(r.deg2) + ": direct " +
           std::to_string(r.direct) + ", split " + std::to_string(r.split);
      s += r.direct == r.split ? "\n" : "  <-- MISMATCH\n";
    }
    s += ok ? "consistent\n" : "INCONSISTENT\n";
    return s;
  }
};

namespace detail {

// map u (x) v into the full lattice: front sheet points and curve axes keep
// their indices, back ones are shifted past the front block
inline FockState embed_split(const LatticeData& L, const LatticeData& LR,
                             const FockState& u, const FockState& v) {
  const int npts = (int)LR.n_points();
  const std::size_t ncrv = LR.n_curves();
  FockState out;
  for (const auto& [ku, cu] : u.terms())
    for (const auto& [kv, cv] : v.terms()) {
      BasisKey k;
      k.sec = Sector::zero(L);
      for (std::size_t i = 0; i < ncrv; ++i) k.sec.l[i] = ku.sec.l[i];
      for (std::size_t j = 0; j < kv.sec.l.size(); ++j)
        k.sec.l[ncrv + j] = kv.sec.l[j];
      k.modes = ku.modes;
      for (const auto& [n, p] : kv.modes) k.modes.emplace_back(n, p + npts);
      canonicalize_modes(k.modes);
      out.add(k, cu * cv);
    }
  return out;
}

}  // namespace detail

inline FactorizationReport factorization_check(const LatticeData& L,
                                               std::size_t k0, int N,
                                               KernelOptions opt = {}) {
  const std::size_t steps = L.spec.series.size();
  if (k0 < 1 || k0 >= steps)
    throw LatticeError("split position must cut the series properly");
  if (N < 0) throw LatticeError("negative degree cutoff");
  if (opt.sector_bound < 0) opt.sector_bound = 2 * N + 2;

  std::string front, back;
  for (std::size_t i = 0; i < steps; ++i) {
    std::string& dst = i < k0 ? front : back;
    if (!dst.empty()) dst += ",";
    dst += L.spec.series[i];
  }
  const LatticeData LR = lattice_data(L.geom, front);
  const LatticeData LT = lattice_data(L.geom, back);

  // sector truncation makes degrees bounded below on each side; the tensor
  // grading needs every pair (a, d-a) inside those floors
  const long floorR = truncation_floor2(LR, opt.sector_bound);
  const long floorT = truncation_floor2(LT, opt.sector_bound);
  const long hi2 = 2L * N;

  const GradedKernel KS = kernel_blocks(L, all_charges(L), 0, hi2, opt);
  const GradedKernel KR =
      kernel_blocks(LR, all_charges(LR), floorR, hi2 - floorT, opt);
  const GradedKernel KT =
      kernel_blocks(LT, all_charges(LT), floorT, hi2 - floorR, opt);

  const std::vector<ScreeningCharge> cross = charges_at_step(L, (int)k0 - 1);

  FactorizationReport rep;
  rep.split_at = k0;
  rep.cutoff = N;
  rep.sector_bound = opt.sector_bound;

  for (long d2 = 0; d2 <= hi2; ++d2) {
    std::vector<FockState> tens;
    for (const auto& [a2, us] : KR.vectors) {
      const auto it = KT.vectors.find(d2 - a2);
      if (it == KT.vectors.end()) continue;
      for (const FockState& u : us)
        for (const FockState& v : it->second)
          tens.push_back(detail::embed_split(L, LR, u, v));
    }
    const bool ambient = KS.ambient.count(d2) || !tens.empty();
    if (!ambient) continue;

    std::size_t rhs = tens.size();
    if (!cross.empty() && !tens.empty()) {
      std::map<std::pair<std::size_t, BasisKey>, std::size_t> row;
      std::vector<std::vector<FockState>> im(cross.size());
      for (std::size_t q = 0; q < cross.size(); ++q)
        for (const FockState& t : tens) {
          im[q].push_back(screening_action(L, cross[q], t));
          for (const auto& [tk, c] : im[q].back().terms())
            row.emplace(std::make_pair(q, tk), row.size());
        }
      Mat M(row.size(), tens.size());
      for (std::size_t q = 0; q < cross.size(); ++q)
        for (std::size_t j = 0; j < tens.size(); ++j)
          for (const auto& [tk, c] : im[q][j].terms())
            M.at(row.at(std::make_pair(q, tk)), j) = c;
      rhs = tens.size() - rank(M);
    }

    rep.rows.push_back({d2, KS.dim(d2), rhs});
    if (KS.dim(d2) != rhs) rep.ok = false;
  }
  return rep;
}

}  // namespace toricva
