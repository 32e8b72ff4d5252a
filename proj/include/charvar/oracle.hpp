#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "charvar/errors.hpp"
#include "charvar/ffgroups.hpp"
#include "charvar/grpvar.hpp"
#include "charvar/qpoly.hpp"
#include "charvar/sl2.hpp"
#include "charvar/sl3.hpp"

namespace charvar {

/// What a brute-force scan counts.  The stratum index applies only to the
/// conjugation-classification predicate (n = 3, r = 1, indices 0..5).
enum class CountKind {
  TotalTuples,
  ReducibleTuples,
  AllScalarTuples,
  ConjStratum,
};

struct CountPredicate {
  CountKind kind = CountKind::TotalTuples;
  int stratum = -1;

  static CountPredicate total() { return {CountKind::TotalTuples, -1}; }
  static CountPredicate reducible() {
    return {CountKind::ReducibleTuples, -1};
  }
  static CountPredicate all_scalar() {
    return {CountKind::AllScalarTuples, -1};
  }
  static CountPredicate conj_stratum(int id) {
    return {CountKind::ConjStratum, id};
  }

  friend bool operator==(const CountPredicate& a, const CountPredicate& b) {
    return a.kind == b.kind && a.stratum == b.stratum;
  }
};

inline std::string to_string(const CountPredicate& p) {
  switch (p.kind) {
    case CountKind::TotalTuples:
      return "Total";
    case CountKind::ReducibleTuples:
      return "Reducible";
    case CountKind::AllScalarTuples:
      return "AllScalar";
    case CountKind::ConjStratum:
      return "X" + std::to_string(p.stratum);
  }
  return "?";
}

/// One brute-force count compared against the predicted polynomial value.
struct CountReport {
  int n = 2;
  uint32_t q = 3;
  unsigned r = 1;
  CountPredicate predicate;
  uint64_t raw_count = 0;
  QPoly poly;
  BigInt poly_at_q = 0;
  bool matched = false;
  double seconds = 0.0;
  std::string diagnostic;  // empty when matched
};

enum class VerifyLevel { Quick, Full };

namespace oracle_detail {

/// Deterministic chunked sum: identical totals for every worker count,
/// because per-chunk partial sums are exact integers added in index order.
template <typename Fn>
uint64_t chunked_sum(uint64_t begin, uint64_t end, unsigned jobs, Fn fn) {
  if (end <= begin) return 0;
  if (jobs <= 1) return fn(begin, end);
  const uint64_t total = end - begin;
  const unsigned workers =
      static_cast<unsigned>(std::min<uint64_t>(jobs, total));
  std::vector<uint64_t> parts(workers, 0);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const uint64_t b = begin + total * w / workers;
    const uint64_t e = begin + total * (w + 1) / workers;
    threads.emplace_back([&parts, w, b, e, &fn] { parts[w] = fn(b, e); });
  }
  for (auto& t : threads) t.join();
  uint64_t out = 0;
  for (uint64_t part : parts) out += part;
  return out;
}

/// Scan the determinant-one group by enumeration-prefix chunks, counting
/// matrices accepted by the predicate.
template <typename Pred>
uint64_t scan_group(int n, const FieldSpec& f, unsigned jobs, Pred pred) {
  const uint64_t space = SlEnumerator::prefix_space(n, f);
  return chunked_sum(0, space, jobs, [&](uint64_t b, uint64_t e) {
    uint64_t cnt = 0;
    SlEnumerator it(n, f, b, e);
    while (std::optional<FqMatrix> m = it.next()) {
      if (pred(*m)) ++cnt;
    }
    return cnt;
  });
}

inline uint64_t ipow_u64(uint64_t base, unsigned e) {
  uint64_t out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

// ---------------------------------------------------------------------------
// n = 2: eigenline bitmasks over the projective line of the quadratic
// extension.  P^1(F_{q^2}) has q^2 + 1 points, at most 50 for q = 7, so one
// word per group element suffices; tuple reducibility is a running AND.
// ---------------------------------------------------------------------------

inline int p1_index(const ProjVec& pt, uint32_t /*q2*/) {
  // Canonical points are (1, y) or (0, 1).
  if (pt[0] == 1) return static_cast<int>(pt[1]);
  return -1;  // marker for (0, 1), resolved by the caller
}

inline uint64_t sl2_mask(const EigenlineSet& s, uint32_t q2) {
  if (s.all_lines) {
    // All q2 + 1 points of the projective line.
    return (q2 + 1 >= 64) ? ~0ull : ((1ull << (q2 + 1)) - 1);
  }
  uint64_t mask = 0;
  for (const ProjVec& pt : s.points) {
    const int idx = p1_index(pt, q2);
    mask |= 1ull << (idx < 0 ? q2 : static_cast<uint32_t>(idx));
  }
  return mask;
}

struct Sl2Tables {
  std::vector<FqMatrix> elems;
  std::vector<uint64_t> masks;
  uint64_t scalars = 0;
};

inline Sl2Tables sl2_tables(const FieldSpec& f, const FieldSpec& ext2) {
  Sl2Tables t;
  t.elems = enumerate_sl(2, f);
  t.masks.reserve(t.elems.size());
  for (const FqMatrix& m : t.elems) {
    const EigenlineSet s = eigenlines(m, ext2);
    t.masks.push_back(sl2_mask(s, ext2.q()));
    if (s.all_lines) ++t.scalars;
  }
  return t;
}

// ---------------------------------------------------------------------------
// n = 3: per-element line data, cached once.  A tuple is reducible when all
// members fix a common line, or all members of the dual (inverse-transpose)
// tuple do — the latter detects a common invariant plane.
// ---------------------------------------------------------------------------

/// One side (direct or dual) of an element's cached line data.
struct LineSide {
  uint64_t bloom = 0;  // bit (id mod 64) per line id; ~0 for planes/scalars
  uint8_t all = 0;
  uint8_t has_plane = 0;
  uint8_t npts = 0;
  std::array<uint32_t, 3> pts{};  // interned canonical points, sorted
  ProjVec normal{};               // annihilator of the plane, if any
};

struct ElemSig {
  LineSide line, dual;
};

class Sl3PairScanner {
 public:
  Sl3PairScanner(const FieldSpec& f, const FieldSpec& ext6) : ext_(&ext6) {
    const std::vector<FqMatrix> elems = enumerate_sl(3, f);
    sigs_.reserve(elems.size());
    for (const FqMatrix& m : elems) {
      ElemSig sig;
      fill_side(sig.line, eigenlines(m, ext6));
      fill_side(sig.dual, eigenlines(mat_inverse_transpose(m), ext6));
      sigs_.push_back(sig);
      if (sig.line.all) ++scalars_;
    }
  }

  uint64_t size() const { return sigs_.size(); }
  uint64_t scalars() const { return scalars_; }

  /// Ordered reducible pairs, exact and identical for any worker count.
  uint64_t count_reducible_pairs(unsigned jobs) const {
    const uint64_t n = sigs_.size();
    return chunked_sum(0, n, jobs, [this, n](uint64_t b, uint64_t e) {
      uint64_t cnt = 0;
      for (uint64_t i = b; i < e; ++i) {
        const ElemSig& a = sigs_[i];
        for (uint64_t j = 0; j < n; ++j) {
          const ElemSig& x = sigs_[j];
          if ((a.line.bloom & x.line.bloom) == 0 &&
              (a.dual.bloom & x.dual.bloom) == 0) {
            continue;  // no id can coincide on either side
          }
          if (sides_compatible(a.line, x.line) ||
              sides_compatible(a.dual, x.dual)) {
            ++cnt;
          }
        }
      }
      return cnt;
    });
  }

  bool pair_reducible(uint64_t i, uint64_t j) const {
    return sides_compatible(sigs_[i].line, sigs_[j].line) ||
           sides_compatible(sigs_[i].dual, sigs_[j].dual);
  }

 private:
  void fill_side(LineSide& side, const EigenlineSet& s) {
    if (s.all_lines) {
      side.all = 1;
      side.bloom = ~0ull;
      return;
    }
    if (!s.planes.empty()) {
      side.has_plane = 1;
      side.bloom = ~0ull;
      const ProjVec& u = s.planes[0][0];
      const ProjVec& v = s.planes[0][1];
      ProjVec nrm{};
      nrm[0] = ext_->sub(ext_->mul(u[1], v[2]), ext_->mul(u[2], v[1]));
      nrm[1] = ext_->sub(ext_->mul(u[2], v[0]), ext_->mul(u[0], v[2]));
      nrm[2] = ext_->sub(ext_->mul(u[0], v[1]), ext_->mul(u[1], v[0]));
      side.normal = nrm;
    }
    for (const ProjVec& pt : s.points) {
      const uint32_t id = intern(pt);
      side.pts[side.npts++] = id;
      if (!side.has_plane) side.bloom |= 1ull << (id & 63u);
    }
    std::sort(side.pts.begin(), side.pts.begin() + side.npts);
  }

  uint32_t intern(const ProjVec& pt) {
    auto [it, inserted] =
        intern_.try_emplace(pt, static_cast<uint32_t>(coords_.size()));
    if (inserted) coords_.push_back(pt);
    return it->second;
  }

  bool point_on_normal(const ProjVec& nrm, uint32_t id) const {
    const ProjVec& pt = coords_[id];
    Fq d = ext_->mul(nrm[0], pt[0]);
    d = ext_->add(d, ext_->mul(nrm[1], pt[1]));
    d = ext_->add(d, ext_->mul(nrm[2], pt[2]));
    return d == 0;
  }

  bool sides_compatible(const LineSide& a, const LineSide& b) const {
    if (a.all || b.all) return true;
    if (a.has_plane && b.has_plane) return true;  // planes in P^2 always meet
    if (a.has_plane) {
      for (uint8_t t = 0; t < b.npts; ++t) {
        if (point_on_normal(a.normal, b.pts[t])) return true;
      }
    }
    if (b.has_plane) {
      for (uint8_t t = 0; t < a.npts; ++t) {
        if (point_on_normal(b.normal, a.pts[t])) return true;
      }
    }
    uint8_t i = 0, j = 0;
    while (i < a.npts && j < b.npts) {
      if (a.pts[i] == b.pts[j]) return true;
      if (a.pts[i] < b.pts[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return false;
  }

  const FieldSpec* ext_;
  std::vector<ElemSig> sigs_;
  std::map<ProjVec, uint32_t> intern_;
  std::vector<ProjVec> coords_;
  uint64_t scalars_ = 0;
};

// ---------------------------------------------------------------------------
// n = 3, r = 1 conjugation-class classification, driven by the shape of the
// characteristic polynomial plus a cheap nilpotency / diagonalizability
// probe.  The cubic's coefficient pair (c1, c2) is precomputed into a shape
// table of q^2 entries.
// ---------------------------------------------------------------------------

enum class CubicShape : uint8_t { Distinct, TripleRoot, DoubleRoot };

struct ShapeEntry {
  CubicShape shape = CubicShape::Distinct;
  Fq xi = 0;      // the triple root
  Fq lam = 0;     // the double root
  Fq mu = 0;      // the simple root paired with lam
};

/// Shape table for monic cubics x^3 + c2 x^2 + c1 x + c0 with c0 = -1,
/// indexed by c1 * q + c2.
inline std::vector<ShapeEntry> cubic_shapes(const FieldSpec& f) {
  const uint32_t q = f.q();
  std::vector<ShapeEntry> out(static_cast<size_t>(q) * q);
  const Fq c0 = f.neg(f.one());
  for (Fq c1 = 0; c1 < q; ++c1) {
    for (Fq c2 = 0; c2 < q; ++c2) {
      ShapeEntry entry;
      // Roots in the base field with multiplicities, by synthetic division.
      for (Fq root = 0; root < q && entry.shape == CubicShape::Distinct;
           ++root) {
        std::array<Fq, 4> cur = {c0, c1, c2, f.one()};
        int deg = 3, mult = 0;
        while (deg > 0) {
          // Divide by (x - root); bail out on a nonzero remainder.
          std::array<Fq, 4> quot{};
          Fq acc = 0;
          for (int i = deg; i >= 1; --i) {
            acc = f.add(f.mul(acc, root), cur[i]);
            quot[i - 1] = acc;
          }
          const Fq rem = f.add(f.mul(acc, root), cur[0]);
          if (rem != 0) break;
          ++mult;
          --deg;
          cur = quot;
          if (mult == 2 && deg == 1) {
            // Remaining linear factor x + cur[0] gives the simple root.
            entry.shape = CubicShape::DoubleRoot;
            entry.lam = root;
            entry.mu = f.neg(cur[0]);
          }
          if (mult == 3) {
            entry.shape = CubicShape::TripleRoot;
            entry.xi = root;
          }
        }
        if (mult == 2 && entry.shape == CubicShape::DoubleRoot &&
            entry.mu == entry.lam) {
          // (x - r)^2 (x - r) would have been caught as a triple root;
          // defensive only.
          entry.shape = CubicShape::TripleRoot;
          entry.xi = root;
        }
      }
      out[static_cast<size_t>(c1) * q + c2] = entry;
    }
  }
  return out;
}

/// Stratum index 0..5 of one determinant-one 3x3 matrix.
inline int classify_sl3(const FqMatrix& m,
                        const std::vector<ShapeEntry>& shapes) {
  const FieldSpec& f = *m.field;
  const uint32_t q = f.q();
  // c2 = -trace, c1 = sum of principal 2x2 minors.
  const Fq tr = f.add(f.add(m.a[0], m.a[4]), m.a[8]);
  const Fq min0 = f.sub(f.mul(m.a[4], m.a[8]), f.mul(m.a[5], m.a[7]));
  const Fq min1 = f.sub(f.mul(m.a[0], m.a[8]), f.mul(m.a[2], m.a[6]));
  const Fq min2 = f.sub(f.mul(m.a[0], m.a[4]), f.mul(m.a[1], m.a[3]));
  const Fq c1 = f.add(f.add(min0, min1), min2);
  const Fq c2 = f.neg(tr);
  const ShapeEntry& sh = shapes[static_cast<size_t>(c1) * q + c2];

  switch (sh.shape) {
    case CubicShape::Distinct:
      return 5;
    case CubicShape::TripleRoot: {
      // Scalar first; otherwise minimal polynomial degree 2 vs 3.
      bool scalar = m.a[1] == 0 && m.a[2] == 0 && m.a[3] == 0 &&
                    m.a[5] == 0 && m.a[6] == 0 && m.a[7] == 0 &&
                    m.a[0] == sh.xi && m.a[4] == sh.xi && m.a[8] == sh.xi;
      if (scalar) return 0;
      FqMatrix b = m;
      for (int i = 0; i < 3; ++i) b.at(i, i) = f.sub(b.at(i, i), sh.xi);
      const FqMatrix b2 = mat_mul(b, b);
      for (int i = 0; i < 9; ++i) {
        if (b2.a[i] != 0) return 2;  // minimal polynomial has degree 3
      }
      return 1;
    }
    case CubicShape::DoubleRoot: {
      // Diagonalizable iff (A - lam)(A - mu) = 0.
      FqMatrix bl = m, bm = m;
      for (int i = 0; i < 3; ++i) {
        bl.at(i, i) = f.sub(bl.at(i, i), sh.lam);
        bm.at(i, i) = f.sub(bm.at(i, i), sh.mu);
      }
      const FqMatrix prod = mat_mul(bl, bm);
      for (int i = 0; i < 9; ++i) {
        if (prod.a[i] != 0) return 4;
      }
      return 3;
    }
  }
  return 5;
}

inline void check_sl2_envelope(unsigned r, const FieldSpec& f,
                               const CountPredicate& pred) {
  if (f.q() % 2 == 0) {
    throw UnsupportedField(
        "n = 2 counting needs odd q: the strata tell +1 from -1 apart, "
        "which collapses in characteristic 2");
  }
  if (f.q() != 3 && f.q() != 5 && f.q() != 7) {
    throw GuardExceeded("n = 2 counting supports q in {3, 5, 7}");
  }
  if (r < 1 || r > 3) {
    throw GuardExceeded("n = 2 counting supports r in {1, 2, 3}");
  }
  if (pred.kind == CountKind::ConjStratum) {
    throw GuardExceeded("stratum classification is the n = 3, r = 1 count");
  }
}

inline void check_sl3_envelope(unsigned r, const FieldSpec& f,
                               const CountPredicate& pred) {
  if (f.q() % 3 != 1) {
    throw UnsupportedField(
        "n = 3 counting needs q = 1 (mod 3): otherwise the cube-root locus "
        "#{lambda : lambda^3 != 1} = q - 1 - gcd(3, q-1) is not the "
        "polynomial value q - 4, so count-vs-evaluation equality is not "
        "expected");
  }
  const bool ok = (r == 1 && (f.q() == 4 || f.q() == 7)) ||
                  (r == 2 && f.q() == 4);
  if (!ok) {
    throw GuardExceeded(
        "n = 3 counting supports (r=1, q=4), (r=1, q=7), (r=2, q=4)");
  }
  if (pred.kind == CountKind::ConjStratum) {
    if (r != 1) {
      throw GuardExceeded("stratum classification requires r = 1");
    }
    if (pred.stratum < 0 || pred.stratum > 5) {
      throw GuardExceeded("stratum index must lie in 0..5");
    }
  }
}

inline CountReport finish_report(CountReport rep) {
  rep.poly_at_q = eval_at_integer(rep.poly, BigInt(rep.q));
  rep.matched = BigInt(rep.raw_count) == rep.poly_at_q;
  if (!rep.matched) {
    rep.diagnostic = "count mismatch: n=" + std::to_string(rep.n) +
                     " q=" + std::to_string(rep.q) +
                     " r=" + std::to_string(rep.r) +
                     " predicate=" + to_string(rep.predicate) + " counted " +
                     std::to_string(rep.raw_count) + " but " +
                     to_canonical_string(rep.poly) + " evaluates to " +
                     rep.poly_at_q.str();
  }
  return rep;
}

}  // namespace oracle_detail

/// Reducibility of an explicit 2x2 tuple: a common eigenline over the
/// quadratic extension.  Exact for every r, since eigenline sets in the
/// plane are pure point sets (or everything, for scalars).
inline bool sl2_tuple_reducible(const std::vector<FqMatrix>& tuple,
                                const FieldSpec& ext2) {
  if (tuple.empty()) return true;
  uint64_t mask = ~0ull;
  for (const FqMatrix& m : tuple) {
    mask &= oracle_detail::sl2_mask(eigenlines(m, ext2), ext2.q());
    if (mask == 0) return false;
  }
  return true;
}

/// Reducibility of an explicit 3x3 tuple for r <= 2: a common invariant
/// line over the degree-6 extension, or a common invariant plane (tested as
/// a common line of the inverse-transpose tuple).
inline bool sl3_tuple_reducible(const std::vector<FqMatrix>& tuple,
                                const FieldSpec& ext6) {
  if (tuple.size() > 2) {
    throw GuardExceeded("explicit 3x3 reducibility is supported for r <= 2");
  }
  if (tuple.size() <= 1) return true;
  const EigenlineSet la = eigenlines(tuple[0], ext6);
  const EigenlineSet lb = eigenlines(tuple[1], ext6);
  if (eigen_sets_share_line(la, lb, ext6)) return true;
  const EigenlineSet da = eigenlines(mat_inverse_transpose(tuple[0]), ext6);
  const EigenlineSet db = eigenlines(mat_inverse_transpose(tuple[1]), ext6);
  return eigen_sets_share_line(da, db, ext6);
}

/// Brute-force count over SL(2, F_q)^r, compared against the predicted
/// polynomial evaluated at q.
inline CountReport count_sl2(unsigned r, const FieldSpec& f,
                             CountPredicate pred, unsigned jobs = 1) {
  using namespace oracle_detail;
  check_sl2_envelope(r, f, pred);
  const auto start = std::chrono::steady_clock::now();

  CountReport rep;
  rep.n = 2;
  rep.q = f.q();
  rep.r = r;
  rep.predicate = pred;

  const FieldSpec ext2 = field_make(f.p(), 2 * f.k());
  const Sl2Tables t = sl2_tables(f, ext2);
  const uint64_t n = t.elems.size();

  switch (pred.kind) {
    case CountKind::TotalTuples:
      // The tuple space is a full Cartesian power; the element count is
      // established by enumeration, the power is exact arithmetic.
      rep.raw_count = ipow_u64(n, r);
      rep.poly = pow(group_epoly({GroupFamily::SL, 2}), r);
      break;
    case CountKind::AllScalarTuples:
      rep.raw_count = ipow_u64(t.scalars, r);
      rep.poly = pow(QPoly(2LL), r);
      break;
    case CountKind::ReducibleTuples: {
      if (r == 1) {
        uint64_t cnt = 0;
        for (uint64_t i = 0; i < n; ++i) {
          if (t.masks[i] != 0) ++cnt;
        }
        rep.raw_count = cnt;
      } else if (r == 2) {
        rep.raw_count = chunked_sum(0, n, jobs, [&](uint64_t b, uint64_t e) {
          uint64_t cnt = 0;
          for (uint64_t i = b; i < e; ++i) {
            const uint64_t mi = t.masks[i];
            for (uint64_t j = 0; j < n; ++j) {
              if (mi & t.masks[j]) ++cnt;
            }
          }
          return cnt;
        });
      } else {
        rep.raw_count = chunked_sum(0, n, jobs, [&](uint64_t b, uint64_t e) {
          uint64_t cnt = 0;
          for (uint64_t i = b; i < e; ++i) {
            const uint64_t mi = t.masks[i];
            for (uint64_t j = 0; j < n; ++j) {
              const uint64_t mij = mi & t.masks[j];
              if (mij == 0) continue;
              for (uint64_t k = 0; k < n; ++k) {
                if (mij & t.masks[k]) ++cnt;
              }
            }
          }
          return cnt;
        });
      }
      rep.poly = sl2_r_red(r);
      break;
    }
    case CountKind::ConjStratum:
      throw GuardExceeded("unreachable: rejected by the envelope check");
  }

  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return finish_report(std::move(rep));
}

/// Brute-force count over SL(3, F_q)^r, compared against the predicted
/// polynomial evaluated at q.
inline CountReport count_sl3(unsigned r, const FieldSpec& f,
                             CountPredicate pred, unsigned jobs = 1) {
  using namespace oracle_detail;
  check_sl3_envelope(r, f, pred);
  const auto start = std::chrono::steady_clock::now();

  CountReport rep;
  rep.n = 3;
  rep.q = f.q();
  rep.r = r;
  rep.predicate = pred;

  switch (pred.kind) {
    case CountKind::TotalTuples: {
      const uint64_t n =
          scan_group(3, f, jobs, [](const FqMatrix&) { return true; });
      rep.raw_count = ipow_u64(n, r);
      rep.poly = pow(group_epoly({GroupFamily::SL, 3}), r);
      break;
    }
    case CountKind::AllScalarTuples: {
      const uint64_t s = scan_group(
          3, f, jobs, [](const FqMatrix& m) { return is_scalar(m); });
      rep.raw_count = ipow_u64(s, r);
      rep.poly = pow(QPoly(3LL), r);
      break;
    }
    case CountKind::ConjStratum: {
      const std::vector<ShapeEntry> shapes = cubic_shapes(f);
      const int target = pred.stratum;
      rep.raw_count = scan_group(3, f, jobs, [&](const FqMatrix& m) {
        return classify_sl3(m, shapes) == target;
      });
      rep.poly = sl3_conjugation_strata()[pred.stratum].epoly;
      break;
    }
    case CountKind::ReducibleTuples: {
      if (r == 1) {
        // A single matrix always fixes a line over the splitting field.
        rep.raw_count =
            scan_group(3, f, jobs, [](const FqMatrix&) { return true; });
      } else {
        const FieldSpec ext6 = field_make(f.p(), 6 * f.k());
        const Sl3PairScanner scanner(f, ext6);
        rep.raw_count = scanner.count_reducible_pairs(jobs);
      }
      rep.poly = sl3_r_red(r);
      break;
    }
  }

  rep.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return finish_report(std::move(rep));
}

/// The standard verification battery.  Quick covers every n = 2 check at
/// q = 3 plus the full n = 3, r = 1 table at q = 4; Full adds q in {5, 7}
/// for n = 2, the q = 7 classification, and the n = 3, r = 2 pair scan.
inline std::vector<CountReport> verify_suite(VerifyLevel level,
                                             unsigned jobs = 1) {
  std::vector<CountReport> out;
  auto sl2_block = [&](uint32_t q) {
    const FieldSpec f = field_make(q, 1);
    for (unsigned r = 1; r <= 3; ++r) {
      out.push_back(count_sl2(r, f, CountPredicate::total(), jobs));
      out.push_back(count_sl2(r, f, CountPredicate::reducible(), jobs));
      out.push_back(count_sl2(r, f, CountPredicate::all_scalar(), jobs));
    }
  };
  auto sl3_r1_block = [&](const FieldSpec& f) {
    out.push_back(count_sl3(1, f, CountPredicate::total(), jobs));
    out.push_back(count_sl3(1, f, CountPredicate::reducible(), jobs));
    out.push_back(count_sl3(1, f, CountPredicate::all_scalar(), jobs));
    for (int x = 0; x <= 5; ++x) {
      out.push_back(count_sl3(1, f, CountPredicate::conj_stratum(x), jobs));
    }
  };

  const FieldSpec f4 = field_make(2, 2);
  sl2_block(3);
  sl3_r1_block(f4);
  if (level == VerifyLevel::Full) {
    sl2_block(5);
    sl2_block(7);
    sl3_r1_block(field_make(7, 1));
    out.push_back(count_sl3(2, f4, CountPredicate::total(), jobs));
    out.push_back(count_sl3(2, f4, CountPredicate::all_scalar(), jobs));
    out.push_back(count_sl3(2, f4, CountPredicate::reducible(), jobs));
  }
  return out;
}

inline bool all_matched(const std::vector<CountReport>& reports) {
  for (const CountReport& r : reports) {
    if (!r.matched) return false;
  }
  return true;
}

/// Summary table: n,q,r,predicate,count,expected,match,seconds.
inline std::string verify_csv(const std::vector<CountReport>& reports) {
  std::string out = "n,q,r,predicate,count,expected,match,seconds\n";
  char buf[32];
  for (const CountReport& r : reports) {
    std::snprintf(buf, sizeof(buf), "%.3f", r.seconds);
    out += std::to_string(r.n) + "," + std::to_string(r.q) + "," +
           std::to_string(r.r) + "," + to_string(r.predicate) + "," +
           std::to_string(r.raw_count) + "," + r.poly_at_q.str() + "," +
           (r.matched ? "yes" : "no") + "," + buf + "\n";
  }
  return out;
}

}  // namespace charvar
