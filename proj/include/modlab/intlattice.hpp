#pragma once

#include <array>
#include <string>
#include <vector>

#include "modlab/util.hpp"

namespace modlab {

/// Sublattices of Z^k (k <= 4), stored as a column Hermite Normal Form
/// basis: pivot rows strictly increase column by column, pivots are
/// positive, and in every pivot row the entries of the earlier columns are
/// reduced into [0, pivot).  The form is canonical, so two generating sets
/// span the same lattice exactly when their bases coincide.
///
/// All arithmetic is exact in 64-bit integers with overflow checks; inputs
/// are capped at |entry| <= 2^31.
class IntLattice {
 public:
  static constexpr int kMaxAmbient = 4;
  static constexpr i64 kMaxEntry = i64{1} << 31;

  static IntLattice from_generators(int ambient, const std::vector<std::vector<i64>>& gens) {
    check_ambient(ambient);
    for (const auto& g : gens) {
      if (static_cast<int>(g.size()) != ambient)
        throw std::invalid_argument("generator length does not match the ambient rank");
      for (i64 v : g)
        if (v > kMaxEntry || v < -kMaxEntry)
          throw CapError("lattice entry exceeds the 2^31 magnitude cap");
    }
    // Rows of `m` are the generators; a row HNF of m transposes into the
    // column HNF basis.
    std::vector<std::vector<i64>> m = gens;
    const int rank = row_hnf(m, ambient);
    IntLattice out;
    out.ambient_ = ambient;
    out.cols_.assign(rank, std::vector<i64>(ambient, 0));
    for (int j = 0; j < rank; ++j)
      for (int i = 0; i < ambient; ++i) out.cols_[j][i] = m[j][i];
    return out;
  }

  static IntLattice zero(int ambient) { return from_generators(ambient, {}); }

  static IntLattice full(int ambient) {
    std::vector<std::vector<i64>> gens(ambient, std::vector<i64>(ambient, 0));
    for (int i = 0; i < ambient; ++i) gens[i][i] = 1;
    return from_generators(ambient, gens);
  }

  int ambient_rank() const { return ambient_; }
  int rank() const { return static_cast<int>(cols_.size()); }
  /// Basis columns (each of length ambient_rank()).
  const std::vector<std::vector<i64>>& basis() const { return cols_; }

  bool is_zero() const { return rank() == 0; }
  bool is_full() const {
    if (rank() != ambient_) return false;
    for (int j = 0; j < rank(); ++j)
      if (cols_[j][pivot_row(j)] != 1) return false;
    return true;
  }

  /// Exact membership by back-substitution along the pivot rows.
  bool contains(const std::vector<i64>& v) const {
    if (static_cast<int>(v.size()) != ambient_)
      throw std::invalid_argument("vector length does not match the ambient rank");
    std::vector<i64> w = v;
    for (int j = 0; j < rank(); ++j) {
      const int p = pivot_row(j);
      const i64 piv = cols_[j][p];
      if (w[p] % piv != 0) return false;
      const i64 q = w[p] / piv;
      for (int i = 0; i < ambient_; ++i) w[i] = checked_sub(w[i], checked_mul(q, cols_[j][i]));
    }
    for (i64 x : w)
      if (x != 0) return false;
    return true;
  }

  bool subset_of(const IntLattice& other) const {
    if (ambient_ != other.ambient_) throw std::invalid_argument("ambient rank mismatch");
    for (const auto& c : cols_)
      if (!other.contains(c)) return false;
    return true;
  }

  int pivot_row(int col) const {
    for (int i = 0; i < ambient_; ++i)
      if (cols_[col][i] != 0) return i;
    throw std::logic_error("zero basis column");
  }

  std::string to_string() const {
    std::string s = "[";
    for (int j = 0; j < rank(); ++j) {
      s += j ? ", (" : "(";
      for (int i = 0; i < ambient_; ++i) s += (i ? "," : "") + std::to_string(cols_[j][i]);
      s += ")";
    }
    return s + "]";
  }

  friend bool operator==(const IntLattice& a, const IntLattice& b) {
    return a.ambient_ == b.ambient_ && a.cols_ == b.cols_;
  }

 private:
  IntLattice() = default;

  static void check_ambient(int ambient) {
    if (ambient < 1 || ambient > kMaxAmbient)
      throw CapError("ambient rank must be between 1 and " + std::to_string(kMaxAmbient));
  }

  /// In-place row Hermite Normal Form; returns the rank.  Rows beyond the
  /// rank are zero.  Pivots positive, entries above each pivot reduced into
  /// [0, pivot).
  static int row_hnf(std::vector<std::vector<i64>>& m, int width) {
    const int rows = static_cast<int>(m.size());
    int r = 0;
    for (int c = 0; c < width && r < rows; ++c) {
      // gcd elimination below row r in column c
      while (true) {
        int best = -1;
        for (int i = r; i < rows; ++i)
          if (m[i][c] != 0 && (best < 0 || abs64(m[i][c]) < abs64(m[best][c]))) best = i;
        if (best < 0) break;
        std::swap(m[r], m[best]);
        bool done = true;
        for (int i = r + 1; i < rows; ++i) {
          if (m[i][c] == 0) continue;
          const i64 q = m[i][c] / m[r][c];
          for (int w = 0; w < width; ++w)
            m[i][w] = checked_sub(m[i][w], checked_mul(q, m[r][w]));
          if (m[i][c] != 0) done = false;
        }
        if (done) break;
      }
      if (m[r][c] == 0) continue;
      if (m[r][c] < 0)
        for (int w = 0; w < width; ++w) m[r][w] = checked_neg(m[r][w]);
      for (int i = 0; i < r; ++i) {
        // floor division keeps the reduced entry in [0, pivot)
        i64 q = m[i][c] / m[r][c];
        if (m[i][c] % m[r][c] < 0) --q;
        if (q != 0)
          for (int w = 0; w < width; ++w)
            m[i][w] = checked_sub(m[i][w], checked_mul(q, m[r][w]));
      }
      ++r;
    }
    m.resize(r);
    return r;
  }

  int ambient_ = 0;
  std::vector<std::vector<i64>> cols_;  // basis columns
};

inline IntLattice lattice_sum(const IntLattice& a, const IntLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("ambient rank mismatch");
  std::vector<std::vector<i64>> gens = a.basis();
  gens.insert(gens.end(), b.basis().begin(), b.basis().end());
  return IntLattice::from_generators(a.ambient_rank(), gens);
}

namespace detail {

/// Kernel of the k x c integer matrix (columns `cols`), via column echelon
/// reduction with transform tracking.  Returns a basis of
/// { x in Z^c : cols * x = 0 }.
inline std::vector<std::vector<i64>> integer_kernel(int ambient,
                                                    std::vector<std::vector<i64>> cols) {
  const int c = static_cast<int>(cols.size());
  std::vector<std::vector<i64>> v(c, std::vector<i64>(c, 0));
  for (int j = 0; j < c; ++j) v[j][j] = 1;

  int lead = 0;
  for (int row = 0; row < ambient && lead < c; ++row) {
    while (true) {
      int best = -1;
      for (int j = lead; j < c; ++j)
        if (cols[j][row] != 0 && (best < 0 || abs64(cols[j][row]) < abs64(cols[best][row])))
          best = j;
      if (best < 0) break;
      std::swap(cols[lead], cols[best]);
      std::swap(v[lead], v[best]);
      bool done = true;
      for (int j = lead + 1; j < c; ++j) {
        if (cols[j][row] == 0) continue;
        const i64 q = cols[j][row] / cols[lead][row];
        for (int i = 0; i < ambient; ++i)
          cols[j][i] = checked_sub(cols[j][i], checked_mul(q, cols[lead][i]));
        for (int i = 0; i < c; ++i) v[j][i] = checked_sub(v[j][i], checked_mul(q, v[lead][i]));
        if (cols[j][row] != 0) done = false;
      }
      if (done) break;
    }
    if (cols[lead][row] != 0) ++lead;
  }
  std::vector<std::vector<i64>> kernel;
  for (int j = lead; j < c; ++j) kernel.push_back(v[j]);
  return kernel;
}

struct SmithData {
  std::vector<i64> diagonal;              // nonzero invariant factors, divisibility chain
  std::vector<std::vector<i64>> linv_cols;  // columns of L^{-1} matching the diagonal
};

/// Smith reduction of the basis matrix of a lattice.  Writing the basis as
/// B = L^{-1} D V^{-1} with L, V unimodular and D diagonal, the lattice is
/// spanned by d_j * (L^{-1} e_j); the returned columns are the L^{-1} e_j.
inline SmithData smith(const IntLattice& lat) {
  const int k = lat.ambient_rank();
  const int r = lat.rank();
  // d[i][j] working matrix, k x r
  std::vector<std::vector<i64>> d(k, std::vector<i64>(r, 0));
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < k; ++i) d[i][j] = lat.basis()[j][i];
  // linv: k x k, starts as identity; row ops on d append inverse column ops.
  std::vector<std::vector<i64>> linv(k, std::vector<i64>(k, 0));
  for (int i = 0; i < k; ++i) linv[i][i] = 1;

  auto swap_rows = [&](int a, int b) {
    std::swap(d[a], d[b]);
    for (int i = 0; i < k; ++i) std::swap(linv[i][a], linv[i][b]);  // swap columns of linv
  };
  auto add_row = [&](int dst, int src, i64 f) {
    // row_dst += f * row_src  =>  linv col_src -= f * linv col_dst
    for (int j = 0; j < r; ++j) d[dst][j] = checked_add(d[dst][j], checked_mul(f, d[src][j]));
    for (int i = 0; i < k; ++i)
      linv[i][src] = checked_sub(linv[i][src], checked_mul(f, linv[i][dst]));
  };
  auto negate_row = [&](int a) {
    for (int j = 0; j < r; ++j) d[a][j] = checked_neg(d[a][j]);
    for (int i = 0; i < k; ++i) linv[i][a] = checked_neg(linv[i][a]);
  };
  auto swap_cols = [&](int a, int b) {
    for (int i = 0; i < k; ++i) std::swap(d[i][a], d[i][b]);
  };
  auto add_col = [&](int dst, int src, i64 f) {
    for (int i = 0; i < k; ++i) d[i][dst] = checked_add(d[i][dst], checked_mul(f, d[i][src]));
  };

  const int steps = std::min(k, r);
  for (int s = 0; s < steps; ++s) {
    while (true) {
      int bi = -1, bj = -1;
      for (int i = s; i < k; ++i)
        for (int j = s; j < r; ++j)
          if (d[i][j] != 0 && (bi < 0 || abs64(d[i][j]) < abs64(d[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi < 0) break;
      if (bi != s) swap_rows(s, bi);
      if (bj != s) swap_cols(s, bj);
      bool clean = true;
      for (int i = s + 1; i < k; ++i)
        if (d[i][s] != 0) {
          add_row(i, s, -(d[i][s] / d[s][s]));
          if (d[i][s] != 0) clean = false;
        }
      for (int j = s + 1; j < r; ++j)
        if (d[s][j] != 0) {
          add_col(j, s, -(d[s][j] / d[s][s]));
          if (d[s][j] != 0) clean = false;
        }
      if (!clean) continue;
      // all of row s and column s beyond (s, s) are zero; enforce that the
      // pivot divides the rest of the block
      bool divides = true;
      for (int i = s + 1; i < k && divides; ++i)
        for (int j = s + 1; j < r; ++j)
          if (d[i][j] % d[s][s] != 0) {
            add_row(s, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d[s][s] < 0) negate_row(s);
  }

  SmithData out;
  for (int s = 0; s < steps; ++s) {
    if (d[s][s] == 0) break;
    out.diagonal.push_back(d[s][s]);
    std::vector<i64> col(k);
    for (int i = 0; i < k; ++i) col[i] = linv[i][s];
    out.linv_cols.push_back(std::move(col));
  }
  return out;
}

}  // namespace detail

inline IntLattice lattice_intersection(const IntLattice& a, const IntLattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("ambient rank mismatch");
  const int k = a.ambient_rank();
  std::vector<std::vector<i64>> stacked;
  for (const auto& c : a.basis()) stacked.push_back(c);
  for (const auto& c : b.basis()) {
    auto neg = c;
    for (auto& x : neg) x = checked_neg(x);
    stacked.push_back(neg);
  }
  auto kernel = detail::integer_kernel(k, stacked);
  std::vector<std::vector<i64>> gens;
  const int ra = a.rank();
  for (const auto& u : kernel) {
    std::vector<i64> v(k, 0);
    for (int j = 0; j < ra; ++j)
      for (int i = 0; i < k; ++i) v[i] = checked_add(v[i], checked_mul(u[j], a.basis()[j][i]));
    gens.push_back(v);
  }
  return IntLattice::from_generators(k, gens);
}

/// { m : tm in N for some nonzero integer t }.
inline IntLattice saturation(const IntLattice& lat) {
  auto sd = detail::smith(lat);
  return IntLattice::from_generators(lat.ambient_rank(), sd.linv_cols);
}

/// Invariant factors of Z^k / N (the nonzero diagonal of the Smith form,
/// a divisibility chain; factors equal to 1 are kept).
inline std::vector<i64> invariant_factors(const IntLattice& lat) {
  return detail::smith(lat).diagonal;
}

/// Exponent of the torsion part of Z^k / N (1 when the quotient is free).
inline i64 torsion_exponent(const IntLattice& lat) {
  auto d = invariant_factors(lat);
  return d.empty() ? 1 : d.back();
}

inline int free_quotient_rank(const IntLattice& lat) {
  return lat.ambient_rank() - lat.rank();
}

/// N + p Z^k.
inline IntLattice add_scaled_identity(const IntLattice& lat, i64 p) {
  const int k = lat.ambient_rank();
  std::vector<std::vector<i64>> gens = lat.basis();
  for (int i = 0; i < k; ++i) {
    std::vector<i64> e(k, 0);
    e[i] = p;
    gens.push_back(e);
  }
  return IntLattice::from_generators(k, gens);
}

/// (N :_M d) = { m : dm in N } for a nonzero integer d, computed as
/// (N intersect dZ^k) / d.  For d = 0 the result is the whole ambient
/// lattice exactly when N is anything (0*m = 0 always lies in N).
inline IntLattice colon_in_lattice(const IntLattice& lat, i64 d) {
  const int k = lat.ambient_rank();
  if (d == 0) return IntLattice::full(k);
  d = abs64(d);
  auto meet = lattice_intersection(lat, [&] {
    std::vector<std::vector<i64>> gens(k, std::vector<i64>(k, 0));
    for (int i = 0; i < k; ++i) gens[i][i] = d;
    return IntLattice::from_generators(k, gens);
  }());
  std::vector<std::vector<i64>> gens;
  for (const auto& c : meet.basis()) {
    std::vector<i64> v(k);
    for (int i = 0; i < k; ++i) v[i] = c[i] / d;
    gens.push_back(v);
  }
  return IntLattice::from_generators(k, gens);
}

/// (N :_Z Z^k) as a non-negative generator: 0 when the quotient has free
/// rank, otherwise the exponent of the finite quotient (the largest
/// invariant factor).
inline i64 colon_ideal_int(const IntLattice& lat) {
  if (free_quotient_rank(lat) > 0) return 0;
  return torsion_exponent(lat);
}

/// Intersection of all prime sublattices of Z^k containing N.
///
/// The prime sublattices of Z^k are exactly (i) the proper saturated
/// sublattices (torsion-free quotient; their colon ideal is 0) and (ii) the
/// preimages of proper F_p-subspaces, i.e. lattices P with pZ^k <= P < Z^k.
/// For a fixed p the intersection of the family (ii) containing N is
/// N + pZ^k when that is proper, and for every prime p outside the torsion
/// exponent of Z^k/N the term N + pZ^k already contains saturation(N), so
/// the infinite intersection collapses to
///   saturation(N)  intersect  (N + pZ^k  for p dividing the torsion exponent).
inline IntLattice m_radical_int(const IntLattice& lat) {
  IntLattice acc = saturation(lat);
  const i64 e = torsion_exponent(lat);
  if (e > 1)
    for (const auto& [p, exp] : factorize(e)) {
      IntLattice term = add_scaled_identity(lat, p);
      if (term.is_full()) continue;  // no proper subspace preimage contains N
      acc = lattice_intersection(acc, term);
    }
  return acc;
}

}  // namespace modlab
