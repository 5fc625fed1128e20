#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "allhops/dist_matrix.hpp"
#include "allhops/error.hpp"
#include "allhops/ext_int.hpp"
#include "allhops/parallel.hpp"

namespace allhops {

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

enum class ProductStrategy { naive };
enum class ScalarConvStrategy { naive, monotone };
enum class MatSeqStrategy { naive, polynomial };

struct ConvStrategy {
  MatSeqStrategy matseq = MatSeqStrategy::naive;
  ScalarConvStrategy scalar = ScalarConvStrategy::monotone;
  ProductStrategy product = ProductStrategy::naive;
};

inline std::string to_string(MatSeqStrategy s) {
  return s == MatSeqStrategy::naive ? "naive" : "polynomial";
}
inline std::string to_string(ScalarConvStrategy s) {
  return s == ScalarConvStrategy::naive ? "naive" : "monotone";
}

// ---------------------------------------------------------------------------
// Min-plus matrix product
// ---------------------------------------------------------------------------

namespace detail {

/// Largest |finite entry|, saturated to kInfRaw - 1.
inline std::int64_t max_abs_finite(const DistMatrix& m) noexcept {
  std::int64_t best = 0;
  for (auto x : m.cells()) {
    if (x.is_inf()) continue;
    const auto v = x.raw();
    const auto a = v == ExtInt::kMinRaw ? ExtInt::kInfRaw - 1 : (v < 0 ? -v : v);
    best = std::max(best, a);
  }
  return best;
}

// c[j] = min(c[j], a + b[j]) for finite a, when no finite sum can overflow.
inline void relax_row_unchecked(std::int64_t a, const ExtInt* __restrict b, ExtInt* __restrict c,
                                std::size_t n) noexcept {
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t bj = b[j].raw();
    const std::int64_t t = bj == ExtInt::kInfRaw ? ExtInt::kInfRaw : a + bj;
    const std::int64_t cj = c[j].raw();
    c[j] = ExtInt(t < cj ? t : cj);
  }
}

inline void relax_row_saturating(ExtInt a, const ExtInt* b, ExtInt* c, std::size_t n) noexcept {
  for (std::size_t j = 0; j < n; ++j) c[j] = min(c[j], a + b[j]);
}

}  // namespace detail

/// out = min(out, a * b) under the (min, +) semiring.
inline void minplus_accumulate(const DistMatrix& a, const DistMatrix& b, DistMatrix& out) {
  if (a.col_labels() != b.row_labels()) throw InputError("minplus_product: A.cols != B.rows");
  if (out.rows() != a.rows() || out.cols() != b.cols())
    throw InputError("minplus_product: output shape mismatch");
  const std::size_t inner = a.cols();
  const std::size_t width = b.cols();
  if (inner == 0 || width == 0) return;
  const bool unchecked = detail::max_abs_finite(a) < (std::int64_t{1} << 62) &&
                         detail::max_abs_finite(b) < (std::int64_t{1} << 62);
  parallel_for(0, a.rows(), [&](std::size_t i) {
    auto arow = a.row(i);
    ExtInt* crow = out.row(i).data();
    for (std::size_t k = 0; k < inner; ++k) {
      const ExtInt aik = arow[k];
      if (aik.is_inf()) continue;
      const ExtInt* brow = b.row(k).data();
      if (unchecked)
        detail::relax_row_unchecked(aik.raw(), brow, crow, width);
      else
        detail::relax_row_saturating(aik, brow, crow, width);
    }
  });
}

/// C[i,j] = min_k A[i,k] + B[k,j]; requires A's column labels == B's row labels.
inline DistMatrix minplus_product(const DistMatrix& a, const DistMatrix& b,
                                  ProductStrategy = ProductStrategy::naive) {
  DistMatrix out(a.row_labels(), b.col_labels());
  minplus_accumulate(a, b, out);
  return out;
}

/// q-fold min-plus power by repeated squaring. For an adjacency matrix W,
/// entry (u,v) of W^q is the exact-q-hop distance d_q(u,v).
inline DistMatrix minplus_power(const DistMatrix& w, std::uint64_t q) {
  if (w.row_labels() != w.col_labels()) throw InputError("minplus_power: matrix is not square");
  if (q < 1) throw InputError("minplus_power: exponent must be >= 1");
  std::optional<DistMatrix> result;
  DistMatrix base = w;
  while (true) {
    if (q & 1) result = result ? minplus_product(*result, base) : base;
    q >>= 1;
    if (q == 0) break;
    base = minplus_product(base, base);
  }
  return *result;
}

// ---------------------------------------------------------------------------
// Scalar sequences
// ---------------------------------------------------------------------------

/// ExtInt sequence whose first element sits at index `offset`.
struct ExtSeq {
  std::int64_t offset = 0;
  std::vector<ExtInt> values;

  std::size_t size() const noexcept { return values.size(); }
  /// Value at absolute index; inf outside the stored range.
  ExtInt at(std::int64_t index) const noexcept {
    const auto p = index - offset;
    if (p < 0 || p >= static_cast<std::int64_t>(values.size())) return kInf;
    return values[static_cast<std::size_t>(p)];
  }

  friend bool operator==(const ExtSeq&, const ExtSeq&) = default;
};

inline bool is_non_increasing(std::span<const ExtInt> s) noexcept {
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i - 1] < s[i]) return false;
  return true;
}

/// Positions p of a non-increasing sequence where a new value starts
/// (p == 0 or s[p] < s[p-1]).
inline std::vector<std::uint32_t> breakpoints(std::span<const ExtInt> s) {
  std::vector<std::uint32_t> out;
  for (std::size_t p = 0; p < s.size(); ++p)
    if (p == 0 || s[p] < s[p - 1]) out.push_back(static_cast<std::uint32_t>(p));
  return out;
}

/// out[z - zlo] = min(out[z - zlo], min_{x+y=z} a[x] + b[y]) for z in [zlo, zhi].
/// Positions are 0-based within the spans.
inline void convolve_naive_into(std::span<const ExtInt> a, std::span<const ExtInt> b,
                                std::size_t zlo, std::size_t zhi, std::span<ExtInt> out) {
  if (a.empty() || b.empty()) return;
  zhi = std::min(zhi, a.size() + b.size() - 2);
  for (std::size_t z = zlo; z <= zhi; ++z) {
    const std::size_t xlo = z >= b.size() ? z - (b.size() - 1) : 0;
    const std::size_t xhi = std::min(z, a.size() - 1);
    ExtInt best = out[z - zlo];
    for (std::size_t x = xlo; x <= xhi; ++x) best = min(best, a[x] + b[z - x]);
    out[z - zlo] = best;
  }
}

/// Same contract as convolve_naive_into for non-increasing a and b. Only the
/// first admissible x and the breakpoints of a are tried: if a[x] == a[x-1]
/// then a[x-1] + b[z-x+1] <= a[x] + b[z-x], so the minimum is attained at one
/// of those positions.
inline void convolve_monotone_into(std::span<const ExtInt> a, std::span<const std::uint32_t> a_breaks,
                                   std::span<const ExtInt> b, std::size_t zlo, std::size_t zhi,
                                   std::span<ExtInt> out) {
  if (a.empty() || b.empty()) return;
  zhi = std::min(zhi, a.size() + b.size() - 2);
  for (std::size_t z = zlo; z <= zhi; ++z) {
    const std::size_t xlo = z >= b.size() ? z - (b.size() - 1) : 0;
    const std::size_t xhi = std::min(z, a.size() - 1);
    ExtInt best = min(out[z - zlo], a[xlo] + b[z - xlo]);
    auto it = std::upper_bound(a_breaks.begin(), a_breaks.end(), static_cast<std::uint32_t>(xlo));
    for (; it != a_breaks.end() && *it <= xhi; ++it) best = min(best, a[*it] + b[z - *it]);
    out[z - zlo] = best;
  }
}

/// Min-plus convolution of two offset sequences: output offset is the sum of
/// the offsets, output length len(a)+len(b)-1, and
/// C[i] = min over valid splits of a[k] + b[i-k].
///
/// The `monotone` strategy requires both inputs non-increasing and exploits
/// that to skip dominated splits; it is exact and agrees with `naive`.
inline ExtSeq seq_convolution(const ExtSeq& a, const ExtSeq& b,
                              ScalarConvStrategy strategy = ScalarConvStrategy::naive) {
  ExtSeq out;
  out.offset = a.offset + b.offset;
  if (a.values.empty() || b.values.empty()) return out;
  const std::size_t len = a.size() + b.size() - 1;
  out.values.assign(len, kInf);
  if (strategy == ScalarConvStrategy::monotone) {
    if (!is_non_increasing(a.values) || !is_non_increasing(b.values))
      throw PreconditionError("seq_convolution: monotone strategy needs non-increasing inputs");
    const auto breaks = breakpoints(a.values);
    convolve_monotone_into(a.values, breaks, b.values, 0, len - 1, out.values);
  } else {
    convolve_naive_into(a.values, b.values, 0, len - 1, out.values);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix sequences
// ---------------------------------------------------------------------------

/// Hop-indexed sequence of equally shaped matrices; mats[p] is hop offset + p.
struct MatrixSeq {
  std::int64_t offset = 0;
  std::vector<DistMatrix> mats;

  std::size_t size() const noexcept { return mats.size(); }
  std::int64_t first_hop() const noexcept { return offset; }
  std::int64_t last_hop() const noexcept { return offset + static_cast<std::int64_t>(mats.size()) - 1; }
  const DistMatrix& at_hop(std::int64_t h) const { return mats.at(static_cast<std::size_t>(h - offset)); }
  DistMatrix& at_hop(std::int64_t h) { return mats.at(static_cast<std::size_t>(h - offset)); }

  friend bool operator==(const MatrixSeq&, const MatrixSeq&) = default;
};

struct HopRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
};

struct MatSeqOptions {
  MatSeqStrategy strategy = MatSeqStrategy::naive;
  /// Entry bound for the polynomial strategy; computed from the data if unset.
  std::optional<std::int64_t> bound;
  /// Restrict the output to these hop indices (clipped to the full range).
  std::optional<HopRange> output;
};

namespace detail {

inline void check_seq_shapes(const MatrixSeq& a, const MatrixSeq& b) {
  for (std::size_t p = 1; p < a.size(); ++p)
    if (a.mats[p].row_labels() != a.mats[0].row_labels() ||
        a.mats[p].col_labels() != a.mats[0].col_labels())
      throw InputError("matseq_convolution: A elements differ in shape");
  for (std::size_t p = 1; p < b.size(); ++p)
    if (b.mats[p].row_labels() != b.mats[0].row_labels() ||
        b.mats[p].col_labels() != b.mats[0].col_labels())
      throw InputError("matseq_convolution: B elements differ in shape");
  if (a.mats[0].col_labels() != b.mats[0].row_labels())
    throw InputError("matseq_convolution: A.cols != B.rows");
}

// Boolean polynomial in y stored as packed 64-bit words.
inline void or_shifted(const std::uint64_t* src, std::size_t src_words, std::size_t shift,
                       std::uint64_t* dst, std::size_t dst_words) noexcept {
  const std::size_t word_shift = shift / 64;
  const unsigned bit_shift = static_cast<unsigned>(shift % 64);
  for (std::size_t w = 0; w < src_words; ++w) {
    const std::uint64_t v = src[w];
    if (v == 0) continue;
    const std::size_t d = w + word_shift;
    if (d < dst_words) dst[d] |= v << bit_shift;
    if (bit_shift != 0 && d + 1 < dst_words) dst[d + 1] |= v >> (64 - bit_shift);
  }
}

// dst |= a (x) b, the product of two boolean polynomials in y.
inline void or_convolve(const std::uint64_t* a, const std::uint64_t* b, std::size_t in_words,
                        std::uint64_t* dst, std::size_t out_words) noexcept {
  for (std::size_t w = 0; w < in_words; ++w) {
    std::uint64_t bits = a[w];
    while (bits != 0) {
      const unsigned t = static_cast<unsigned>(std::countr_zero(bits));
      or_shifted(b, in_words, w * 64 + t, dst, out_words);
      bits &= bits - 1;
    }
  }
}

inline MatrixSeq matseq_polynomial(const MatrixSeq& a, const MatrixSeq& b, std::int64_t bound,
                                   HopRange range) {
  const auto& rows = a.mats[0].row_labels();
  const auto& inner_labels = a.mats[0].col_labels();
  const auto& cols = b.mats[0].col_labels();
  const std::size_t R = rows.size(), K = inner_labels.size(), Cn = cols.size();
  const std::size_t la = a.size(), lb = b.size();

  for (const auto* seq : {&a, &b})
    for (const auto& m : seq->mats)
      for (auto x : m.cells())
        if (x.is_finite() && (x.raw() > bound || x.raw() < -bound))
          throw InputError("matseq_convolution: entry outside the declared bound");

  // Shift every finite entry by +bound into {0..2*bound}; sums land in {0..4*bound}.
  const auto in_span = static_cast<std::size_t>(2 * bound);
  const std::size_t in_words = in_span / 64 + 1;
  const std::size_t out_words = (2 * in_span) / 64 + 1;

  // x-degree is the position in the sequence; y-degree is the shifted value.
  auto encode = [&](const MatrixSeq& s, std::size_t nr, std::size_t nc) {
    std::vector<std::uint64_t> poly(nr * nc * s.size() * in_words, 0);
    for (std::size_t p = 0; p < s.size(); ++p)
      for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) {
          const ExtInt x = s.mats[p](i, j);
          if (x.is_inf()) continue;
          const auto y = static_cast<std::size_t>(x.raw() + bound);
          poly[((i * nc + j) * s.size() + p) * in_words + y / 64] |= std::uint64_t{1} << (y % 64);
        }
    return poly;
  };
  const auto pa = encode(a, R, K);
  const auto pb = encode(b, K, Cn);

  const std::int64_t base = a.offset + b.offset;
  const auto zlo = static_cast<std::size_t>(range.lo - base);
  const auto zhi = static_cast<std::size_t>(range.hi - base);
  const std::size_t out_len = zhi - zlo + 1;

  MatrixSeq out;
  out.offset = range.lo;
  out.mats.assign(out_len, DistMatrix(rows, cols));
  auto nonzero = [](const std::uint64_t* p, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w)
      if (p[w] != 0) return true;
    return false;
  };

  parallel_for(0, R, [&](std::size_t i) {
    std::vector<std::uint64_t> acc(Cn * out_len * out_words);
    for (std::size_t k = 0; k < K; ++k)
      for (std::size_t x = 0; x < la; ++x) {
        const std::uint64_t* ax = &pa[((i * K + k) * la + x) * in_words];
        if (!nonzero(ax, in_words)) continue;
        for (std::size_t j = 0; j < Cn; ++j)
          for (std::size_t y = 0; y < lb; ++y) {
            const std::size_t z = x + y;
            if (z < zlo || z > zhi) continue;
            const std::uint64_t* by = &pb[((k * Cn + j) * lb + y) * in_words];
            or_convolve(ax, by, in_words, &acc[(j * out_len + (z - zlo)) * out_words], out_words);
          }
      }
    // Lowest nonzero y-degree per x-degree is the min-plus value.
    for (std::size_t j = 0; j < Cn; ++j)
      for (std::size_t z = 0; z < out_len; ++z) {
        const std::uint64_t* p = &acc[(j * out_len + z) * out_words];
        for (std::size_t w = 0; w < out_words; ++w) {
          if (p[w] == 0) continue;
          const auto deg = static_cast<std::int64_t>(w * 64 + std::countr_zero(p[w]));
          out.mats[z](i, j) = ExtInt(deg - 2 * bound);
          break;
        }
      }
  });
  return out;
}

}  // namespace detail

/// C_z = min over x+y=z of A_x * B_y (min-plus product), for every output hop z
/// (optionally restricted to options.output).
///
/// `naive` evaluates every contributing pair with minplus_accumulate.
/// `polynomial` encodes each sequence as a matrix of bivariate boolean
/// polynomials (x-degree = hop, y-degree = shifted entry), multiplies the
/// polynomial matrices, and reads the lowest nonzero y-degree per x-degree.
inline MatrixSeq matseq_convolution(const MatrixSeq& a, const MatrixSeq& b,
                                    const MatSeqOptions& options = {}) {
  MatrixSeq out;
  out.offset = a.offset + b.offset;
  if (a.mats.empty() || b.mats.empty()) return out;
  detail::check_seq_shapes(a, b);

  HopRange range{out.offset, a.last_hop() + b.last_hop()};
  if (options.output) {
    range.lo = std::max(range.lo, options.output->lo);
    range.hi = std::min(range.hi, options.output->hi);
  }
  if (range.hi < range.lo) {
    out.offset = range.lo;
    return out;
  }

  if (options.strategy == MatSeqStrategy::polynomial) {
    std::int64_t bound = 0;
    if (options.bound) {
      bound = *options.bound;
      if (bound < 0) throw InputError("matseq_convolution: bound must be nonnegative");
    } else {
      for (const auto* seq : {&a, &b})
        for (const auto& m : seq->mats) bound = std::max(bound, detail::max_abs_finite(m));
    }
    if (bound > (std::int64_t{1} << 24))
      throw InputError("matseq_convolution: bound too large for the polynomial kernel");
    return detail::matseq_polynomial(a, b, bound, range);
  }

  out.offset = range.lo;
  out.mats.assign(static_cast<std::size_t>(range.hi - range.lo + 1),
                  DistMatrix(a.mats[0].row_labels(), b.mats[0].col_labels()));
  for (std::int64_t x = a.first_hop(); x <= a.last_hop(); ++x)
    for (std::int64_t y = b.first_hop(); y <= b.last_hop(); ++y) {
      const std::int64_t z = x + y;
      if (z < range.lo || z > range.hi) continue;
      minplus_accumulate(a.at_hop(x), b.at_hop(y), out.at_hop(z));
    }
  return out;
}

inline MatrixSeq matseq_convolution(const MatrixSeq& a, const MatrixSeq& b, MatSeqStrategy strategy,
                                    std::optional<std::int64_t> bound = std::nullopt) {
  MatSeqOptions options;
  options.strategy = strategy;
  options.bound = bound;
  return matseq_convolution(a, b, options);
}

/// Min-plus product of matrices whose finite entries lie in {-bound..bound},
/// computed through the polynomial kernel on length-1 sequences.
inline DistMatrix bounded_minplus_product(const DistMatrix& a, const DistMatrix& b, std::int64_t bound) {
  MatrixSeq sa{0, {a}}, sb{0, {b}};
  auto c = matseq_convolution(sa, sb, MatSeqStrategy::polynomial, bound);
  return std::move(c.mats.at(0));
}

}  // namespace allhops
