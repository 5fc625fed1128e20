#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "allhops/error.hpp"
#include "allhops/ext_int.hpp"

namespace allhops {

using Vertex = std::uint32_t;

inline std::vector<Vertex> iota_labels(std::size_t count) {
  std::vector<Vertex> labels(count);
  std::iota(labels.begin(), labels.end(), Vertex{0});
  return labels;
}

/// Dense row-major matrix of distances. Rows and columns carry index labels
/// (usually vertex ids; stacked matrices use synthetic sequential labels).
class DistMatrix {
 public:
  DistMatrix() = default;

  DistMatrix(std::size_t rows, std::size_t cols, ExtInt fill = kInf)
      : DistMatrix(iota_labels(rows), iota_labels(cols), fill) {}

  DistMatrix(std::vector<Vertex> row_labels, std::vector<Vertex> col_labels, ExtInt fill = kInf)
      : row_labels_(std::move(row_labels)),
        col_labels_(std::move(col_labels)),
        cells_(row_labels_.size() * col_labels_.size(), fill) {}

  /// Tropical identity over `labels`: 0 where row label == column label, inf elsewhere.
  static DistMatrix identity(const std::vector<Vertex>& labels) {
    DistMatrix m(labels, labels);
    for (std::size_t i = 0; i < labels.size(); ++i) m(i, i) = ExtInt::zero();
    return m;
  }

  static DistMatrix identity(const std::vector<Vertex>& row_labels,
                             const std::vector<Vertex>& col_labels) {
    DistMatrix m(row_labels, col_labels);
    for (std::size_t i = 0; i < row_labels.size(); ++i)
      for (std::size_t j = 0; j < col_labels.size(); ++j)
        if (row_labels[i] == col_labels[j]) m(i, j) = ExtInt::zero();
    return m;
  }

  std::size_t rows() const noexcept { return row_labels_.size(); }
  std::size_t cols() const noexcept { return col_labels_.size(); }
  const std::vector<Vertex>& row_labels() const noexcept { return row_labels_; }
  const std::vector<Vertex>& col_labels() const noexcept { return col_labels_; }

  ExtInt& operator()(std::size_t i, std::size_t j) noexcept { return cells_[i * cols() + j]; }
  ExtInt operator()(std::size_t i, std::size_t j) const noexcept { return cells_[i * cols() + j]; }

  std::span<ExtInt> row(std::size_t i) noexcept { return {cells_.data() + i * cols(), cols()}; }
  std::span<const ExtInt> row(std::size_t i) const noexcept {
    return {cells_.data() + i * cols(), cols()};
  }

  std::span<ExtInt> cells() noexcept { return cells_; }
  std::span<const ExtInt> cells() const noexcept { return cells_; }

  /// Entrywise minimum with a matrix of identical shape.
  void min_with(const DistMatrix& other) {
    if (other.rows() != rows() || other.cols() != cols())
      throw InputError("min_with: dimension mismatch");
    for (std::size_t i = 0; i < cells_.size(); ++i) cells_[i] = min(cells_[i], other.cells_[i]);
  }

  /// Submatrix by row/column positions (not labels).
  DistMatrix select(std::span<const std::size_t> row_pos, std::span<const std::size_t> col_pos) const {
    std::vector<Vertex> rl, cl;
    rl.reserve(row_pos.size());
    cl.reserve(col_pos.size());
    for (auto p : row_pos) rl.push_back(row_labels_.at(p));
    for (auto p : col_pos) cl.push_back(col_labels_.at(p));
    DistMatrix out(std::move(rl), std::move(cl));
    for (std::size_t i = 0; i < row_pos.size(); ++i)
      for (std::size_t j = 0; j < col_pos.size(); ++j) out(i, j) = (*this)(row_pos[i], col_pos[j]);
    return out;
  }

  DistMatrix select_rows(std::span<const std::size_t> row_pos) const {
    std::vector<std::size_t> all(cols());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return select(row_pos, all);
  }

  DistMatrix transposed() const {
    DistMatrix out(col_labels_, row_labels_);
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  /// Same cells, relabelled. Used when stacking or unstacking.
  DistMatrix relabeled(std::vector<Vertex> row_labels, std::vector<Vertex> col_labels) const {
    if (row_labels.size() != rows() || col_labels.size() != cols())
      throw InputError("relabeled: label count mismatch");
    DistMatrix out = *this;
    out.row_labels_ = std::move(row_labels);
    out.col_labels_ = std::move(col_labels);
    return out;
  }

  friend bool operator==(const DistMatrix&, const DistMatrix&) = default;

 private:
  std::vector<Vertex> row_labels_;
  std::vector<Vertex> col_labels_;
  std::vector<ExtInt> cells_;
};

/// Positions of `subset` labels inside `labels` (both sorted ascending).
inline std::vector<std::size_t> positions_of(std::span<const Vertex> labels,
                                             std::span<const Vertex> subset) {
  std::vector<std::size_t> out;
  out.reserve(subset.size());
  std::size_t p = 0;
  for (auto v : subset) {
    while (p < labels.size() && labels[p] < v) ++p;
    if (p == labels.size() || labels[p] != v) throw InputError("positions_of: label not present");
    out.push_back(p);
  }
  return out;
}

}  // namespace allhops
