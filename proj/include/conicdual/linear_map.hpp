#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "conicdual/error.hpp"
#include "conicdual/vector.hpp"

namespace conicdual {

/// A linear map A : X -> Z together with its adjoint A* : W -> Y.
///
/// Either a dense matrix (row i is the functional x -> <x, row_i>) or the
/// two-row Gale operator on finite-support sequences,
///   (Ax)_1 = x_0 + sum_{i>=1} i x_i,   (Ax)_2 = sum_{i>=1} x_i.
class LinearMap {
 public:
  enum class Form { matrix, gale };

  LinearMap() = default;

  /// Matrix with `cols` columns. Every row must be dense of that dimension.
  static LinearMap matrix(std::vector<Vector> rows, std::size_t cols) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].is_dense() || rows[i].dimension() != cols)
        throw ShapeError("matrix row " + std::to_string(i) + " does not have " + std::to_string(cols) + " entries");
    LinearMap a;
    a.form_ = Form::matrix;
    a.rows_ = std::move(rows);
    a.cols_ = cols;
    return a;
  }

  static LinearMap gale_operator() {
    LinearMap a;
    a.form_ = Form::gale;
    return a;
  }

  Form form() const noexcept { return form_; }
  const std::vector<Vector>& rows() const { return rows_; }
  std::size_t row_count() const { return form_ == Form::gale ? 2 : rows_.size(); }
  std::size_t col_count() const {
    if (form_ == Form::gale) throw ShapeError("the Gale operator has infinitely many columns");
    return cols_;
  }

  Rational entry(std::size_t i, std::size_t j) const {
    if (form_ == Form::matrix) return rows_.at(i).at(j);
    if (i == 0) return j == 0 ? Rational(1) : Rational(Integer(j));
    if (i == 1) return j == 0 ? Rational(0) : Rational(1);
    throw ShapeError("Gale operator has two rows");
  }

  Vector apply(const Vector& x) const {
    if (form_ == Form::matrix) {
      if (!x.is_dense() || x.dimension() != cols_)
        throw ShapeError("apply: expected a dense vector of dimension " + std::to_string(cols_));
      std::vector<Rational> out;
      out.reserve(rows_.size());
      for (const auto& r : rows_) out.push_back(pair(r, x));
      return Vector::dense(std::move(out));
    }
    if (x.shape() != Vector::Shape::finite_support)
      throw ShapeError("apply: the Gale operator acts on finite-support sequences");
    Rational first = 0, second = 0;
    for (const auto& [i, q] : x.support()) {
      first += entry(0, i) * q;
      second += entry(1, i) * q;
    }
    return Vector::dense({first, second});
  }

  /// A* w. For the Gale operator the result is the lazily represented
  /// sequence (w_1, w_1 + w_2, 2 w_1 + w_2, 3 w_1 + w_2, ...).
  Vector adjoint_apply(const Vector& w) const {
    if (!w.is_dense() || w.dimension() != row_count())
      throw ShapeError("adjoint_apply: expected a dense vector of dimension " + std::to_string(row_count()));
    if (form_ == Form::gale) return Vector::affine_sequence(w[0], w[0], w[1]);
    std::vector<Rational> out(cols_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& wi = w.entries()[i];
      if (wi == 0) continue;
      const auto& row = rows_[i].entries();
      for (std::size_t j = 0; j < cols_; ++j) out[j] += wi * row[j];
    }
    return Vector::dense(std::move(out));
  }

  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.form_ == b.form_ && a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  Form form_ = Form::matrix;
  std::vector<Vector> rows_;
  std::size_t cols_ = 0;
};

}  // namespace conicdual
