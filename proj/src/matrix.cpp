#include "eqbox/matrix.hpp"

#include <algorithm>

#include "eqbox/error.hpp"

namespace eqbox {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init) {
  rows_ = init.size();
  cols_ = rows_ == 0 ? 0 : init.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : init) {
    if (row.size() != cols_) throw Error(Errc::SizeMismatch, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw Error(Errc::SizeMismatch, "ragged matrix rows");
    std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * m.cols_);
  }
  return m;
}

std::vector<double> Matrix::row_sums() const {
  std::vector<double> out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j);
  return out;
}

std::vector<double> Matrix::col_sums() const {
  std::vector<double> out(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[j] += (*this)(i, j);
  return out;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    out[i].assign(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  return out;
}

double Matrix::max_entry() const {
  return data_.empty() ? 0.0 : *std::max_element(data_.begin(), data_.end());
}

}  // namespace eqbox
