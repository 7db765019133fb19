// include/augssl/matrix.h

// Copyright 2026  augssl contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef AUGSSL_MATRIX_H_
#define AUGSSL_MATRIX_H_

#include <cstddef>
#include <string>
#include <vector>

namespace augssl {

// Dense row-major matrix of doubles. The numerical core works in double
// precision; the on-disk formats store f32.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}
  Matrix(int rows, int cols, std::vector<double> data);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t size() const { return data_.size(); }
  bool same_shape(const Matrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double &operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  double *row(int r) { return data_.data() + static_cast<size_t>(r) * cols_; }
  const double *row(int r) const { return data_.data() + static_cast<size_t>(r) * cols_; }

  std::vector<double> &data() { return data_; }
  const std::vector<double> &data() const { return data_; }

  void fill(double v);
  void set_zero() { fill(0.0); }

  bool operator==(const Matrix &other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// C = A * B, shapes (m x k) (k x n).
Matrix matmul(const Matrix &a, const Matrix &b);
// C = A * B^T, shapes (m x k) (n x k). Rows of both operands stream
// contiguously, so this is the preferred layout for layer forward passes.
Matrix matmul_nt(const Matrix &a, const Matrix &b);
// C = A^T * B, shapes (k x m) (k x n). Used for weight gradients.
Matrix matmul_tn(const Matrix &a, const Matrix &b);

void add_in_place(Matrix &a, const Matrix &b);           // a += b
void axpy_in_place(Matrix &a, double alpha, const Matrix &b);  // a += alpha * b
void scale_in_place(Matrix &a, double alpha);

// Sum of each column, as a 1 x cols matrix.
Matrix column_sums(const Matrix &a);

double max_abs(const Matrix &a);
bool all_finite(const Matrix &a);
// Throws naming `what` if any value is non-finite.
void check_finite(const Matrix &a, const std::string &what);

}  // namespace augssl

#endif  // AUGSSL_MATRIX_H_
