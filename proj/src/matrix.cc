// src/matrix.cc

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

#include "augssl/matrix.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace augssl {

Matrix::Matrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != static_cast<size_t>(rows) * cols) {
    throw std::runtime_error("matrix: data size does not match shape");
  }
}

void Matrix::fill(double v) { std::fill(data_.begin(), data_.end(), v); }

Matrix matmul(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows()) throw std::runtime_error("matmul: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  const int m = a.rows(), k = a.cols(), n = b.cols();
  for (int i = 0; i < m; ++i) {
    double *ci = c.row(i);
    const double *ai = a.row(i);
    for (int p = 0; p < k; ++p) {
      const double av = ai[p];
      if (av == 0.0) continue;
      const double *bp = b.row(p);
      for (int j = 0; j < n; ++j) ci[j] += av * bp[j];
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix &a, const Matrix &b) {
  if (a.cols() != b.cols()) throw std::runtime_error("matmul_nt: inner dimensions differ");
  Matrix c(a.rows(), b.rows());
  const int m = a.rows(), k = a.cols(), n = b.rows();
  for (int i = 0; i < m; ++i) {
    const double *ai = a.row(i);
    double *ci = c.row(i);
    for (int j = 0; j < n; ++j) {
      const double *bj = b.row(j);
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += ai[p] * bj[p];
      ci[j] = acc;
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix &a, const Matrix &b) {
  if (a.rows() != b.rows()) throw std::runtime_error("matmul_tn: inner dimensions differ");
  Matrix c(a.cols(), b.cols());
  const int k = a.rows(), m = a.cols(), n = b.cols();
  for (int p = 0; p < k; ++p) {
    const double *ap = a.row(p);
    const double *bp = b.row(p);
    for (int i = 0; i < m; ++i) {
      const double av = ap[i];
      if (av == 0.0) continue;
      double *ci = c.row(i);
      for (int j = 0; j < n; ++j) ci[j] += av * bp[j];
    }
  }
  return c;
}

void add_in_place(Matrix &a, const Matrix &b) {
  if (!a.same_shape(b)) throw std::runtime_error("add: shape mismatch");
  double *pa = a.data().data();
  const double *pb = b.data().data();
  for (size_t i = 0; i < a.size(); ++i) pa[i] += pb[i];
}

void axpy_in_place(Matrix &a, double alpha, const Matrix &b) {
  if (!a.same_shape(b)) throw std::runtime_error("axpy: shape mismatch");
  double *pa = a.data().data();
  const double *pb = b.data().data();
  for (size_t i = 0; i < a.size(); ++i) pa[i] += alpha * pb[i];
}

void scale_in_place(Matrix &a, double alpha) {
  for (double &v : a.data()) v *= alpha;
}

Matrix column_sums(const Matrix &a) {
  Matrix s(1, a.cols());
  double *ps = s.row(0);
  for (int i = 0; i < a.rows(); ++i) {
    const double *ai = a.row(i);
    for (int j = 0; j < a.cols(); ++j) ps[j] += ai[j];
  }
  return s;
}

double max_abs(const Matrix &a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::fabs(v));
  return m;
}

bool all_finite(const Matrix &a) {
  for (double v : a.data()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void check_finite(const Matrix &a, const std::string &what) {
  if (!all_finite(a)) throw std::runtime_error(what + ": non-finite values");
}

}  // namespace augssl
