// Copyright 2026 The cvlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVLAB_LINALG_HPP
#define CVLAB_LINALG_HPP

#include <algorithm>
#include <vector>

#include "cvlab/scalar.hpp"

namespace cvlab {

// Reduced row echelon form, in place. Returns pivot column indices.
// Exact for rational scalars; the float instantiation treats |x| <= eps
// as zero via sgn().
template <class S>
std::vector<int> rref_in_place(MatX<S>& m) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (sgn(m(r, col)) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    m.row(row).swap(m.row(piv));
    const S inv = scalar_traits<S>::from_long(1) / m(row, col);
    m.row(row) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r != row && sgn(m(r, col)) != 0) m.row(r) -= m(r, col) * m.row(row);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

template <class S>
int rank_of(const std::vector<VecX<S>>& vecs, Eigen::Index dim) {
  if (vecs.empty()) return 0;
  MatX<S> m(static_cast<Eigen::Index>(vecs.size()), dim);
  for (size_t i = 0; i < vecs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vecs[i].transpose();
  return static_cast<int>(rref_in_place(m).size());
}

// Canonical basis of the row space, read off the RREF.
template <class S>
std::vector<VecX<S>> row_space_basis(const std::vector<VecX<S>>& vecs,
                                     Eigen::Index dim) {
  std::vector<VecX<S>> basis;
  if (vecs.empty()) return basis;
  MatX<S> m(static_cast<Eigen::Index>(vecs.size()), dim);
  for (size_t i = 0; i < vecs.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vecs[i].transpose();
  const auto pivots = rref_in_place(m);
  for (size_t i = 0; i < pivots.size(); ++i)
    basis.push_back(m.row(static_cast<Eigen::Index>(i)).transpose());
  return basis;
}

// Orthogonal projection of v onto span(basis). Exact Gram solve.
template <class S>
VecX<S> project_onto_span(const VecX<S>& v, const std::vector<VecX<S>>& basis) {
  if (basis.empty()) return VecX<S>::Zero(v.size());
  const Eigen::Index k = static_cast<Eigen::Index>(basis.size());
  MatX<S> g(k, k);
  VecX<S> rhs(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    rhs(i) = basis[static_cast<size_t>(i)].dot(v);
    for (Eigen::Index j = 0; j < k; ++j)
      g(i, j) = basis[static_cast<size_t>(i)].dot(basis[static_cast<size_t>(j)]);
  }
  Eigen::FullPivLU<MatX<S>> lu(g);
  VecX<S> coef = lu.solve(rhs);
  VecX<S> out = VecX<S>::Zero(v.size());
  for (Eigen::Index i = 0; i < k; ++i) out += coef(i) * basis[static_cast<size_t>(i)];
  return out;
}

template <class S>
S det_exact(MatX<S> m) {
  const Eigen::Index d = m.rows();
  S det = scalar_traits<S>::from_long(1);
  for (Eigen::Index col = 0; col < d; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < d; ++r) {
      if (sgn(m(r, col)) != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return scalar_traits<S>::from_long(0);
    if (piv != col) {
      m.row(col).swap(m.row(piv));
      det = -det;
    }
    det *= m(col, col);
    const S inv = scalar_traits<S>::from_long(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < d; ++r) {
      if (sgn(m(r, col)) != 0) m.row(r) -= (m(r, col) * inv) * m.row(col);
    }
  }
  return det;
}

template <class S>
bool lex_less(const VecX<S>& a, const VecX<S>& b) {
  for (Eigen::Index i = 0; i < a.size() && i < b.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return a.size() < b.size();
}

template <class DA, class DB>
bool vec_eq(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

}  // namespace cvlab

#endif  // CVLAB_LINALG_HPP
