#include "fracsim/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fracsim {

CsrMatrix CsrMatrix::from_triplets(int n, const std::vector<int>& rows,
                                   const std::vector<int>& cols,
                                   const std::vector<double>& vals) {
  if (rows.size() != cols.size() || rows.size() != vals.size())
    throw std::invalid_argument("triplet arrays disagree in length");
  const std::size_t nnz_in = rows.size();

  // Stable counting sort by (row, col) keeps the input order of duplicates,
  // so the summation order is fixed regardless of how triplets were built.
  std::vector<std::size_t> order(nnz_in);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rows[a] != rows[b]) return rows[a] < rows[b];
    return cols[a] < cols[b];
  });

  CsrMatrix m;
  m.n = n;
  m.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  int prev_r = -1, prev_c = -1;
  for (std::size_t k : order) {
    const int r = rows[k], c = cols[k];
    if (r < 0 || r >= n || c < 0 || c >= n) throw std::out_of_range("triplet index out of range");
    if (r == prev_r && c == prev_c) {
      m.vals.back() += vals[k];
    } else {
      m.col_idx.push_back(c);
      m.vals.push_back(vals[k]);
      ++m.row_ptr[static_cast<std::size_t>(r) + 1];
      prev_r = r;
      prev_c = c;
    }
  }
  for (int r = 0; r < n; ++r) m.row_ptr[static_cast<std::size_t>(r) + 1] += m.row_ptr[static_cast<std::size_t>(r)];
  return m;
}

double CsrMatrix::diag(int i) const {
  for (int k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
    if (col_idx[static_cast<std::size_t>(k)] == i) return vals[static_cast<std::size_t>(k)];
  return 0.0;
}

void spmv(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y,
          ExecPolicy policy) {
  y.resize(static_cast<std::size_t>(a.n));
  if (policy == ExecPolicy::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.n; ++i) {
      double s = 0.0;
      for (int k = a.row_ptr[static_cast<std::size_t>(i)]; k < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
        s += a.vals[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(a.col_idx[static_cast<std::size_t>(k)])];
      y[static_cast<std::size_t>(i)] = s;
    }
  } else {
    for (int i = 0; i < a.n; ++i) {
      double s = 0.0;
      for (int k = a.row_ptr[static_cast<std::size_t>(i)]; k < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
        s += a.vals[static_cast<std::size_t>(k)] * x[static_cast<std::size_t>(a.col_idx[static_cast<std::size_t>(k)])];
      y[static_cast<std::size_t>(i)] = s;
    }
  }
}

namespace {
double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
}  // namespace

CgResult jacobi_cg(const CsrMatrix& a, const std::vector<double>& b, double rel_tol,
                   int max_iter, ExecPolicy policy) {
  const int n = a.n;
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("rhs size mismatch");
  if (max_iter <= 0) max_iter = std::max(100, 10 * n);

  std::vector<double> dinv(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double d = a.diag(i);
    dinv[static_cast<std::size_t>(i)] = d != 0.0 ? 1.0 / d : 1.0;
  }

  CgResult res;
  res.x.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> r = b, z(static_cast<std::size_t>(n)), p, q;
  const double bnorm = std::sqrt(dot(b, b));
  if (bnorm == 0.0) {
    res.converged = true;
    return res;
  }
  for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = dinv[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(i)];
  p = z;
  double rz = dot(r, z);
  for (int it = 0; it < max_iter; ++it) {
    spmv(a, p, q, policy);
    const double pq = dot(p, q);
    if (pq <= 0.0) break;  // lost positive definiteness numerically
    const double alpha = rz / pq;
    for (int i = 0; i < n; ++i) {
      res.x[static_cast<std::size_t>(i)] += alpha * p[static_cast<std::size_t>(i)];
      r[static_cast<std::size_t>(i)] -= alpha * q[static_cast<std::size_t>(i)];
    }
    res.iterations = it + 1;
    res.rel_residual = std::sqrt(dot(r, r)) / bnorm;
    if (res.rel_residual <= rel_tol) {
      res.converged = true;
      break;
    }
    for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = dinv[static_cast<std::size_t>(i)] * r[static_cast<std::size_t>(i)];
    const double rz_new = dot(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] + beta * p[static_cast<std::size_t>(i)];
  }
  return res;
}

}  // namespace fracsim
