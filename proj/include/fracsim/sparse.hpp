#pragma once

#include <cstddef>
#include <vector>

namespace fracsim {

enum class ExecPolicy { Serial, Parallel };

/// Square CSR matrix. Rows are sorted by column; duplicate triplets are
/// summed in a fixed order so assembly is deterministic.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> vals;

  static CsrMatrix from_triplets(int n, const std::vector<int>& rows,
                                 const std::vector<int>& cols,
                                 const std::vector<double>& vals);

  double diag(int i) const;
};

/// y = A x. The parallel path splits by rows, so each row's accumulation
/// order matches the serial path and results agree bitwise.
void spmv(const CsrMatrix& a, const std::vector<double>& x, std::vector<double>& y,
          ExecPolicy policy);

struct CgResult {
  std::vector<double> x;
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for SPD (or consistent
/// semidefinite) systems. Inner products are kept serial so the two
/// execution policies produce bitwise-identical iterates.
CgResult jacobi_cg(const CsrMatrix& a, const std::vector<double>& b,
                   double rel_tol = 1e-12, int max_iter = 0,
                   ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace fracsim
