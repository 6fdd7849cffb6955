#include "enplab/la.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace enplab::la {

void pin_blas_runtime() {
  setenv("OPENBLAS_NUM_THREADS", "1", /*overwrite=*/0);
#if defined(__GNUC__) && defined(__x86_64__)
  // The SkylakeX dispatch target needs F, DQ, BW and VL; checking the actual
  // feature bits keeps this safe on CPUs OpenBLAS recognizes already.
  if (__builtin_cpu_supports("avx512f") && __builtin_cpu_supports("avx512dq") &&
      __builtin_cpu_supports("avx512bw") && __builtin_cpu_supports("avx512vl"))
    setenv("OPENBLAS_CORETYPE", "SKYLAKEX", /*overwrite=*/0);
#endif
}

Eigen::VectorXd singular_values(Eigen::MatrixXd A) {
  const lapack_int m = static_cast<lapack_int>(A.rows());
  const lapack_int n = static_cast<lapack_int>(A.cols());
  Eigen::VectorXd s(std::min(m, n));
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, A.data(), m,
                                   s.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw std::runtime_error("dgesdd failed, info=" + std::to_string(info));
  return s;
}

std::vector<std::complex<double>> eigenvalues(Eigen::MatrixXd A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("eigenvalues: square matrix required");
  const lapack_int n = static_cast<lapack_int>(A.rows());
  std::vector<double> wr(n), wi(n);
  lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n,
                                  wr.data(), wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw std::runtime_error("dgeev failed, info=" + std::to_string(info));
  std::vector<std::complex<double>> w(n);
  for (lapack_int i = 0; i < n; ++i) w[i] = {wr[i], wi[i]};
  return w;
}

}
