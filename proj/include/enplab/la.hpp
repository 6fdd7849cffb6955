#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Dense linear algebra entry points used by the operator diagnostics.
// Large factorizations go through LAPACK; products go through Eigen.

namespace enplab::la {

// Call once at program start, before any factorization. Pins the BLAS to one
// thread for run-to-run determinism, and when the CPU reports the full
// AVX-512 feature set but OPENBLAS_CORETYPE is unset, selects the SkylakeX
// kernels explicitly (OpenBLAS falls back to generic kernels on unrecognized
// CPU models, a 4-5x slowdown on the factorizations used here). Environment
// variables already set by the caller always win.
void pin_blas_runtime();

// Singular values of A, descending. Values only, A is passed by value and
// destroyed internally.
Eigen::VectorXd singular_values(Eigen::MatrixXd A);

// Eigenvalues of a general real square matrix (no eigenvectors).
std::vector<std::complex<double>> eigenvalues(Eigen::MatrixXd A);

}
