#pragma once

#include <complex>

namespace enplab::fft {

// In-place 2D complex transforms on an n-by-n grid, unnormalized
// (backward(forward(x)) == n*n*x). Row-major layout: entry (i,j) at i*n+j.
// Plans are created once per instance; execution is safe to call from
// multiple threads on distinct buffers.
class Fft2 {
 public:
  explicit Fft2(int n);
  ~Fft2();
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

  void forward(std::complex<double>* data) const;
  void backward(std::complex<double>* data) const;
  int n() const { return n_; }

 private:
  int n_;
  void* fwd_;
  void* bwd_;
};

// Signed frequency integer for DFT bin k of an n-point transform
// (0,1,...,n/2-1,-n/2,...,-1).
inline int freq_index(int k, int n) { return k < n - n / 2 ? k : k - n; }

}
