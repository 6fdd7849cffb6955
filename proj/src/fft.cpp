#include "enplab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <vector>

namespace enplab::fft {

namespace {
// FFTW plan creation is not thread-safe; execution via fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}

Fft2::Fft2(int n) : n_(n) {
  std::lock_guard<std::mutex> lock(planner_mutex());
  std::vector<std::complex<double>> dummy(static_cast<size_t>(n) * n);
  auto* p = reinterpret_cast<fftw_complex*>(dummy.data());
  fwd_ = fftw_plan_dft_2d(n, n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  bwd_ = fftw_plan_dft_2d(n, n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Fft2::~Fft2() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Fft2::forward(std::complex<double>* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), p, p);
}

void Fft2::backward(std::complex<double>* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), p, p);
}

}
