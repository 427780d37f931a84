#ifndef DYSTHE_FFT_HPP
#define DYSTHE_FFT_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace dysthe {

/// Smallest 2^a 3^b 5^c that is >= n (n >= 1).
inline std::int64_t good_fft_size(std::int64_t n) {
  if (n <= 1) return 1;
  std::int64_t best = INT64_MAX;
  for (std::int64_t p2 = 1; p2 < 2 * n; p2 *= 2) {
    for (std::int64_t p3 = p2; p3 < 2 * n; p3 *= 3) {
      for (std::int64_t p5 = p3; p5 < 2 * n; p5 *= 5) {
        if (p5 >= n && p5 < best) best = p5;
      }
    }
  }
  return best;
}

/// Trigonometric synthesis/analysis on M equispaced points, no 1/2pi anywhere:
///   synthesize: g_k = sum_m c_m e^{+2 pi i m k / M}
///   analyze:    c_m = (1/M) sum_k g_k e^{-2 pi i m k / M}
/// One engine per thread; Eigen::FFT caches plans internally.
template <typename Scalar>
class FourierEngine {
 public:
  using Complex = std::complex<Scalar>;

  FourierEngine() { fft_.SetFlag(Eigen::FFT<Scalar>::Unscaled); }

  // kissfft does not handle a length-1 transform, which is the identity anyway.
  void synthesize(std::vector<Complex>& out, const std::vector<Complex>& in) {
    if (in.size() <= 1) {
      out = in;
      return;
    }
    fft_.inv(out, in);
  }

  void analyze(std::vector<Complex>& out, const std::vector<Complex>& in) {
    if (in.size() <= 1) {
      out = in;
      return;
    }
    fft_.fwd(out, in);
    const Scalar scale = Scalar(1) / static_cast<Scalar>(in.size());
    for (auto& v : out) v *= scale;
  }

 private:
  Eigen::FFT<Scalar> fft_;
};

/// Index of frequency m in an M-point transform.
inline std::int64_t wrap_index(std::int64_t m, std::int64_t size) {
  const std::int64_t r = m % size;
  return r < 0 ? r + size : r;
}

}  // namespace dysthe

#endif  // DYSTHE_FFT_HPP
