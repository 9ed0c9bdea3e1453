#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace kglab::spectral::detail {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is.  Plans are built once per shape and kept for the process.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int rank, int points, Direction dir) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_tuple(rank, points, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    std::vector<int> shape(rank, points);
    for (int i = 0; i < rank; ++i) total *= static_cast<std::size_t>(points);
    fftw_complex* in = fftw_alloc_complex(total);
    fftw_complex* out = fftw_alloc_complex(total);
    int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan =
        fftw_plan_dft(rank, shape.data(), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    if (plan == nullptr) throw std::runtime_error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, Direction>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void execute_dft(int rank, int points, Direction dir, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  if (in.size() != out.size()) throw std::invalid_argument("execute_dft: size mismatch");
  fftw_plan plan = cache().get(rank, points, dir);
  // FFTW takes a non-const input pointer but does not modify it for
  // out-of-place complex transforms.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(plan, src, dst);
}

}  // namespace kglab::spectral::detail
