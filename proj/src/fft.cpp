#include "xband/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace xband {
namespace {

// Planning is not thread-safe in FFTW; execution through fftw_execute_dft is.
std::mutex plan_mutex;

fftw_plan get_plan(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard lock(plan_mutex);
    auto it = cache.find({n, sign});
    if (it != cache.end()) return it->second;
    std::vector<Complex> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(std::pair{n, sign}, p);
    return p;
}

void run(std::span<const Complex> in, std::span<Complex> out, int sign) {
    if (in.size() != out.size() || in.empty()) throw ArgumentError("fft: size mismatch");
    fftw_plan p = get_plan(static_cast<int>(in.size()), sign);
    // FFTW takes a non-const input pointer but does not modify it for out-of-place plans.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in.data())),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

void fft_forward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_FORWARD); }
void fft_backward(std::span<const Complex> in, std::span<Complex> out) { run(in, out, FFTW_BACKWARD); }

}  // namespace xband
