// Benchmark: OpenMP kernels against the serial reference, random matrices
// over F_p. Exact arithmetic means the outputs must agree bit for bit; the
// comparison is asserted on every size.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coringlab/matrix.hpp"

using namespace coringlab;
using gf::Matrix;

namespace {

Matrix random_matrix(int n, gf::u32 p, std::mt19937_64& rng) {
    Matrix m(n, n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = static_cast<gf::u32>(rng() % p);
    return m;
}

template <class F>
double time_ms(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    const gf::u32 p = argc > 1 ? static_cast<gf::u32>(std::atol(argv[1])) : 3;
    gf::require_prime(p);
    std::mt19937_64 rng(2026);
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d, p = %u\n", omp_get_max_threads(), p);
#else
    std::printf("OpenMP disabled at build time, p = %u\n", p);
#endif
    std::printf("%6s | %12s | %12s | %8s | %12s | %12s | %8s\n", "n", "mul par ms", "mul ref ms",
                "speedup", "rref par ms", "rref ref ms", "speedup");
    for (int n : {64, 128, 256, 384, 512, 768}) {
        Matrix a = random_matrix(n, p, rng);
        Matrix b = random_matrix(n, p, rng);
        Matrix c_par, c_ref;
        gf::Echelon e_par, e_ref;
        const double t_mul_par = time_ms([&] { c_par = gf::mul(a, b); });
        const double t_mul_ref = time_ms([&] { c_ref = gf::reference::mul(a, b); });
        const double t_rref_par = time_ms([&] { e_par = gf::rref(a); });
        const double t_rref_ref = time_ms([&] { e_ref = gf::reference::rref(a); });
        if (!(c_par == c_ref) || !(e_par.m == e_ref.m)) {
            std::printf("MISMATCH at n=%d\n", n);
            return 1;
        }
        std::printf("%6d | %12.2f | %12.2f | %7.2fx | %12.2f | %12.2f | %7.2fx\n", n, t_mul_par,
                    t_mul_ref, t_mul_ref / t_mul_par, t_rref_par, t_rref_ref,
                    t_rref_ref / t_rref_par);
    }
    return 0;
}
