// Serial reference vs OpenMP kernels on fixed instances.

#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "qtorus/analysis.hpp"
#include "qtorus/image_kernels.hpp"

using namespace qtorus;

namespace {

double seconds(const std::function<void()>& f, int reps = 3)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool agree)
{
    std::printf("%-34s %10.4f %10.4f %7.2fx  %s\n", name, serial, parallel, serial / parallel,
                agree ? "agree" : "DISAGREE");
}

} // namespace

int main()
{
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial s", "omp s", "speedup");

    const IntMatrix h4{{0, 1, 2, 3}, {-1, 0, 5, 2}, {-2, -5, 0, 7}, {-3, -2, -7, 0}};
    {
        std::uint64_t a = 0, b = 0;
        const double ts = seconds([&] { a = image_size_bruteforce_serial(h4, 24); });
        const double tp = seconds([&] { b = image_size_bruteforce_parallel(h4, 24); });
        row("image enumeration n=4 m=24", ts, tp, a == b);
    }

    const IntMatrix h6{{0, 1, 1, 1, 1, 1}, {-1, 0, 1, 1, 1, 1}, {-1, -1, 0, 1, 1, 1},
                       {-1, -1, -1, 0, 1, 1}, {-1, -1, -1, -1, 0, 1}, {-1, -1, -1, -1, -1, 0}};
    const auto nf = compute_normal_form({h6, 7});
    const auto sym = build_symbolic(nf);
    {
        RelationReport a, b;
        const double ts = seconds([&] { a = verify_relations(sym, h6, false); });
        const double tp = seconds([&] { b = verify_relations(sym, h6, true); });
        row("relations n=6 m=7 (D=343)", ts, tp, a.ok() == b.ok() && a.checked == b.checked);
    }
    {
        const auto cert = formal_simplicity_certificate(nf);
        std::uint64_t a = 0, b = 0;
        const double ts = seconds([&] { a = count_unseparated_pairs_serial(cert); });
        const double tp = seconds([&] { b = count_unseparated_pairs_parallel(cert); });
        row("pair separation D=343", ts, tp, a == b);
    }
    {
        const std::uint64_t p = smallest_prime_one_mod(7);
        const auto fam = instantiate_finite_field(sym, p, 1);
        GenerationReport a, b;
        const double ts = seconds([&] { a = random_vector_generation_test_serial(fam.x, p, 4, 1); }, 1);
        const double tp = seconds([&] { b = random_vector_generation_test_parallel(fam.x, p, 4, 1); }, 1);
        row("generation test D=343, 4 trials", ts, tp, a.spanned == b.spanned);
    }
    return 0;
}
