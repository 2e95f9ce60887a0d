// Timing harness comparing the serial reference kernels against their
// OpenMP counterparts on random inputs.

#include "mtk/four_point.hpp"
#include "mtk/tight_span.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef MTK_HAVE_OPENMP
#include <omp.h>
#endif

using namespace mtk;

namespace {

FiniteMetricSpace random_space(std::mt19937_64& rng, int n) {
    // Entries in [1,2] satisfy the triangle inequality automatically.
    std::uniform_int_distribution<int> num(0, 60);
    std::vector<std::vector<Rat>> matrix(n, std::vector<Rat>(n, Rat(0)));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back("p" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Rat d = 1 + Rat(num(rng), 60);
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    return validate_metric(labels, matrix);
}

template <typename F> double best_of_three_ms(F&& work) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        auto start = std::chrono::steady_clock::now();
        work();
        auto stop = std::chrono::steady_clock::now();
        double ms = std::chrono::duration<double, std::milli>(stop - start).count();
        if (ms < best)
            best = ms;
    }
    return best;
}

void report(const char* name, int size, double serial_ms, double parallel_ms) {
    std::printf("%-22s n=%-4d serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n", name, size,
                serial_ms, parallel_ms, serial_ms / parallel_ms);
}

} // namespace

int main() {
#ifdef MTK_HAVE_OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; parallel kernels fall back to serial\n");
#endif

    std::mt19937_64 rng(20240521);

    for (int n : {24, 40, 56, 64}) {
        FiniteMetricSpace space = random_space(rng, n);
        FourPointReport serial, parallel;
        double s = best_of_three_ms([&] { serial = four_point_report_serial(space); });
        double p = best_of_three_ms([&] { parallel = four_point_report_parallel(space); });
        if (serial.excess != parallel.excess ||
            serial.worst_quadruple != parallel.worst_quadruple) {
            std::printf("kernel mismatch on four_point n=%d\n", n);
            return 1;
        }
        report("four_point_scan", n, s, p);
    }

    for (int n : {7, 8}) {
        FiniteMetricSpace space = random_space(rng, n);
        TightSpanComplex complex = enumerate_tight_span(space);
        ComplexProbe serial, parallel;
        double s = best_of_three_ms(
            [&] { serial = probe_complex_structure_serial(space, complex.vertices); });
        double p = best_of_three_ms(
            [&] { parallel = probe_complex_structure_parallel(space, complex.vertices); });
        if (serial.min_rank != parallel.min_rank || serial.edges != parallel.edges) {
            std::printf("kernel mismatch on complex probe n=%d\n", n);
            return 1;
        }
        std::printf("%-22s n=%-4d vertices=%-4zu\n", "tight_span_vertices", n,
                    complex.vertices.size());
        report("complex_probe", n, s, p);
    }
    return 0;
}
