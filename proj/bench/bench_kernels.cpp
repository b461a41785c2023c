// Benchmark of the OpenMP kernels against the serial reference path:
// wavefunction grid evaluation, the Woods-Saxon panel scan and the
// closed-form-vs-oracle fixture sweep.  Also asserts that both paths give
// bitwise-identical results.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "dirac/parallel.hpp"
#include "dirac/spectra.hpp"
#include "dirac/verify.hpp"
#include "dirac/wavefunctions.hpp"

using namespace dirac;

namespace {

double now() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class F>
double timed(F&& f, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        double t0 = now();
        f();
        best = std::min(best, now() - t0);
    }
    return best;
}

std::vector<double> run_grid_eval(int npts) {
    PotentialSpec rm(RosenMorse1Pot{4.0, 2.0, 1.0});
    RelativisticContext ctx{0.1};
    AngularChannel ch{1};
    TransformParameters tp = derive_transform(rm, ctx, ch);
    SpectrumRequest req{rm, ctx, ch, Branch::Regular, +1, {2}};
    BoundState st = spectra::energies(req)[0];
    std::vector<double> grid(npts);
    for (int i = 0; i < npts; ++i) grid[i] = -7.0 + 16.0 * i / (npts - 1.0);
    return wavefunctions::upper_component(st, rm, ctx, ch, tp, grid);
}

std::vector<BoundState> run_ws_scan() {
    PotentialSpec ws(WoodsSaxonPot{5.0, 6.0, 2.0});
    SpectrumRequest req{ws, RelativisticContext{0.05}, AngularChannel{1},
                        Branch::Regular, +1, {0, 1, 2}};
    return spectra::woods_saxon_energy(req);
}

verify::Section run_fixture_sweep() {
    return verify::check_spectra_vs_oracle(verify::catalog_fixtures());
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", par::max_threads());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");

    {
        par::set_parallel(false);
        auto ref = run_grid_eval(400000);
        double ts = timed([] { run_grid_eval(400000); });
        par::set_parallel(true);
        auto par_out = run_grid_eval(400000);
        double tp = timed([] { run_grid_eval(400000); });
        std::printf("%-34s %10.4f %10.4f %7.2fx %s\n", "wavefunction grid (400k pts)", ts,
                    tp, ts / tp, bits_equal(ref, par_out) ? "" : "MISMATCH");
    }
    {
        par::set_parallel(false);
        auto ref = run_ws_scan();
        double ts = timed([] { run_ws_scan(); });
        par::set_parallel(true);
        auto par_out = run_ws_scan();
        double tp = timed([] { run_ws_scan(); });
        bool same = ref.size() == par_out.size();
        for (std::size_t i = 0; same && i < ref.size(); ++i)
            same = ref[i].epsilon == par_out[i].epsilon;
        std::printf("%-34s %10.4f %10.4f %7.2fx %s\n", "woods-saxon panel scan", ts, tp,
                    ts / tp, same ? "" : "MISMATCH");
    }
    {
        par::set_parallel(false);
        auto ref = run_fixture_sweep();
        double ts = timed([] { run_fixture_sweep(); }, 1);
        par::set_parallel(true);
        auto par_out = run_fixture_sweep();
        double tp = timed([] { run_fixture_sweep(); }, 1);
        bool same = ref.checks.size() == par_out.checks.size();
        for (std::size_t i = 0; same && i < ref.checks.size(); ++i)
            same = ref.checks[i].value == par_out.checks[i].value;
        std::printf("%-34s %10.4f %10.4f %7.2fx %s\n", "fixture oracle sweep (18 cases)",
                    ts, tp, ts / tp, same ? "" : "MISMATCH");
    }
    return 0;
}
