#include <doctest.h>

#include <cstring>
#include <stdexcept>
#include <vector>

#include "dirac/parallel.hpp"
#include "dirac/spectra.hpp"
#include "dirac/wavefunctions.hpp"

using namespace dirac;

namespace {

struct ParallelGuard {
    bool saved;
    ParallelGuard() : saved(par::parallel_enabled()) {}
    ~ParallelGuard() { par::set_parallel(saved); }
};

std::vector<double> grid_eval() {
    PotentialSpec rm(RosenMorse1Pot{4.0, 2.0, 1.0});
    RelativisticContext ctx{0.1};
    AngularChannel ch{1};
    TransformParameters tp = derive_transform(rm, ctx, ch);
    SpectrumRequest req{rm, ctx, ch, Branch::Regular, +1, {2}};
    BoundState st = spectra::energies(req)[0];
    std::vector<double> grid(20001);
    for (int i = 0; i < 20001; ++i) grid[i] = -7.0 + 16.0 * i / 20000.0;
    return wavefunctions::upper_component(st, rm, ctx, ch, tp, grid);
}

} // namespace

TEST_CASE("parallel and serial kernels give bitwise-identical results") {
    ParallelGuard g;

    par::set_parallel(false);
    auto a = grid_eval();
    par::set_parallel(true);
    auto b = grid_eval();
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);

    // deterministic ordered reduction
    par::set_parallel(false);
    double s1 = par::sum_indexed(100000, [](std::size_t i) { return 1.0 / (1.0 + i); });
    par::set_parallel(true);
    double s2 = par::sum_indexed(100000, [](std::size_t i) { return 1.0 / (1.0 + i); });
    CHECK(s1 == s2);

    // Woods-Saxon panel scan
    PotentialSpec ws(WoodsSaxonPot{5.0, 6.0, 2.0});
    SpectrumRequest req{ws, RelativisticContext{0.05}, AngularChannel{1},
                        Branch::Regular, +1, {0, 1, 2}};
    par::set_parallel(false);
    auto r1 = spectra::woods_saxon_energy(req);
    par::set_parallel(true);
    auto r2 = spectra::woods_saxon_energy(req);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1[i].epsilon == r2[i].epsilon);
}

TEST_CASE("exceptions cross the parallel region intact") {
    ParallelGuard g;
    par::set_parallel(true);
    CHECK_THROWS_AS(par::for_each_index(64,
                                        [](std::size_t i) {
                                            if (i == 17) throw std::runtime_error("boom");
                                        }),
                    std::runtime_error);
}
