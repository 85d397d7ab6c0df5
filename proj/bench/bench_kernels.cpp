// Serial reference vs OpenMP path on the heavier library workloads.
// Each workload runs under both paths; results must match.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "morita/catalog.hpp"
#include "morita/enlargement.hpp"
#include "morita/invariants.hpp"
#include "morita/kernels.hpp"
#include "morita/quantal_frame.hpp"
#include "morita/semigroup.hpp"

using namespace morita;

namespace {

// median wall time in ms and a digest of the last result
std::pair<double, std::uint64_t> time_it(const std::function<std::uint64_t()>& f, int reps) {
    std::vector<double> ms;
    std::uint64_t digest = 0;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        digest = f();
        ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(ms.begin(), ms.end());
    return {ms[ms.size() / 2], digest};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel kernel timings"};
    int reps = 5;
    app.add_option("--reps", reps, "repetitions per workload (median reported)")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    auto i4 = symmetric_inverse_monoid_table(4);
    const auto& mult4 = i4.table();
    auto i3 = symmetric_inverse_monoid(3);
    auto i1 = symmetric_inverse_monoid(1);
    auto atlas13 = atlas_bimodule(1, 3);

    struct Workload {
        const char* name;
        std::function<std::uint64_t()> run;
    };
    std::vector<Workload> loads{
        {"associativity of I4 (209^3 triples)",
         [&] { return find_nonassociative(i4.size(), mult4).has_value() ? 1u : 0u; }},
        {"subset filter over 2^22 masks",
         [&] {
             auto v = filter_masks(22, [](std::uint64_t m) { return __builtin_popcountll(m * 0x9e3779b97f4a7c15ull) == 32; });
             return static_cast<std::uint64_t>(v.size());
         }},
        {"lcc(I3) carrier and table", [&] { return QuantalFrame::lcc(i3).mult_digest(); }},
        {"enlargement of the (I1,I3) atlas",
         [&] {
             auto en = enlarge_from_bimodule(EquivalenceBimodule::verify(i1, i3, atlas13));
             return static_cast<std::uint64_t>(en.u->size());
         }},
        {"0-simplifying on I4", [&] { return is_zero_simplifying(*symmetric_inverse_monoid(4)).value ? 1u : 0u; }},
    };

    std::printf("OpenMP %s, %d thread(s), median of %d\n", openmp_enabled() ? "on" : "off", thread_count(), reps);
    std::printf("%-40s %12s %12s %8s\n", "workload", "serial ms", "parallel ms", "ratio");
    int mismatches = 0;
    for (const auto& w : loads) {
        default_exec() = Exec::serial;
        auto [ts, ds] = time_it(w.run, reps);
        default_exec() = Exec::parallel;
        auto [tp, dp] = time_it(w.run, reps);
        if (ds != dp) ++mismatches;
        std::printf("%-40s %12.2f %12.2f %8.2f%s\n", w.name, ts, tp, ts / tp, ds != dp ? "  MISMATCH" : "");
    }
    default_exec() = openmp_enabled() ? Exec::parallel : Exec::serial;
    return mismatches ? 1 : 0;
}
