#include "rieszwave/diagnostics.hpp"
#include "rieszwave/format.hpp"
#include "rieszwave/parallel.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

using namespace rieszwave;

TEST(ParallelFor, CoversEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
    parallel_for(0, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsWorkerException) {
    EXPECT_THROW(parallel_for(64, [](std::size_t i) {
                     if (i == 37) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(ParallelFor, NestedCallsComplete) {
    std::atomic<int> total{0};
    parallel_for(8, [&](std::size_t) { parallel_for(8, [&](std::size_t) { ++total; }); });
    EXPECT_EQ(total.load(), 64);
}

TEST(ParallelFor, WorkerLimit) {
    const unsigned saved = max_workers();
    set_max_workers(1);
    EXPECT_EQ(max_workers(), 1u);
    std::vector<std::size_t> order;
    parallel_for(5, [&](std::size_t i) { order.push_back(i); });
    EXPECT_EQ(order, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
    set_max_workers(saved);
}

TEST(Diagnostics, ScopedSinkRestoresPrevious) {
    std::vector<std::string> outer, inner;
    ScopedDiagnosticSink a([&](std::string_view m) { outer.emplace_back(m); });
    {
        ScopedDiagnosticSink b([&](std::string_view m) { inner.emplace_back(m); });
        emit_diagnostic("one");
    }
    emit_diagnostic("two");
    EXPECT_EQ(inner, std::vector<std::string>{"one"});
    EXPECT_EQ(outer, std::vector<std::string>{"two"});
}

TEST(Format, RoundTripsAndNonFinite) {
    EXPECT_EQ(format_real(-1.23456789012345e-05), "-1.23456789012345e-05");
    EXPECT_EQ(format_real(0.0), "0.00000000000000e+00");
    for (double v : {M_PI, 1.0 / 3.0, 6.02e23}) EXPECT_NEAR(std::stod(format_real(v)), v, 1e-14 * v);
    EXPECT_EQ(format_real(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(format_real(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_short(8.8516e-05), "8.8516e-05");
}
