#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <maxac/parallel.hpp>

namespace maxac {
namespace {

TEST(ThreadCount, HonorsEnvironment) {
  setenv("MAXAC_THREADS", "3", 1);
  EXPECT_EQ(thread_count(), 3u);
  setenv("MAXAC_THREADS", "0", 1);
  EXPECT_GE(thread_count(), 1u);
  setenv("MAXAC_THREADS", "junk", 1);
  EXPECT_GE(thread_count(), 1u);
  unsetenv("MAXAC_THREADS");
}

TEST(ParallelFor, VisitsEachIndexOnce) {
  setenv("MAXAC_THREADS", "4", 1);
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  unsetenv("MAXAC_THREADS");
}

TEST(ParallelFor, RethrowsWorkerException) {
  setenv("MAXAC_THREADS", "4", 1);
  EXPECT_THROW(parallel_for(100,
                            [](std::size_t i) {
                              if (i == 37) throw std::runtime_error("boom");
                            }),
               std::runtime_error);
  unsetenv("MAXAC_THREADS");
}

}  // namespace
}  // namespace maxac
