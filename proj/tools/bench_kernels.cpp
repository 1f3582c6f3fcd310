// Copyright 2026 The dramascope authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Times the serial reference kernels against the parallel ones and checks
// that both produce bitwise identical output.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "dramascope/kernels.hpp"
#include "dramascope/matrix.hpp"
#include "dramascope/rng.hpp"

namespace {

using dramascope::Mat;
namespace kernels = dramascope::kernels;

Mat random_mat(std::size_t rows, std::size_t cols, dramascope::Rng& rng,
               double offset = 0.0) {
  Mat m(rows, cols);
  for (double& x : m.data) x = rng.uniform01() + offset;
  return m;
}

double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

bool bitwise_equal(const Mat& a, const Mat& b) {
  if (!a.same_shape(b)) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    if (std::memcmp(&a.data[i], &b.data[i], sizeof(double)) != 0) return false;
  return true;
}

void report(const std::string& name, const std::string& size, double ser_ms,
            double par_ms, bool identical) {
  std::printf("%-18s %-14s %10.2f %10.2f %8.2fx   %s\n", name.c_str(),
              size.c_str(), ser_ms, par_ms, ser_ms / par_ms,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;
  int reps = 3;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc)
      threads = std::atoi(argv[++i]);
    else if (arg == "--reps" && i + 1 < argc)
      reps = std::atoi(argv[++i]);
  }
  if (threads > 0) kernels::set_threads(threads);
  std::printf("threads: %d (parallel path %s)\n", kernels::threads(),
              kernels::parallel_active() ? "active" : "inactive");
  std::printf("%-18s %-14s %10s %10s %9s\n", "kernel", "size", "serial ms",
              "par ms", "speedup");

  dramascope::Rng rng(20260819);
  int failures = 0;
  const auto check = [&](bool ok) {
    if (!ok) ++failures;
  };

  {
    const Mat a = random_mat(400, 300, rng);
    const Mat b = random_mat(300, 400, rng);
    Mat s(400, 400), p(400, 400);
    const double ts = time_ms([&] { kernels::serial::matmul(a, b, s); }, reps);
    const double tp = time_ms([&] { kernels::par::matmul(a, b, p); }, reps);
    const bool ok = bitwise_equal(s, p);
    check(ok);
    report("matmul", "400x300x400", ts, tp, ok);
  }
  {
    const Mat x = random_mat(2000, 64, rng);
    Mat s(64, 64), p(64, 64);
    const double ts = time_ms([&] { kernels::serial::gram_cols(x, s); }, reps);
    const double tp = time_ms([&] { kernels::par::gram_cols(x, p); }, reps);
    const bool ok = bitwise_equal(s, p);
    check(ok);
    report("gram_cols", "2000x64", ts, tp, ok);
  }
  {
    const Mat h = random_mat(64, 2000, rng);
    Mat s(64, 64), p(64, 64);
    const double ts = time_ms([&] { kernels::serial::gram_rows(h, s); }, reps);
    const double tp = time_ms([&] { kernels::par::gram_rows(h, p); }, reps);
    const bool ok = bitwise_equal(s, p);
    check(ok);
    report("gram_rows", "64x2000", ts, tp, ok);
  }
  {
    const Mat rows = random_mat(600, 32, rng, 0.01);
    std::vector<double> norms(rows.rows);
    for (std::size_t i = 0; i < rows.rows; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < rows.cols; ++j)
        acc += rows(i, j) * rows(i, j);
      norms[i] = std::sqrt(acc);
    }
    Mat s(600, 600), p(600, 600);
    const double ts =
        time_ms([&] { kernels::serial::cosine_distances(rows, norms, s); }, reps);
    const double tp =
        time_ms([&] { kernels::par::cosine_distances(rows, norms, p); }, reps);
    const bool ok = bitwise_equal(s, p);
    check(ok);
    report("cosine_distances", "600x32", ts, tp, ok);
  }
  {
    const Mat d = random_mat(600, 600, rng);
    Mat sym(600, 600);
    for (std::size_t i = 0; i < 600; ++i)
      for (std::size_t j = 0; j < 600; ++j)
        sym(i, j) = i == j ? 0.0 : d(std::min(i, j), std::max(i, j));
    Mat s(600, 600), p(600, 600);
    const double ts =
        time_ms([&] { kernels::serial::double_center(sym, s); }, reps);
    const double tp = time_ms([&] { kernels::par::double_center(sym, p); }, reps);
    const bool ok = bitwise_equal(s, p);
    check(ok);
    report("double_center", "600x600", ts, tp, ok);
  }

  if (failures > 0) {
    std::printf("%d kernel(s) disagreed between serial and parallel paths\n",
                failures);
    return 1;
  }
  return 0;
}
