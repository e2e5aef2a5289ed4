#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "salv/cli.hpp"
#include "salv/elim.hpp"
#include "salv/errors.hpp"
#include "salv/salvetti.hpp"

// Times the OpenMP kernels against their serial forms: complex construction
// with and without the parallel cell pass, the production elimination in both
// modes, and the quadratic left-looking reference where it stays feasible.
// All runs must agree on the rank; a mismatch aborts the row.

namespace {

using clk = std::chrono::steady_clock;

long run_ms(const std::function<void()>& fn) {
  auto t0 = clk::now();
  fn();
  return static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(clk::now() - t0)
          .count());
}

void bench_instance(salv::Family f, int n, int h, int d, bool reference) {
  using namespace salv;
  CoxeterSystem sys(f, n);

  BuildOptions serial_opt;
  serial_opt.max_degree = h;
  serial_opt.parallel = false;
  BuildOptions parallel_opt = serial_opt;
  parallel_opt.parallel = true;

  long build_serial = run_ms([&] { build_complex(sys, ComplexSpec{}, serial_opt); });
  long build_parallel =
      run_ms([&] { build_complex(sys, ComplexSpec{}, parallel_opt); });

  ChainComplex cx = build_complex(sys, ComplexSpec{}, parallel_opt);
  const MonoMatrix& m = cx.boundary(h);
  CycField F(d);

  std::uint32_t r_serial = 0, r_parallel = 0;
  long elim_serial = run_ms([&] {
    SparseMat<CycField> s = sparse_from_mono(m, F);
    ElimOptions o;
    o.parallel = false;
    r_serial = rank_eliminate(F, s, o);
  });
  long elim_parallel = run_ms([&] {
    SparseMat<CycField> s = sparse_from_mono(m, F);
    ElimOptions o;
    o.parallel = true;
    r_parallel = rank_eliminate(F, s, o);
  });
  if (r_serial != r_parallel)
    throw InternalError("serial and parallel elimination disagree on rank");

  long ref_ms = -1;
  if (reference) {
    std::uint32_t r_ref = 0;
    SparseMat<CycField> s = sparse_from_mono(m, F);
    ref_ms = run_ms([&] { r_ref = rank_reference(F, s); });
    if (r_ref != r_serial)
      throw InternalError("reference elimination disagrees on rank");
  }

  char fam = "ABD"[f == Family::A ? 0 : (f == Family::B ? 1 : 2)];
  std::printf("%c%-2d  d%-2d cyc:%-3d %8u x %-8u %7ld %7ld  %9u %8ld %8ld ",
              fam, n, h, d, m.rows, m.cols, build_serial, build_parallel,
              r_serial, elim_serial, elim_parallel);
  if (ref_ms >= 0)
    std::printf("%8ld\n", ref_ms);
  else
    std::printf("%8s\n", "-");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial versus OpenMP timing for the build and rank kernels"};
  std::string family;
  int rank = 0, degree = 2, d = 1;
  bool no_reference = false;
  app.add_option("--family", family, "A, B or D; omit for the default set");
  app.add_option("--rank", rank);
  app.add_option("--degree", degree, "boundary degree to eliminate");
  app.add_option("--d", d, "cyclotomic index of the scalar field");
  app.add_flag("--no-reference", no_reference,
               "skip the quadratic reference elimination");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : salv::kExitUsage;
  }

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf(
      "sys  deg ring        rows x cols      build ser/par ms   rank     elim "
      "ser/par ms    ref ms\n");

  try {
    if (!family.empty() && rank > 0) {
      bench_instance(salv::parse_family(family), rank, degree, d,
                     !no_reference);
      return 0;
    }
    bench_instance(salv::Family::A, 4, 2, 1, !no_reference);
    bench_instance(salv::Family::B, 3, 2, 1, !no_reference);
    bench_instance(salv::Family::D, 4, 2, 1, !no_reference);
    bench_instance(salv::Family::A, 5, 2, 1, false);
    bench_instance(salv::Family::B, 4, 3, 2, false);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return salv::exit_code_for(e);
  }
  return 0;
}
