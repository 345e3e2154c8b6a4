#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rcqr/bench.hpp"
#include "rcqr/bounds.hpp"
#include "rcqr/matrix_market.hpp"
#include "rcqr/qr.hpp"
#include "rcqr/rng.hpp"
#include "rcqr/sketch.hpp"
#include "rcqr/testmatrices.hpp"

namespace {

struct GenOpts {
  std::string family = "t1";
  double sigma = 1e-4;
  std::size_t blocks = 1000;
  std::size_t block_size = 20;
  std::uint64_t seed = 0;
};

struct SketchOpts {
  std::string alg = "mr";
  std::size_t s1 = 2800, s2 = 500, s = 500;
  double eps1 = 0.5, p1 = 0.6, eps2 = 0.5, p2 = 0.4, eps = 0.5, p = 0.6;
};

void add_gen_options(CLI::App* cmd, GenOpts& g) {
  cmd->add_option("--family", g.family, "t1, t2 or dense")
      ->check(CLI::IsMember({"t1", "t2", "dense"}));
  cmd->add_option("--sigma", g.sigma, "Smallest diagonal value, in (0,1]");
  cmd->add_option("--blocks", g.blocks, "Number of stacked blocks q");
  cmd->add_option("--block-size", g.block_size, "Block size nb");
}

void add_sketch_options(CLI::App* cmd, SketchOpts& o) {
  cmd->add_option("--alg", o.alg, "cholqr2, sr or mr")
      ->check(CLI::IsMember({"cholqr2", "sr", "mr"}));
  cmd->add_option("--s1", o.s1, "CountSketch rows (mr)");
  cmd->add_option("--s2", o.s2, "Gaussian rows (mr)");
  cmd->add_option("--s", o.s, "Gaussian rows (sr)");
  cmd->add_option("--eps1", o.eps1, "CountSketch distortion");
  cmd->add_option("--p1", o.p1, "CountSketch failure probability");
  cmd->add_option("--eps2", o.eps2, "Gaussian distortion (mr)");
  cmd->add_option("--p2", o.p2, "Gaussian failure probability (mr)");
  cmd->add_option("--eps", o.eps, "Gaussian distortion (sr)");
  cmd->add_option("--p", o.p, "Gaussian failure probability (sr)");
}

rcqr::GeneratorSpec to_spec(const GenOpts& g) {
  rcqr::GeneratorSpec spec;
  spec.family = rcqr::parse_family(g.family);
  spec.sigma = g.sigma;
  spec.block_count = g.blocks;
  spec.block_size = g.block_size;
  spec.seed = g.seed;
  return spec;
}

void apply_sketch_opts(const SketchOpts& o, rcqr::ExperimentConfig& c) {
  c.algorithm = rcqr::parse_algorithm(o.alg);
  c.s1 = o.s1;
  c.s2 = o.s2;
  c.s = o.s;
  c.e1 = o.eps1;
  c.p1 = o.p1;
  c.e2 = o.eps2;
  c.p2 = o.p2;
  c.e = o.eps;
  c.p = o.p;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

int cmd_gen(const GenOpts& g, const std::string& out) {
  const auto x = rcqr::generate(to_spec(g));
  if (const auto* s = std::get_if<rcqr::SparseMatrix>(&x))
    rcqr::write_matrix_market(*s, out);
  else
    rcqr::write_matrix_market(rcqr::from_dense(std::get<rcqr::DenseMatrix>(x)),
                              out);
  return 0;
}

int cmd_factorize(const SketchOpts& o, const std::string& in,
                  std::uint64_t seed, const std::string& out_q,
                  const std::string& out_r) {
  rcqr::ExperimentConfig c;
  apply_sketch_opts(o, c);
  c.source = in;
  const rcqr::InputMatrix x = rcqr::load_input(c);
  const rcqr::QRResult res = rcqr::factorize(x, c, seed);
  std::cout << "orthogonality " << sci(res.diagnostics.orthogonality) << '\n'
            << "residual " << sci(res.diagnostics.residual) << '\n';
  if (!out_q.empty())
    rcqr::write_matrix_market(rcqr::from_dense(res.Q), out_q);
  if (!out_r.empty())
    rcqr::write_matrix_market(rcqr::from_dense(res.R.dense()), out_r);
  return 0;
}

int cmd_bench(const GenOpts& g, const SketchOpts& o, const std::string& in,
              std::size_t trials, std::uint64_t seed, std::size_t threads,
              double threshold, const std::string& csv) {
  rcqr::ExperimentConfig c;
  apply_sketch_opts(o, c);
  if (in.empty())
    c.source = to_spec(g);
  else
    c.source = in;
  c.trials = trials;
  c.master_seed = seed;
  c.threads = threads;
  c.success_orth_threshold = threshold;
  const auto result = rcqr::run_experiment(c);
  if (!csv.empty()) rcqr::emit_csv(result.records, csv);
  const auto& s = result.summary;
  std::cout << "successes " << s.successes << '/' << s.trials << '\n'
            << "breakdowns " << s.breakdowns << '\n'
            << "quality_fails " << s.quality_fails << '\n'
            << "mean_orthogonality " << sci(s.mean_orthogonality) << '\n'
            << "mean_residual " << sci(s.mean_residual) << '\n'
            << "mean_time_s " << sci(s.mean_time_s) << '\n';
  return 0;
}

int cmd_bounds(const SketchOpts& o, const std::string& in,
               double dense_fraction, const std::string& json) {
  rcqr::ExperimentConfig c;
  apply_sketch_opts(o, c);
  const rcqr::DenseMatrix x = rcqr::to_dense(rcqr::read_matrix_market(in));
  const rcqr::BoundReport rep =
      rcqr::bound_report(c.algorithm, x, c.sketch_params(), dense_fraction);
  if (json.empty())
    std::cout << rcqr::bound_report_json(rep) << '\n';
  else
    rcqr::emit_json(rep, json);
  std::cout << "admissible " << (rep.admissible ? "true" : "false") << '\n';
  return 0;
}

int cmd_verify_sketch(const std::string& kind, std::size_t m, std::size_t s1,
                      std::size_t s2, std::size_t n, double eps,
                      std::size_t trials, std::uint64_t seed) {
  std::vector<double> data(m * n);
  const std::uint64_t key = rcqr::rng::stream_key(seed, 101);
  for (std::size_t i = 0; i < data.size(); ++i)
    data[i] = rcqr::rng::normal(key, i);
  const rcqr::DenseMatrix x(m, n, std::move(data));
  rcqr::SketchOperator op = rcqr::build_countsketch(s1, m, seed);
  if (kind == "gauss")
    op = rcqr::build_gaussian(s1, m, seed);
  else if (kind == "multi")
    op = rcqr::build_multi(s1, s2, m, n, seed);
  const rcqr::EmbeddingParams params =
      kind == "multi" ? rcqr::combine_embedding(eps, 0.0, eps, 0.0)
                      : rcqr::EmbeddingParams{eps, eps, 0.0};
  const double freq = rcqr::verify_embedding(op, x, params, trials, seed);
  std::cout << "frequency " << sci(freq) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized CholeskyQR factorizations and experiments"};
  app.require_subcommand(1);

  GenOpts gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a test matrix");
  add_gen_options(gen_cmd, gen);
  gen_cmd->add_option("--seed", gen.seed, "Seed (dense family)");
  gen_cmd->add_option("--out", gen_out, "Matrix Market output")->required();

  SketchOpts fac;
  std::string fac_in, out_q, out_r;
  std::uint64_t fac_seed = 0;
  auto* fac_cmd = app.add_subcommand("factorize", "Factorize a matrix");
  fac_cmd->add_option("--in", fac_in, "Matrix Market input")->required();
  add_sketch_options(fac_cmd, fac);
  fac_cmd->add_option("--seed", fac_seed, "Sketch seed");
  fac_cmd->add_option("--out-q", out_q, "Write Q (Matrix Market)");
  fac_cmd->add_option("--out-r", out_r, "Write R (Matrix Market)");

  GenOpts bgen;
  SketchOpts bsk;
  std::string bench_in, bench_csv;
  std::size_t trials = 30, threads = 1;
  std::uint64_t bench_seed = 0;
  double threshold = 1e-12;
  auto* bench_cmd = app.add_subcommand("bench", "Run seeded trials");
  add_gen_options(bench_cmd, bgen);
  bench_cmd->add_option("--gen-seed", bgen.seed, "Generator seed (dense)");
  bench_cmd->add_option("--in", bench_in, "Matrix Market input instead");
  add_sketch_options(bench_cmd, bsk);
  bench_cmd->add_option("--trials", trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", bench_seed, "Master seed");
  bench_cmd->add_option("--threads", threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--threshold", threshold,
                        "Orthogonality threshold for success");
  bench_cmd->add_option("--csv", bench_csv, "CSV output");

  SketchOpts bnd;
  std::string bnd_in, bnd_json;
  auto* bnd_cmd = app.add_subcommand("bounds", "Evaluate error bounds");
  bnd_cmd->add_option("--in", bnd_in, "Matrix Market input")->required();
  add_sketch_options(bnd_cmd, bnd);
  double dense_fraction = 0.25;
  bnd_cmd->add_option("--dense-fraction", dense_fraction,
                      "Column nnz fraction that counts as dense");
  bnd_cmd->add_option("--json", bnd_json, "JSON output");

  std::string kind = "count";
  std::size_t vm = 20000, vs1 = 2800, vs2 = 500, vn = 20, vtrials = 100;
  double veps = 0.5;
  std::uint64_t vseed = 0;
  auto* ver_cmd =
      app.add_subcommand("verify-sketch", "Empirical embedding frequency");
  ver_cmd->add_option("--kind", kind, "count, gauss or multi")
      ->check(CLI::IsMember({"count", "gauss", "multi"}));
  ver_cmd->add_option("--m", vm, "Input rows");
  ver_cmd->add_option("--s1", vs1, "Output rows (count/gauss), first stage");
  ver_cmd->add_option("--s2", vs2, "Second-stage rows (multi)");
  ver_cmd->add_option("--n", vn, "Subspace dimension");
  ver_cmd->add_option("--eps", veps, "Distortion (per stage for multi)");
  ver_cmd->add_option("--trials", vtrials, "Random vectors")
      ->check(CLI::PositiveNumber);
  ver_cmd->add_option("--seed", vseed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, gen_out);
    if (*fac_cmd) return cmd_factorize(fac, fac_in, fac_seed, out_q, out_r);
    if (*bench_cmd)
      return cmd_bench(bgen, bsk, bench_in, trials, bench_seed, threads,
                       threshold, bench_csv);
    if (*bnd_cmd) return cmd_bounds(bnd, bnd_in, dense_fraction, bnd_json);
    if (*ver_cmd)
      return cmd_verify_sketch(kind, vm, vs1, vs2, vn, veps, vtrials, vseed);
  } catch (const rcqr::CholeskyBreakdown& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
