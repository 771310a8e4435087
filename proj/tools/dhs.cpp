#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "dhs/dhs.hpp"

using namespace dhs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitInternal = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

WeightedMultiGraph load_instance(const std::string& path) { return instance_from_string(slurp(path)); }

// Runs fn and maps library exceptions onto exit codes.
template <class Fn>
int guarded(Fn fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PreconditionError& e) {
    std::cerr << "rejected input: " << e.what() << '\n';
    return kExitParse;
  } catch (const SizeLimitError& e) {
    std::cerr << "rejected input: " << e.what() << '\n';
    return kExitParse;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

struct SolveOptions {
  std::string alg = "nine";
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  bool no_rows = false;
};

int run_solve(const SolveOptions& o) {
  const auto alg = parse_algorithm(o.alg);
  if (!alg) throw ParseError("unknown algorithm '" + o.alg + "'");
  const auto g = load_instance(o.in);
  auto c = solve(g, *alg);
  c.rows_included = !o.no_rows;
  const auto report = verify_certificate(g, c);
  const auto text = certificate_to_json(c, report, !o.no_rows, o.seed).dump(1) + "\n";
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ParseError("cannot write " + o.out);
    f << text;
  }
  if (!report.ok()) {
    for (const auto& name : report.failures()) std::cerr << name << "=false\n";
    throw InternalError("the solver produced a certificate that does not verify");
  }
  return kExitOk;
}

int run_check(const std::string& in, const std::string& cert) {
  const auto g = load_instance(in);
  const auto c = certificate_from_string(slurp(cert));
  const auto report = verify_certificate(g, c);
  for (const auto& ch : report.checks) std::cout << ch.name << '=' << (ch.ok ? "true" : "false") << '\n';
  return report.ok() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::string suite = "small-random";
  int n = 10;
  int count = 20;
  std::uint64_t seed = 1;
  std::string csv;
};

WeightedMultiGraph bench_instance(const BenchOptions& o, std::uint64_t seed) {
  InstanceSpec spec;
  spec.seed = seed;
  spec.min_cost = 1;
  spec.max_cost = 10;
  spec.n = o.n;
  if (o.suite == "small-random") {
    spec.kind = GeneratorKind::RandomMultigraph;
    spec.m = o.n + 2 + static_cast<int>(seed % static_cast<std::uint64_t>(std::max(1, o.n)));
    return generate(spec);
  }
  if (o.suite == "min-degree3") {
    spec.kind = GeneratorKind::RandomSimpleMinDegree3;
    return generate(spec);
  }
  if (o.suite == "cacti") {
    spec.kind = GeneratorKind::RandomCactusForest;
    return generate(spec);
  }
  if (o.suite == "girth6") {
    // A girth-6 cubic graph with a few edges subdivided.
    static const char* bases[] = {"heawood", "mobius-kantor", "tutte-coxeter"};
    spec.kind = GeneratorKind::Named;
    spec.name = bases[seed % 3];
    auto g = generate(spec);
    std::mt19937_64 rng(seed);
    const int splits = static_cast<int>(rng() % 4);
    for (int i = 0; i < splits; ++i) {
      const auto edges = g.edges();
      g = subdivide_edge(g, edges[rng() % edges.size()], 1 + static_cast<int>(rng() % 2),
                         Rational(1 + static_cast<long>(rng() % 10)));
    }
    return g;
  }
  throw PreconditionError("unknown suite '" + o.suite + "'");
}

std::string fmt_ratio(const Rational& num, const Rational& den) {
  if (den == 0) return num == 0 ? "1" : "";
  std::ostringstream s;
  s << std::setprecision(6) << Rational(num / den).get_d();
  return s.str();
}

int run_bench(const BenchOptions& o) {
  if (o.count < 0 || o.n < 0) throw PreconditionError("count and n must be non-negative");
  std::ofstream file;
  if (!o.csv.empty() && o.csv != "-") {
    file.open(o.csv, std::ios::binary);
    if (!file) throw ParseError("cannot write " + o.csv);
  }
  std::ostream& out = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  out << "seed,n,m,alg,cost,dual,opt,ratio_vs_dual,ratio_vs_opt,rows,runtime_ms\n";
  std::size_t extended = 0, failures = 0;
  for (int i = 0; i < o.count; ++i) {
    const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
    const auto g = bench_instance(o, seed);
    const bool small = g.num_vertices() <= 12;
    std::optional<Rational> opt, opt_size;
    if (small) {
      opt = exact_min_hitting_set(g).cost;
      auto unit = g;
      for (VertexId v : unit.vertices()) unit.set_cost(v, 1);
      opt_size = exact_min_hitting_set(unit).cost;
    }
    std::vector<Algorithm> algs = {Algorithm::Greedy, Algorithm::LogN, Algorithm::Nine};
    if (small) algs.push_back(Algorithm::Exact);
    for (Algorithm a : algs) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto c = solve(g, a);
      const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      if (!verify_certificate(g, c).ok()) ++failures;
      extended += c.stats.extended_rows;
      const auto& ref = a == Algorithm::Greedy ? opt_size : opt;
      out << seed << ',' << g.num_vertices() << ',' << g.num_edges() << ',' << to_string(a) << ','
          << to_string(c.primal) << ',' << (a == Algorithm::Exact ? "" : to_string(c.dual)) << ','
          << (ref ? to_string(*ref) : "") << ',' << (a == Algorithm::Exact ? "" : fmt_ratio(c.primal, c.dual))
          << ',' << (ref ? fmt_ratio(c.primal, *ref) : "") << ',' << c.rows.size() << ',' << std::fixed
          << std::setprecision(3) << ms << std::defaultfloat << '\n';
    }
  }
  std::cerr << "instances=" << o.count << " sparsity_rows=" << extended << " failed_certificates=" << failures
            << '\n';
  return failures == 0 ? kExitOk : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diamond hitting set solver"};
  app.require_subcommand(1);

  SolveOptions so;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and write a certificate");
  solve_cmd->add_option("--alg", so.alg, "greedy, logn, nine or exact")
      ->check(CLI::IsMember({"greedy", "logn", "nine", "exact"}));
  solve_cmd->add_option("--in", so.in, "Instance file")->required();
  solve_cmd->add_option("--out", so.out, "Certificate file (default stdout)");
  solve_cmd->add_option("--seed", so.seed, "Recorded in the certificate");
  solve_cmd->add_flag("--no-rows", so.no_rows, "Omit dual rows");

  std::string check_in, check_cert;
  auto* check_cmd = app.add_subcommand("check", "Re-verify a certificate against an instance");
  check_cmd->add_option("--in", check_in, "Instance file")->required();
  check_cmd->add_option("--cert", check_cert, "Certificate file")->required();

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "Run a generated suite and emit CSV");
  bench_cmd->add_option("--suite", bo.suite, "small-random, min-degree3, cacti or girth6");
  bench_cmd->add_option("--n", bo.n, "Vertices per instance");
  bench_cmd->add_option("--count", bo.count, "Number of instances");
  bench_cmd->add_option("--seed", bo.seed, "First seed");
  bench_cmd->add_option("--csv", bo.csv, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }
  if (*solve_cmd) return guarded([&] { return run_solve(so); });
  if (*check_cmd) return guarded([&] { return run_check(check_in, check_cert); });
  return guarded([&] { return run_bench(bo); });
}
