// staircode: command-line front end.
//
// Exit status: 0 success, 1 input or usage error, 2 internal invariant
// violation, 3 oracle mismatch.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "staircode/betti.hpp"
#include "staircode/datasets.hpp"
#include "staircode/io.hpp"
#include "staircode/pipeline.hpp"
#include "staircode/query.hpp"
#include "staircode/server.hpp"
#include "staircode/service.hpp"
#include "staircode/verify.hpp"

namespace {

using namespace staircode;
using io::Json;

constexpr int kExitParse = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitMismatch = 3;

struct DatasetArgs {
  std::string path;
  std::string dist;
  std::string order;
};

void add_dataset_args(CLI::App* cmd, DatasetArgs& args) {
  cmd->add_option("dataset", args.path, "points CSV, id/f CSV (with --dist) or JSON dataset")->required();
  cmd->add_option("--dist", args.dist, "distance matrix CSV");
  cmd->add_option("--order", args.order, "file listing point ids in a filter-compatible order");
}

AugmentedMetricSpace load(const DatasetArgs& args) {
  if (args.dist.empty()) return io::load_dataset(args.path);
  return io::load_dataset(args.path, std::filesystem::path(args.dist));
}

std::vector<PointIndex> order_for(const DatasetArgs& args, const AugmentedMetricSpace& space) {
  if (!args.order.empty()) return io::parse_order(io::read_file(args.order), space);
  const auto order = default_point_order(space.filter_values());
  return {order.sequence().begin(), order.sequence().end()};
}

Staircode load_staircode(const std::string& path) {
  try {
    return io::staircode_from_json(Json::parse(io::read_file(path)));
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void emit(const Json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    io::write_file(out, text);
  }
}

std::string grade_text(const Grade& g) {
  std::ostringstream s;
  s << '(' << g.sigma << ',' << g.eps << ')';
  return s.str();
}

int run_compute(const DatasetArgs& args, const std::string& mode_text, const std::string& out) {
  const auto space = load(args);
  Mode mode = space.has_coordinates() ? Mode::kEuclidean : Mode::kGeneric;
  if (mode_text != "auto") mode = mode_from_string(mode_text);
  const Staircode code = compute_staircode_ordered(space, order_for(args, space), mode);
  emit(io::staircode_to_json(code), out);
  return 0;
}

int run_betti(const std::string& path, bool as_json) {
  const Staircode code = load_staircode(path);
  const GradedBetti betti = graded_betti(code);
  if (as_json) {
    emit(io::betti_to_json(betti), "");
    return 0;
  }
  for (int j = 0; j < 3; ++j) {
    std::cout << 'b' << j << ':';
    for (const auto& [grade, count] : to_real(betti.beta[j])) {
      std::cout << ' ' << grade_text(grade);
      if (count != 1) std::cout << 'x' << count;
    }
    std::cout << '\n';
  }
  if (betti.tie_broken) std::cout << "note: ties were broken; real grades may carry multiplicities\n";
  return 0;
}

int run_dim(const std::string& path, const std::string& grade_text_arg) {
  const Staircode code = load_staircode(path);
  const Grade g = io::parse_grade(grade_text_arg);
  if (g.eps < 0.0) throw InvalidInput("eps must be nonnegative");
  const auto by_count = dimension_function(code, g);
  const auto by_betti = dimension_function(graded_betti(code), g);
  if (by_count != by_betti) {
    throw InvariantViolation("dimension routes disagree: " + std::to_string(by_count) + " vs " +
                             std::to_string(by_betti));
  }
  std::cout << by_count << '\n';
  return 0;
}

int run_query(const std::string& path, const std::string& line_text, bool treegram, bool verbose) {
  const Staircode code = load_staircode(path);
  const Line line = io::parse_line(line_text);
  Json out{{"line", io::line_to_json(line)}};
  if (treegram) {
    out["treegram"] = io::treegram_to_json(query_treegram(code, line), code);
  } else {
    const FiberedQueryIndex index(code);
    const auto result = query_barcode_verbose(index, line);
    out["bars"] = io::bars_to_json(result.bars, code);
    if (verbose) {
      Json empty = Json::array();
      for (PointIndex x : result.empty_owners) empty.push_back(code.id(x));
      out["empty"] = std::move(empty);
    }
  }
  emit(out, "");
  return 0;
}

int run_check(const DatasetArgs& args) {
  const auto space = load(args);
  const auto seq = order_for(args, space);
  const PointOrder order(seq);
  const ConquerorCheck conq = check_constant_conqueror(space, order);
  const Staircode code = compute_staircode_ordered(space, seq);
  const DecomposabilityReport test = decomposability_necessary_test(code);

  Json conquerors = Json::object();
  for (PointIndex x = 0; x < space.size(); ++x) {
    conquerors[space.id(x)] = conq.conqueror[x] ? Json(space.id(*conq.conqueror[x])) : Json(nullptr);
  }
  Json mismatches = Json::array();
  for (const RankGrade& r : test.mismatches) mismatches.push_back({r.sigma_rank, r.eps_rank});
  Json out{{"ultrametric", check_ultrametric(space)},
           {"constant_conqueror",
            {{"holds", conq.constant},
             {"conquerors", std::move(conquerors)},
             {"witness", conq.witness ? Json(space.id(*conq.witness)) : Json(nullptr)},
             {"witness_sigma", conq.witness_sigma ? Json(*conq.witness_sigma) : Json(nullptr)}}},
           {"necessary_test", {{"verdict", to_string(test.verdict)}, {"mismatched_rank_grades", std::move(mismatches)}}}};
  emit(out, "");
  return 0;
}

int run_oracle_verify(const DatasetArgs& args, std::size_t lines, std::uint64_t seed) {
  const auto space = load(args);
  if (space.size() > 64) throw InvalidInput("oracle verification is limited to 64 points");
  oracle::VerifyOptions options;
  options.lines = lines;
  options.seed = seed;
  const auto report = oracle::verify_dataset(space, order_for(args, space), options);
  for (const auto& m : report.mismatches) std::cout << "MISMATCH " << m << '\n';
  std::cout << report.checks << " checks, " << report.mismatches.size() << " mismatches\n";
  return report.ok() ? 0 : kExitMismatch;
}

int run_bench(std::size_t n, std::size_t dim, std::uint64_t seed, std::size_t queries, const std::string& mode_text) {
  if (n == 0 || dim == 0) throw InvalidInput("--n and --dim must be positive");
  std::mt19937_64 rng(seed);
  const auto space = datasets::random_euclidean(n, dim, rng);
  const Mode mode = mode_from_string(mode_text);
  using clock = std::chrono::steady_clock;
  const auto seconds = [](clock::duration d) { return std::chrono::duration<double>(d).count(); };

  const auto t0 = clock::now();
  const Staircode code = compute_staircode(space, mode);
  const auto t1 = clock::now();
  const FiberedQueryIndex index(code);
  const auto t2 = clock::now();
  double worst = 0.0;
  double total = 0.0;
  std::size_t bars = 0;
  for (std::size_t q = 0; q < queries; ++q) {
    const Line line = datasets::random_line(space, rng);
    const auto a = clock::now();
    bars += query_barcode(index, line).size();
    const double dt = seconds(clock::now() - a);
    worst = std::max(worst, dt);
    total += dt;
  }
  std::size_t steps = 0;
  for (const auto& e : code.entries()) steps += e.base.steps().size();
  emit(Json{{"n", n},
            {"dim", dim},
            {"mode", to_string(mode)},
            {"compute_s", seconds(t1 - t0)},
            {"index_s", seconds(t2 - t1)},
            {"queries", queries},
            {"query_mean_ms", queries ? 1e3 * total / static_cast<double>(queries) : 0.0},
            {"query_max_ms", 1e3 * worst},
            {"bars_reported", bars},
            {"total_steps", steps}},
       "");
  return 0;
}

int run_serve(const std::string& path, int port, const std::string& host, const std::string& static_dir) {
  QueryService service(load_staircode(path));
  HttpServer server(service, static_dir.empty() ? std::nullopt : std::optional<std::string>(static_dir));
  const int bound = server.bind(host, port);
  if (bound < 0) throw InvalidInput("cannot bind " + host + ":" + std::to_string(port));
  std::cerr << "serving " << service.staircode().size() << " staircases on http://" << host << ':' << bound << '\n';
  return server.listen() ? 0 : kExitParse;
}

int default_port() {
  if (const char* env = std::getenv("STAIRCODE_PORT")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw InvalidInput(std::string("STAIRCODE_PORT is not a port number: ") + env);
    }
  }
  return 8080;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elder-rule staircodes of augmented metric spaces"};
  app.require_subcommand(1);

  DatasetArgs compute_args;
  std::string mode = "auto";
  std::string out;
  auto* compute = app.add_subcommand("compute", "compute the decorated staircode of a dataset");
  add_dataset_args(compute, compute_args);
  compute->add_option("--mode", mode, "generic, euclidean or auto")->check(CLI::IsMember({"auto", "generic", "euclidean"}));
  compute->add_option("-o,--output", out, "output JSON file (default stdout)");

  std::string doc;
  bool betti_json = false;
  auto* betti = app.add_subcommand("betti", "print graded Betti supports");
  betti->add_option("staircode", doc, "staircode JSON")->required();
  betti->add_flag("--json", betti_json, "print JSON");

  std::string grade;
  auto* dim = app.add_subcommand("dim", "number of components at a grade");
  dim->add_option("staircode", doc, "staircode JSON")->required();
  dim->add_option("--grade", grade, "sigma,eps")->required();

  std::string line;
  bool treegram = false;
  bool verbose = false;
  auto* query = app.add_subcommand("query", "fibered barcode or treegram along a line");
  query->add_option("staircode", doc, "staircode JSON")->required();
  query->add_option("--line", line, "s1,e1:s2,e2 (two anchors, positive slope)")->required();
  query->add_flag("--treegram", treegram, "report the fibered treegram instead of bars");
  query->add_flag("--verbose", verbose, "also list staircases the line misses");

  DatasetArgs check_args;
  auto* check = app.add_subcommand("check", "ultrametric, constant-conqueror and Betti consistency checks");
  add_dataset_args(check, check_args);

  DatasetArgs verify_args;
  std::size_t lines = 20;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("oracle-verify", "cross-check every result against brute force");
  add_dataset_args(verify, verify_args);
  verify->add_option("--lines", lines, "random lines to test");
  verify->add_option("--seed", seed, "random seed");

  std::size_t bench_n = 1000;
  std::size_t bench_dim = 2;
  std::size_t bench_queries = 100;
  std::string bench_mode = "euclidean";
  auto* bench = app.add_subcommand("bench", "time the pipeline on random Euclidean points");
  bench->add_option("--n", bench_n, "number of points");
  bench->add_option("--dim", bench_dim, "dimension");
  bench->add_option("--seed", seed, "random seed");
  bench->add_option("--queries", bench_queries, "number of line queries");
  bench->add_option("--mode", bench_mode, "generic or euclidean")->check(CLI::IsMember({"generic", "euclidean"}));

  int port = -1;
  std::string host = "127.0.0.1";
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "HTTP query server");
  serve->add_option("staircode", doc, "staircode JSON")->required();
  serve->add_option("--port", port, "port (default $STAIRCODE_PORT or 8080)");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--static", static_dir, "directory of UI files to serve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*compute) return run_compute(compute_args, mode, out);
    if (*betti) return run_betti(doc, betti_json);
    if (*dim) return run_dim(doc, grade);
    if (*query) return run_query(doc, line, treegram, verbose);
    if (*check) return run_check(check_args);
    if (*verify) return run_oracle_verify(verify_args, lines, seed);
    if (*bench) return run_bench(bench_n, bench_dim, seed, bench_queries, bench_mode);
    if (*serve) return run_serve(doc, port >= 0 ? port : default_port(), host, static_dir);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return 0;
}
