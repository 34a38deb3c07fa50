#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include "CLI11.hpp"
#include "mmsalloc/bounds.hpp"
#include "mmsalloc/error.hpp"
#include "mmsalloc/json_io.hpp"
#include "mmsalloc/solver_chores.hpp"
#include "mmsalloc/solver_goods.hpp"

namespace fs = std::filesystem;
using namespace mmsalloc;

namespace {

constexpr int kSolved = 0, kError = 1, kUnresolved = 2;

struct GenArgs {
  std::string kind = "goods";
  int n = 3, m = 6;
  long long max_value = 20;
  uint64_t seed = 1;
  int count = 1;
  std::string out_dir = ".";
};

struct SolveArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string out_dir;
  std::string trace_out;
  std::string oracle = "bnb";
  uint64_t oracle_cap = kDefaultOracleCap;
  unsigned jobs = 1;
  std::string alpha_goods, alpha_chores;
};

struct VerifyArgs {
  std::string instance, result, oracle = "bnb";
  uint64_t oracle_cap = kDefaultOracleCap;
  bool skip_mu = false;
};

struct BoundArgs {
  int c = 0;
  std::string kind = "goods";
  std::string alpha_goods, alpha_chores;
};

struct OrderArgs {
  std::string input, out;
};

BoundParams bound_params(const std::string& goods, const std::string& chores) {
  BoundParams p;
  if (!goods.empty()) p.alpha_goods = Rational::parse(goods);
  if (!chores.empty()) p.alpha_chores = Rational::parse(chores);
  return p;
}

int run_gen(const GenArgs& a) {
  if (a.n < 1 || a.m < 0 || a.count < 1 || a.max_value < 1) {
    std::cerr << "gen: need n >= 1, m >= 0, count >= 1, max-value >= 1\n";
    return kError;
  }
  const ItemKind kind = parse_item_kind(a.kind);
  fs::create_directories(a.out_dir);
  std::mt19937_64 rng(a.seed);
  std::uniform_int_distribution<long long> dist(0, a.max_value);
  const int width = static_cast<int>(std::to_string(a.count).size());
  for (int k = 1; k <= a.count; ++k) {
    std::vector<std::vector<Rational>> rows(a.n);
    for (auto& row : rows)
      for (int j = 0; j < a.m; ++j) {
        long long v = dist(rng);
        row.emplace_back(kind == ItemKind::chores ? -v : v);
      }
    std::string id = std::to_string(k);
    id.insert(0, width - id.size(), '0');
    write_json_file(fs::path(a.out_dir) / ("instance_" + id + ".json"), to_json(make_instance(kind, std::move(rows))));
  }
  return kSolved;
}

SolveOutcome solve_any(const Instance& inst, const SolverOptions& opts) {
  return inst.kind() == ItemKind::goods ? solve(inst, opts) : solve_chores(inst, opts);
}

int run_solve(const SolveArgs& a) {
  SolverOptions opts;
  opts.oracle.method = parse_oracle_method(a.oracle);
  opts.oracle.cap = a.oracle_cap;
  opts.search_cap = a.oracle_cap;
  opts.bounds = bound_params(a.alpha_goods, a.alpha_chores);

  std::vector<fs::path> files;
  for (const std::string& in : a.inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in))
        if (e.path().extension() == ".json") found.push_back(e.path());
      std::ranges::sort(found);
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(in);
    }
  }
  if (files.empty()) {
    std::cerr << "solve: no input files\n";
    return kError;
  }
  const bool batch = files.size() > 1 || !a.out_dir.empty();
  if (!a.out_dir.empty()) fs::create_directories(a.out_dir);

  std::vector<int> codes(files.size(), kError);
  std::mutex io;
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k = next++; k < files.size(); k = next++) {
      std::string line;
      try {
        Instance inst = instance_from_json(read_json_file(files[k]));
        SolveOutcome out = solve_any(inst, opts);
        codes[k] = out.status == SolveStatus::solved ? kSolved : kUnresolved;
        Json j = to_json(out);
        if (batch) {
          fs::path dir = a.out_dir.empty() ? files[k].parent_path() : fs::path(a.out_dir);
          write_json_file(dir / (files[k].stem().string() + ".result.json"), j);
        } else {
          if (!a.trace_out.empty() && out.trace) write_json_file(a.trace_out, to_json(*out.trace));
          if (a.out.empty()) {
            std::lock_guard lock(io);
            std::cout << j.dump(2) << '\n';
          } else {
            write_json_file(a.out, j);
          }
        }
        line = files[k].string() + ": " + to_string(out.status) + " (" + out.diagnostic + ")";
      } catch (const std::exception& e) {
        line = files[k].string() + ": error: " + e.what();
      }
      std::lock_guard lock(io);
      (codes[k] == kError ? std::cerr : std::clog) << line << '\n';
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  if (std::ranges::count(codes, kError)) return kError;
  if (std::ranges::count(codes, kUnresolved)) return kUnresolved;
  return kSolved;
}

int run_verify(const VerifyArgs& a) {
  OracleOptions oracle{parse_oracle_method(a.oracle), a.oracle_cap};
  const Instance inst = instance_from_json(read_json_file(a.instance));
  const Json result = read_json_file(a.result);
  bool ok = true;

  std::optional<ReductionTrace> trace;
  if (result.contains("trace")) trace = trace_from_json(result.at("trace"));
  else if (result.contains("steps")) trace = trace_from_json(result);
  std::optional<Allocation> alloc;
  if (result.contains("allocation")) alloc = allocation_from_json(result.at("allocation"));
  else if (result.contains("bundles")) alloc = allocation_from_json(result);
  if (!trace && !alloc) throw MmsError(ErrorCode::parse_error, "result holds neither an allocation nor a trace");

  if (trace) {
    const OrderedInstance ordered = to_ordered(inst);
    ReplayReport rep = replay_trace(ordered.instance, *trace, !a.skip_mu, oracle);
    std::cout << "trace partition: " << (rep.partition_ok ? "ok" : "FAIL " + rep.error) << '\n';
    ok = ok && rep.partition_ok;
    for (size_t s = 0; s < rep.steps.size(); ++s) {
      const ReductionStep& st = trace->steps[s];
      std::cout << "step " << s + 1 << " " << to_string(st.rule) << (st.branch.empty() ? "" : "/" + st.branch) << ": "
                << (rep.steps[s].valid ? "valid" : "INVALID " + rep.steps[s].reason) << '\n';
      ok = ok && rep.steps[s].valid;
    }
    if (rep.partition_ok && !alloc) alloc = lift_allocation(ordered, rep.allocation, inst);
  }
  if (alloc) {
    if (static_cast<int>(alloc->bundles.size()) != inst.n() || !alloc->is_partition_of(inst.m())) {
      std::cout << "allocation: FAIL not a partition among the agents\n";
      return kUnresolved;
    }
    if (a.skip_mu) {
      for (AgentId i = 1; i <= inst.n(); ++i)
        std::cout << "agent " << i << ": value " << bundle_value(inst, i, alloc->bundles[i - 1]).to_string() << '\n';
    } else {
      Certificate cert = certify(inst, *alloc, oracle);
      for (AgentId i = 1; i <= inst.n(); ++i) {
        const bool good = cert.values[i - 1] >= cert.mu[i - 1];
        std::cout << "agent " << i << ": value " << cert.values[i - 1].to_string() << " share "
                  << cert.mu[i - 1].to_string() << (good ? " ok" : " FAIL") << '\n';
      }
      ok = ok && cert.ok;
    }
  }
  std::cout << (ok ? "verified" : "verification failed") << '\n';
  return ok ? kSolved : kUnresolved;
}

int run_bound(const BoundArgs& a) {
  const BoundParams p = bound_params(a.alpha_goods, a.alpha_chores);
  const ItemKind kind = parse_item_kind(a.kind);
  const BigInt nc = kind == ItemKind::goods ? n_c_goods(a.c, p) : n_c_chores(a.c, p);
  std::cout << "kind " << to_string(kind) << " c " << a.c << " n_c " << nc.str() << '\n';
  const int lowest = kind == ItemKind::goods ? 7 : 6;
  if (a.c >= lowest) {
    RequiredAgents r = kind == ItemKind::goods ? required_agents_goods(a.c, p) : required_agents_chores(a.c, p);
    std::cout << "required agents " << r.value.str() << " (exact " << r.exact.to_string() << ") "
              << (r.within_bound ? "within" : "EXCEEDS") << " n_c\n";
  }
  return kSolved;
}

int run_order(const OrderArgs& a) {
  const OrderedInstance o = to_ordered(instance_from_json(read_json_file(a.input)));
  Json j = to_json(o.instance);
  j["source_ranks"] = o.source_ranks;
  if (a.out.empty())
    std::cout << j.dump(2) << '\n';
  else
    write_json_file(a.out, j);
  return kSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximin-share allocations for goods and chores"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate random integer instances");
  g->add_option("--kind", gen.kind)->check(CLI::IsMember({"goods", "chores"}));
  g->add_option("--n", gen.n)->required();
  g->add_option("--m", gen.m)->required();
  g->add_option("--max-value", gen.max_value);
  g->add_option("--seed", gen.seed);
  g->add_option("--count", gen.count);
  g->add_option("--out-dir", gen.out_dir);

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Solve instance files");
  s->add_option("--input", sol.inputs, "instance file or directory")->required();
  s->add_option("--out", sol.out, "outcome file for a single input (default stdout)");
  s->add_option("--out-dir", sol.out_dir, "directory for <name>.result.json files");
  s->add_option("--trace-out", sol.trace_out);
  s->add_option("--oracle", sol.oracle)->check(CLI::IsMember({"exhaustive", "bnb", "branch_and_bound"}));
  s->add_option("--oracle-cap", sol.oracle_cap);
  s->add_option("--jobs", sol.jobs);
  s->add_option("--alpha-goods", sol.alpha_goods);
  s->add_option("--alpha-chores", sol.alpha_chores);

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Check an allocation or a trace");
  v->add_option("--instance", ver.instance)->required();
  v->add_option("--result", ver.result)->required();
  v->add_flag("--skip-mu", ver.skip_mu);
  v->add_option("--oracle", ver.oracle)->check(CLI::IsMember({"exhaustive", "bnb", "branch_and_bound"}));
  v->add_option("--oracle-cap", ver.oracle_cap);

  BoundArgs bnd;
  auto* b = app.add_subcommand("bound", "Print the agent threshold for c extra items");
  b->add_option("--c", bnd.c)->required();
  b->add_option("--kind", bnd.kind)->check(CLI::IsMember({"goods", "chores"}));
  b->add_option("--alpha-goods", bnd.alpha_goods);
  b->add_option("--alpha-chores", bnd.alpha_chores);

  OrderArgs ord;
  auto* o = app.add_subcommand("order", "Write the ordered view of an instance");
  o->add_option("--input", ord.input)->required();
  o->add_option("--out", ord.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }
  try {
    if (g->parsed()) return run_gen(gen);
    if (s->parsed()) return run_solve(sol);
    if (v->parsed()) return run_verify(ver);
    if (b->parsed()) return run_bound(bnd);
    if (o->parsed()) return run_order(ord);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kError;
}
