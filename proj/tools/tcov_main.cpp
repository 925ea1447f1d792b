#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcov/bounds.hpp"
#include "tcov/fpt_mk.hpp"
#include "tcov/generators.hpp"
#include "tcov/io.hpp"
#include "tcov/kernel_mk.hpp"
#include "tcov/kernel_nk.hpp"
#include "tcov/oracle.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tcov::parse_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tcov::parse_error("cannot open file for writing: " + path);
  out << text;
}

tcov::SearchBudget env_budget() {
  tcov::SearchBudget b;
  if (const char* s = std::getenv("TCOV_BUDGET_NODES")) b.max_nodes = std::strtoull(s, nullptr, 10);
  return b;
}

std::vector<int> parse_csv_indices(const std::string& csv, int m) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int q = std::stoi(tok);
    if (q < 1 || q > m) throw tcov::contract_error("cover index " + tok + " out of range 1.." + std::to_string(m));
    out.push_back(q - 1);
  }
  tcov::detail::sort_unique(out);
  return out;
}

std::string join_one_based(const std::vector<int>& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i] + 1);
  }
  return s;
}

struct Report {
  bool json = false;
  nlohmann::json obj = nlohmann::json::object();
  std::ostringstream text;

  template <typename T>
  void field(const std::string& key, const std::string& line, const T& value) {
    obj[key] = value;
    text << line << '\n';
  }

  void flush() {
    if (json)
      std::cout << obj.dump(2) << '\n';
    else
      std::cout << text.str();
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tcov: exact and parameterized solvers for the test cover problem"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "machine-readable output");

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  int grid_r = 0;
  std::vector<int> rnd;
  std::string from_matching, from_p3, gen_out;
  auto* og = gen->add_option("--grid", grid_r, "tight r x r grid");
  std::vector<int> multi_args;
  auto* om = gen->add_option("--grid-multi", multi_args, "R COPIES: glued grids")->expected(2);
  auto* orr = gen->add_option("--random", rnd, "N M R SEED")->expected(4);
  auto* ofm = gen->add_option("--from-matching", from_matching, "reduce an r-partite matching file");
  auto* ofp = gen->add_option("--from-p3", from_p3, "reduce a P3-packing graph file");
  gen->add_option("-o,--output", gen_out, "output file (default stdout)");

  // bound
  auto* bound = app.add_subcommand("bound", "print lower and upper bounds");
  std::string bound_file;
  bound->add_option("file", bound_file, "instance file")->required();

  // solve
  auto* solve = app.add_subcommand("solve", "decide or compute a minimum test cover");
  std::string solve_file, solve_mode = "exact";
  int solve_k = 0;
  solve->add_option("file", solve_file, "instance file")->required();
  solve->add_option("--mode", solve_mode, "exact|mk|nk|approx")->check(CLI::IsMember({"exact", "mk", "nk", "approx"}));
  auto* sk = solve->add_option("-k", solve_k, "parameter k");

  // kernel
  auto* kernel = app.add_subcommand("kernel", "kernelize an instance");
  std::string kernel_file, kernel_mode = "mk", kernel_out;
  int kernel_k = 0;
  bool kernel_trace = false;
  kernel->add_option("file", kernel_file, "instance file")->required();
  kernel->add_option("--mode", kernel_mode, "mk|nk")->check(CLI::IsMember({"mk", "nk"}));
  kernel->add_option("-k", kernel_k, "parameter k")->required();
  kernel->add_option("-o,--output", kernel_out, "kernel output file");
  kernel->add_flag("--trace", kernel_trace, "print the rule applications");

  // verify
  auto* verify = app.add_subcommand("verify", "check a candidate cover");
  std::string verify_file, verify_cover;
  verify->add_option("file", verify_file, "instance file")->required();
  verify->add_option("--cover", verify_cover, "comma-separated 1-indexed edge list")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exhaustive reference minimum");
  std::string oracle_file;
  int oracle_cap = 22;
  oracle->add_option("file", oracle_file, "instance file")->required();
  oracle->add_option("--cap", oracle_cap, "maximum edge count for brute force");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  Report rep;
  rep.json = json;
  try {
    if (*gen) {
      tcov::Hypergraph H(1, {});
      tcov::EdgeSet black;
      int target = -1;
      if (*og) {
        H = tcov::gen_grid(grid_r);
      } else if (*om) {
        H = tcov::gen_grid_multi(multi_args.at(0), multi_args.at(1));
      } else if (*orr) {
        H = tcov::gen_random(rnd[0], rnd[1], rnd[2], static_cast<std::uint64_t>(rnd[3]));
      } else if (*ofm) {
        auto [HH, t] = tcov::reduce_from_matching(tcov::parse_rpartite(read_file(from_matching)));
        H = std::move(HH);
        target = t;
      } else if (*ofp) {
        auto [HH, t] = tcov::reduce_from_p3(tcov::parse_simple_graph(read_file(from_p3)));
        H = std::move(HH);
        target = t;
      } else {
        std::cerr << "gen: choose one of --grid, --grid-multi, --random, --from-matching, --from-p3\n";
        return kExitError;
      }
      std::string text;
      if (target >= 0) text += "c target " + std::to_string(target) + "\n";
      text += tcov::serialize_instance(H);
      write_output(gen_out, text);
      return kExitYes;
    }

    if (*bound) {
      tcov::Hypergraph H = tcov::parse_instance(read_file(bound_file)).H;
      int r = std::max(H.r(), 2);
      int lbr = tcov::lower_bound_r(H.n, r);
      int lbl = tcov::lower_bound_log(H.n);
      rep.field("lb_r", "lb_r " + std::to_string(lbr), lbr);
      rep.field("lb_log", "lb_log " + std::to_string(lbl), lbl);
      if (tcov::is_test_cover(H)) {
        int ub = static_cast<int>(tcov::bondy_prune(H).size());
        rep.field("ub_bondy", "ub_bondy " + std::to_string(ub), ub);
      } else {
        rep.field("ub_bondy", "ub_bondy none (not a test cover)", nullptr);
      }
      rep.flush();
      return kExitYes;
    }

    if (*solve) {
      tcov::Hypergraph H = tcov::parse_instance(read_file(solve_file)).H;
      tcov::SearchBudget budget = env_budget();
      if (solve_mode == "exact") {
        tcov::CoverResult res = tcov::exact_min(H, budget);
        rep.field("min", "min " + std::to_string(res.size), res.size);
        rep.field("cover", "cover " + join_one_based(res.witness), join_one_based(res.witness));
        rep.flush();
        return kExitYes;
      }
      if (solve_mode == "approx") {
        tcov::EdgeSet F = tcov::greedy_cover(H);
        rep.field("size", "size " + std::to_string(F.size()), static_cast<int>(F.size()));
        rep.field("cover", "cover " + join_one_based(F), join_one_based(F));
        rep.flush();
        return kExitYes;
      }
      if (!*sk) {
        std::cerr << "solve: --mode " << solve_mode << " requires -k\n";
        return kExitError;
      }
      bool yes = false;
      std::string cover;
      if (solve_mode == "mk") {
        tcov::MkResult res = tcov::solve_mk(H, solve_k, budget);
        yes = res.yes;
        if (res.witness) cover = join_one_based(*res.witness);
      } else {
        tcov::NkResult res = tcov::solve_nk(H, solve_k, budget);
        yes = res.yes;
        if (res.witness) cover = join_one_based(res.witness->T);
      }
      rep.field("s", std::string("s ") + (yes ? "yes" : "no"), yes ? "yes" : "no");
      if (yes && !cover.empty()) rep.field("cover", "cover " + cover, cover);
      rep.flush();
      return yes ? kExitYes : kExitNo;
    }

    if (*kernel) {
      tcov::SubsetInstance I = tcov::parse_instance(read_file(kernel_file));
      if (kernel_mode == "mk") {
        I.k = kernel_k;
        tcov::MkKernelResult res = tcov::kernelize_mk(I);
        if (kernel_trace)
          for (const auto& entry : res.trace.entries)
            rep.text << "c trace " << entry.rule << '\n';
        if (json) {
          nlohmann::json tr = nlohmann::json::array();
          for (const auto& entry : res.trace.entries) tr.push_back(entry.rule);
          rep.obj["trace"] = tr;
        }
        if (res.verdict == tcov::MkVerdict::Yes) {
          rep.field("s", "s yes", "yes");
          rep.flush();
          return kExitYes;
        }
        if (res.verdict == tcov::MkVerdict::No) {
          rep.field("s", "s no", "no");
          rep.flush();
          return kExitNo;
        }
        rep.field("s", "s reduced", "reduced");
        rep.field("k", "k " + std::to_string(res.kernel->k), res.kernel->k);
        rep.flush();
        if (!kernel_out.empty()) write_output(kernel_out, tcov::serialize_instance(*res.kernel));
        return kExitYes;
      }
      tcov::NkKernelResult res = tcov::kernelize_nk(I.H, kernel_k);
      if (res.verdict == tcov::NkVerdict::Yes) {
        rep.field("s", "s yes", "yes");
        rep.flush();
        return kExitYes;
      }
      rep.field("s", "s reduced", "reduced");
      rep.field("k", "k " + std::to_string(res.kernel->second), res.kernel->second);
      rep.flush();
      if (!kernel_out.empty()) write_output(kernel_out, tcov::serialize_instance(res.kernel->first));
      return kExitYes;
    }

    if (*verify) {
      tcov::Hypergraph H = tcov::parse_instance(read_file(verify_file)).H;
      std::vector<int> T = parse_csv_indices(verify_cover, H.m());
      bool ok = tcov::is_test_cover(H, T);
      if (ok) {
        rep.field("valid", "valid test cover, size " + std::to_string(T.size()), true);
        rep.obj["size"] = static_cast<int>(T.size());
        rep.flush();
        return kExitYes;
      }
      rep.field("valid", "not a test cover", false);
      rep.flush();
      return kExitNo;
    }

    if (*oracle) {
      tcov::Hypergraph H = tcov::parse_instance(read_file(oracle_file)).H;
      tcov::CoverResult res = tcov::brute_force_min(H, oracle_cap);
      rep.field("min", "min " + std::to_string(res.size), res.size);
      rep.field("cover", "cover " + join_one_based(res.witness), join_one_based(res.witness));
      rep.flush();
      return kExitYes;
    }
  } catch (const std::exception& e) {
    if (json) {
      nlohmann::json err;
      err["error"] = e.what();
      std::cout << err.dump(2) << '\n';
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return kExitError;
  }
  return kExitError;
}
