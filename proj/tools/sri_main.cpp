// Command-line front end: generate | solve | enumerate | check | reduce |
// export-lp | bench. Exit codes: 0 optimal/success, 1 unsat/rejected,
// 2 timeout/budget, 3 input error.

#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sri/analysis.hpp"
#include "sri/criteria.hpp"
#include "sri/ipexport.hpp"
#include "sri/model.hpp"
#include "sri/oracle.hpp"
#include "sri/reductions.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOptimal = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitInputError = 3;

constexpr long long kDefaultTimeoutMs = 3'000'000;  // 3000 s per solve

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << text;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

ordered_json matching_json(const sri::Matching& m) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : m.pairs())
    arr.push_back(ordered_json::array({p.lo + 1, p.hi + 1}));
  return arr;
}

std::string matching_text(const sri::Matching& m) {
  std::string s;
  for (const auto& p : m.pairs()) {
    if (!s.empty()) s += ' ';
    s += '(' + std::to_string(p.lo + 1) + ',' + std::to_string(p.hi + 1) + ')';
  }
  return s.empty() ? "(empty)" : s;
}

std::string scope_name(sri::ProfileScope s) {
  return s == sri::ProfileScope::matched_set ? "matched-set" : "all-matched";
}

ordered_json result_json(const sri::CriterionResult& r) {
  ordered_json j;
  j["criterion"] = sri::criterion_name(r.criterion);
  j["status"] = sri::status_label(r.status);
  j["objective"] = r.objective ? ordered_json(*r.objective) : nullptr;
  j["matching"] = r.matching ? matching_json(*r.matching) : nullptr;
  j["profile"] = r.profile ? ordered_json(r.profile->counts) : nullptr;
  j["profile_scope"] =
      r.profile ? ordered_json(scope_name(r.profile->scope)) : nullptr;
  j["cost"] = r.summary ? ordered_json(r.summary->cost) : nullptr;
  j["regret"] = r.summary ? ordered_json(r.summary->regret) : nullptr;
  j["blocking"] = r.summary ? ordered_json(r.summary->blocking) : nullptr;
  j["nodes"] = r.stats.nodes;
  j["millis"] = r.stats.millis;
  return j;
}

std::string result_text(const sri::CriterionResult& r) {
  std::ostringstream out;
  out << "criterion: " << sri::criterion_name(r.criterion) << '\n';
  out << "status: " << sri::status_label(r.status) << '\n';
  out << "objective: ";
  if (r.objective)
    out << *r.objective << '\n';
  else
    out << "-\n";
  out << "matching: " << (r.matching ? matching_text(*r.matching) : "-")
      << '\n';
  out << "profile:";
  if (r.profile) {
    for (int c : r.profile->counts) out << ' ' << c;
    out << '\n' << "profile_scope: " << scope_name(r.profile->scope) << '\n';
  } else {
    out << " -\nprofile_scope: -\n";
  }
  if (r.summary) {
    out << "cost: " << r.summary->cost << '\n';
    out << "regret: " << r.summary->regret << '\n';
    out << "blocking: " << r.summary->blocking << '\n';
  } else {
    out << "cost: -\nregret: -\nblocking: -\n";
  }
  out << "nodes: " << r.stats.nodes << '\n';
  out << "millis: " << r.stats.millis << '\n';
  return out.str();
}

int status_exit_code(sri::CriterionStatus s) {
  switch (s) {
    case sri::CriterionStatus::optimal:
      return kExitOptimal;
    case sri::CriterionStatus::unsat:
      return kExitUnsat;
    case sri::CriterionStatus::budget_exceeded:
      return kExitTimeout;
  }
  return kExitInputError;
}

// ---------- solve ----------

struct SolveOpts {
  std::string instance_path;
  std::string criterion = "any-stable";
  long long timeout_ms = kDefaultTimeoutMs;
  std::string format = "json";
  std::string out;
  bool symmetrize = false;
};

int cmd_solve(const SolveOpts& o) {
  const sri::Instance inst =
      sri::parse_instance(read_file(o.instance_path), o.symmetrize);
  const auto crit = sri::parse_criterion(o.criterion);
  if (!crit) throw std::runtime_error("unknown criterion " + o.criterion);
  sri::SolverConfig cfg;
  cfg.time_limit_ms = o.timeout_ms;
  const sri::CriterionResult r = sri::solve_criterion(inst, *crit, cfg);
  if (o.format == "json")
    write_output(o.out, result_json(r).dump(2) + "\n");
  else
    write_output(o.out, result_text(r));
  return status_exit_code(r.status);
}

// ---------- enumerate ----------

struct EnumerateOpts {
  std::string instance_path;
  std::string format = "json";
  std::string out;
  bool symmetrize = false;
};

int cmd_enumerate(const EnumerateOpts& o) {
  const sri::Instance inst =
      sri::parse_instance(read_file(o.instance_path), o.symmetrize);
  const sri::StableSet set = sri::enumerate_stable(inst);
  if (o.format == "json") {
    ordered_json j;
    j["count"] = set.matchings.size();
    ordered_json arr = ordered_json::array();
    for (const auto& m : set.matchings) arr.push_back(matching_json(m));
    j["matchings"] = arr;
    write_output(o.out, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "count: " << set.matchings.size() << '\n';
    for (const auto& m : set.matchings) out << matching_text(m) << '\n';
    write_output(o.out, out.str());
  }
  return kExitOptimal;
}

// ---------- check ----------

struct CheckOpts {
  std::string instance_path;
  std::string matching_path;
  std::string criterion = "any-stable";
  bool assert_optimal = false;
  long long timeout_ms = kDefaultTimeoutMs;
  std::string format = "json";
  std::string out;
  bool symmetrize = false;
};

long long criterion_measure(sri::Criterion c, const sri::Profile& prof,
                            const sri::CostSummary& sum, sri::Rank max_len) {
  switch (c) {
    case sri::Criterion::any_stable:
      return 0;
    case sri::Criterion::egalitarian:
      return sum.cost;
    case sri::Criterion::fc_max:
    case sri::Criterion::rank_maximal:
      return prof.level(1);
    case sri::Criterion::generous:
      return prof.level(max_len);
    case sri::Criterion::min_regret:
      return sum.regret;
    case sri::Criterion::almost_stable:
      return sum.blocking;
  }
  return 0;
}

int cmd_check(const CheckOpts& o) {
  const sri::Instance inst =
      sri::parse_instance(read_file(o.instance_path), o.symmetrize);
  const sri::Matching m =
      sri::parse_matching(read_file(o.matching_path), inst);
  const auto crit = sri::parse_criterion(o.criterion);
  if (!crit) throw std::runtime_error("unknown criterion " + o.criterion);

  const sri::Profile prof =
      sri::profile(inst, m, sri::ProfileScope::all_matched);
  const sri::CostSummary sum = sri::cost_summary(inst, m);
  const bool stable = sum.blocking == 0;
  const long long measure =
      criterion_measure(*crit, prof, sum, inst.max_list_len());

  bool ok = *crit == sri::Criterion::almost_stable || stable;
  std::optional<long long> optimal_objective;
  if (o.assert_optimal && ok) {
    sri::SolverConfig cfg;
    cfg.time_limit_ms = o.timeout_ms;
    const sri::CriterionResult best = sri::solve_criterion(inst, *crit, cfg);
    if (best.status == sri::CriterionStatus::budget_exceeded)
      return kExitTimeout;
    if (best.status != sri::CriterionStatus::optimal) {
      ok = false;  // no stable matching at all, so the candidate cannot be one
    } else {
      optimal_objective = best.objective;
      // The lexicographic criteria compare whole profiles, not one scalar.
      if (*crit == sri::Criterion::rank_maximal)
        ok = sri::compare_rank_maximal(prof, *best.profile) == 0;
      else if (*crit == sri::Criterion::generous)
        ok = sri::compare_generous(prof, *best.profile) == 0;
      else
        ok = measure == *best.objective;
    }
  }

  if (o.format == "json") {
    ordered_json j;
    j["criterion"] = sri::criterion_name(*crit);
    j["ok"] = ok;
    j["stable"] = stable;
    j["blocking"] = sum.blocking;
    j["objective"] = measure;
    j["cost"] = sum.cost;
    j["regret"] = sum.regret;
    j["profile"] = ordered_json(prof.counts);
    j["optimal_objective"] =
        optimal_objective ? ordered_json(*optimal_objective) : nullptr;
    write_output(o.out, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "criterion: " << sri::criterion_name(*crit) << '\n'
        << "ok: " << (ok ? "yes" : "no") << '\n'
        << "stable: " << (stable ? "yes" : "no") << '\n'
        << "blocking: " << sum.blocking << '\n'
        << "objective: " << measure << '\n'
        << "cost: " << sum.cost << '\n'
        << "regret: " << sum.regret << '\n';
    if (optimal_objective) out << "optimal_objective: " << *optimal_objective << '\n';
    write_output(o.out, out.str());
  }
  return ok ? kExitOptimal : kExitUnsat;
}

// ---------- generate ----------

struct GenerateOpts {
  int size = 10;
  double completeness = 1.0;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_generate(const GenerateOpts& o) {
  sri::RandomSpec spec{o.size, o.completeness, o.seed};
  write_output(o.out, sri::serialize_instance(sri::generate_random(spec)));
  return kExitOptimal;
}

// ---------- reduce ----------

struct ReduceOpts {
  std::string graph_path;
  std::string variant = "fc";
  std::string out;
};

int cmd_reduce(const ReduceOpts& o) {
  const sri::SimpleGraph g = sri::parse_graph(read_file(o.graph_path));
  const auto variant = sri::parse_variant(o.variant);
  if (!variant) throw std::runtime_error("unknown variant " + o.variant);
  const sri::Instance inst = *variant == sri::GadgetVariant::independent_set
                                 ? sri::build_is_gadget(g)
                                 : sri::build_vc_gadget(g, *variant);
  write_output(o.out, sri::serialize_instance(inst));
  return kExitOptimal;
}

// ---------- export-lp ----------

struct ExportOpts {
  std::string instance_path;
  std::string objective = "none";
  int level = 1;
  std::string out;
  bool symmetrize = false;
};

int cmd_export_lp(const ExportOpts& o) {
  const sri::Instance inst =
      sri::parse_instance(read_file(o.instance_path), o.symmetrize);
  sri::IpObjectiveSpec spec;
  if (o.objective == "egalitarian")
    spec = sri::IpObjectiveSpec::egalitarian();
  else if (o.objective == "fc")
    spec = sri::IpObjectiveSpec::fc();
  else if (o.objective == "level")
    spec = sri::IpObjectiveSpec::level_count(o.level);
  else if (o.objective == "almost-stable")
    spec = sri::IpObjectiveSpec::almost_stable();
  else if (o.objective == "none")
    spec = sri::IpObjectiveSpec::none();
  else
    throw std::runtime_error("unknown objective " + o.objective);
  write_output(o.out, sri::export_lp(sri::build_ip(inst, spec)));
  return kExitOptimal;
}

// ---------- bench ----------

struct BenchOpts {
  std::string sizes = "20,40";
  std::string completeness = "0.5";
  int seeds = 5;
  std::string criteria;  // empty = all
  long long timeout_ms = kDefaultTimeoutMs;
  int jobs = 1;
  std::string out;
};

struct BenchCell {
  sri::Criterion criterion;
  std::string size_token;
  std::string comp_token;
  int n = 0;
  double completeness = 0.0;
  std::uint64_t seed = 0;
};

int cmd_bench(const BenchOpts& o) {
  std::vector<sri::Criterion> crits;
  if (o.criteria.empty()) {
    crits = sri::all_criteria();
  } else {
    for (const std::string& name : split_list(o.criteria)) {
      const auto c = sri::parse_criterion(name);
      if (!c) throw std::runtime_error("unknown criterion " + name);
      crits.push_back(*c);
    }
  }
  std::vector<BenchCell> cells;
  for (sri::Criterion c : crits)
    for (const std::string& st : split_list(o.sizes))
      for (const std::string& ct : split_list(o.completeness))
        for (int s = 1; s <= o.seeds; ++s) {
          BenchCell cell;
          cell.criterion = c;
          cell.size_token = st;
          cell.comp_token = ct;
          cell.n = std::stoi(st);
          cell.completeness = std::stod(ct);
          cell.seed = static_cast<std::uint64_t>(s);
          cells.push_back(cell);
        }

  std::vector<std::string> rows(cells.size());
  std::vector<sri::CriterionStatus> statuses(cells.size());
  std::vector<long long> times(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      const BenchCell& cell = cells[i];
      const sri::Instance inst = sri::generate_random(
          {cell.n, cell.completeness, cell.seed});
      sri::SolverConfig cfg;
      cfg.time_limit_ms = o.timeout_ms;
      const sri::CriterionResult r =
          sri::solve_criterion(inst, cell.criterion, cfg);
      std::ostringstream row;
      row << sri::criterion_name(cell.criterion) << ',' << cell.size_token
          << ',' << cell.comp_token << ',' << cell.seed << ',';
      if (r.status == sri::CriterionStatus::optimal && r.objective)
        row << *r.objective;
      row << ',' << r.stats.nodes << ',' << r.stats.millis << ','
          << sri::status_label(r.status);
      rows[i] = row.str();
      statuses[i] = r.status;
      times[i] = r.stats.millis;
    }
  };
  const int jobs = std::max(1, o.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::string csv = "criterion,n,completeness,seed,objective,nodes,millis,status\n";
  for (const std::string& row : rows) csv += row + "\n";
  write_output(o.out, csv);

  // Per-cell summary (mean millis over seeds; any timeout makes the cell TO).
  std::cerr << "cell means (criterion, n, completeness -> millis):\n";
  for (std::size_t i = 0; i < cells.size(); i += o.seeds) {
    bool timed_out = false;
    long long total = 0;
    for (int s = 0; s < o.seeds; ++s) {
      timed_out = timed_out ||
                  statuses[i + s] == sri::CriterionStatus::budget_exceeded;
      total += times[i + s];
    }
    std::cerr << "  " << sri::criterion_name(cells[i].criterion) << " n="
              << cells[i].size_token << " c=" << cells[i].comp_token << " ";
    if (timed_out)
      std::cerr << "TO\n";
    else
      std::cerr << (o.seeds > 0 ? total / o.seeds : 0) << "\n";
  }
  return kExitOptimal;
}

std::vector<std::string> criterion_names() {
  std::vector<std::string> names;
  for (sri::Criterion c : sri::all_criteria())
    names.push_back(sri::criterion_name(c));
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable-roommates toolkit (incomplete lists)"};
  app.require_subcommand(1);
  int exit_code = kExitOptimal;

  const auto crit_names = criterion_names();
  const std::vector<std::string> formats = {"json", "text"};
  const std::vector<std::string> variants = {"fc", "generous", "egalitarian",
                                             "independent-set"};
  const std::vector<std::string> objectives = {"egalitarian", "fc", "level",
                                               "almost-stable", "none"};

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "Solve one criterion");
  solve->add_option("instance", so.instance_path, "Instance file")->required();
  solve->add_option("--criterion", so.criterion, "Optimality criterion")
      ->check(CLI::IsMember(crit_names));
  solve->add_option("--timeout-ms", so.timeout_ms, "Per-solve budget");
  solve->add_option("--format", so.format)->check(CLI::IsMember(formats));
  solve->add_option("--out", so.out, "Output file (default stdout)");
  solve->add_flag("--symmetrize", so.symmetrize,
                  "Drop one-sided list entries instead of rejecting them");
  solve->callback([&] { exit_code = cmd_solve(so); });

  EnumerateOpts eo;
  auto* enumerate = app.add_subcommand("enumerate", "List stable matchings");
  enumerate->add_option("instance", eo.instance_path)->required();
  enumerate->add_option("--format", eo.format)->check(CLI::IsMember(formats));
  enumerate->add_option("--out", eo.out);
  enumerate->add_flag("--symmetrize", eo.symmetrize);
  enumerate->callback([&] { exit_code = cmd_enumerate(eo); });

  CheckOpts co;
  auto* check = app.add_subcommand("check", "Verify a matching file");
  check->add_option("instance", co.instance_path)->required();
  check->add_option("matching", co.matching_path)->required();
  check->add_option("--criterion", co.criterion)
      ->check(CLI::IsMember(crit_names));
  check->add_flag("--assert-optimal", co.assert_optimal,
                  "Also require the criterion optimum");
  check->add_option("--timeout-ms", co.timeout_ms);
  check->add_option("--format", co.format)->check(CLI::IsMember(formats));
  check->add_option("--out", co.out);
  check->add_flag("--symmetrize", co.symmetrize);
  check->callback([&] { exit_code = cmd_check(co); });

  GenerateOpts go;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--size", go.size)->check(CLI::PositiveNumber);
  generate->add_option("--completeness", go.completeness)
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", go.seed);
  generate->add_option("--out", go.out);
  generate->callback([&] { exit_code = cmd_generate(go); });

  ReduceOpts ro;
  auto* reduce = app.add_subcommand("reduce", "Build a gadget instance");
  reduce->add_option("graph", ro.graph_path, "Graph file: \"n m\" + edges")
      ->required();
  reduce->add_option("--variant", ro.variant)->check(CLI::IsMember(variants));
  reduce->add_option("--out", ro.out);
  reduce->callback([&] { exit_code = cmd_reduce(ro); });

  ExportOpts xo;
  auto* exportlp = app.add_subcommand("export-lp", "Write the IP as LP text");
  exportlp->add_option("instance", xo.instance_path)->required();
  exportlp->add_option("--objective", xo.objective)
      ->check(CLI::IsMember(objectives));
  exportlp->add_option("--level", xo.level)->check(CLI::PositiveNumber);
  exportlp->add_option("--out", xo.out);
  exportlp->add_flag("--symmetrize", xo.symmetrize);
  exportlp->callback([&] { exit_code = cmd_export_lp(xo); });

  BenchOpts bo;
  auto* bench = app.add_subcommand("bench", "Sweep a benchmark grid to CSV");
  bench->add_option("--sizes", bo.sizes, "Comma list of n values");
  bench->add_option("--completeness", bo.completeness, "Comma list");
  bench->add_option("--seeds", bo.seeds, "Seeds 1..S per cell")
      ->check(CLI::PositiveNumber);
  bench->add_option("--criteria", bo.criteria,
                    "Comma list (default: all criteria)");
  bench->add_option("--timeout-ms", bo.timeout_ms);
  bench->add_option("--jobs", bo.jobs, "Parallel workers")
      ->check(CLI::PositiveNumber);
  bench->add_option("--out", bo.out);
  bench->callback([&] { exit_code = cmd_bench(bo); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  } catch (const sri::OracleBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTimeout;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return exit_code;
}
