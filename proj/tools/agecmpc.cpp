// Copyright 2026 The agecmpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// agecmpc: plan, sweep, run and oracle subcommands.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "agecmpc/agecmpc.hpp"

namespace {

using agecmpc::Count;
using agecmpc::PartitionScheme;
using nlohmann::json;

struct RunConfig {
  std::int64_t s = 0, t = 0, z = 0;
  std::optional<std::int64_t> lambda;
  std::optional<std::int64_t> m;
  std::int64_t st = 36;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> prime;
  std::string out;
  std::string format;  // empty: json for plan, csv for sweep
  std::int64_t s_max = 6, t_max = 6, z_max = 20;
  std::optional<std::int64_t> phase3_subset;
  bool identity = false;
  bool inject_wrong_guard = false;
};

std::uint64_t resolve_prime(const RunConfig& cfg) {
  if (cfg.prime) return *cfg.prime;
  if (const char* env = std::getenv("AGE_MPC_PRIME")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw agecmpc::Error(agecmpc::ErrorCode::kInvalidPrime, std::string("AGE_MPC_PRIME=") + env + " is not a number");
    }
  }
  return agecmpc::kMersenne61;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + cfg.out);
  f << text;
}

json report_json(const agecmpc::WorkerCountReport& r) {
  json j;
  j["schema_version"] = 1;
  j["s"] = r.s;
  j["t"] = r.t;
  j["z"] = r.z;
  j["n_age"] = r.n_age;
  j["lambda_star"] = r.lambda_star ? json(*r.lambda_star) : json(nullptr);
  j["gamma"] = json::array();
  for (const auto& row : r.gamma_table) {
    j["gamma"].push_back({{"lambda", row.lambda}, {"value", row.value.count}, {"case", to_string(row.value.label)}});
  }
  j["n_entangled"] = r.n_entangled;
  j["n_ssmm"] = r.n_ssmm;
  j["n_gcsa_na"] = r.n_gcsa_na;
  j["n_polydot"] = r.n_polydot ? json(*r.n_polydot) : json(nullptr);
  j["dominance"] = {{"entangled", r.dominance.vs_entangled},
                 {"ssmm", r.dominance.vs_ssmm},
                 {"gcsa_na", r.dominance.vs_gcsa_na},
                 {"polydot", r.dominance.vs_polydot}};
  return j;
}

int cmd_plan(const RunConfig& cfg) {
  const PartitionScheme p = PartitionScheme::make(cfg.s, cfg.t, cfg.z, 0, cfg.m);
  const auto r = agecmpc::compare(p);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "s,t,z,scheme_name,N,lambda_star\n";
    auto row = [&](const char* name, std::optional<Count> n, std::optional<std::int64_t> lam) {
      os << r.s << ',' << r.t << ',' << r.z << ',' << name << ',';
      if (n) os << *n;
      os << ',';
      if (lam) os << *lam;
      os << '\n';
    };
    row("AGE", r.n_age, r.lambda_star);
    row("Entangled", r.n_entangled, std::nullopt);
    row("SSMM", r.n_ssmm, std::nullopt);
    row("GCSA-NA", r.n_gcsa_na, std::nullopt);
    row("PolyDot", r.n_polydot, std::nullopt);
    emit(cfg, os.str());
  } else {
    emit(cfg, report_json(r).dump(2) + "\n");
  }
  return r.dominance.all() ? 0 : 1;
}

int cmd_sweep(const RunConfig& cfg) {
  const std::int64_t m = cfg.m.value_or(cfg.st);
  const auto rows = agecmpc::sweep(cfg.st, cfg.z, m);
  bool dominated = true;
  for (std::size_t k = 0; k < rows.size(); k += 5) {
    for (std::size_t b = 1; b < 5; ++b)
      if (rows[k + b].n && *rows[k].n > *rows[k + b].n) dominated = false;
  }
  if (cfg.format == "json") {
    json j;
    j["schema_version"] = 1;
    j["age_dominates"] = dominated;
    j["rows"] = json::array();
    for (const auto& r : rows) {
      json row = {{"s", r.s}, {"t", r.t}, {"z", r.z}, {"m", r.m}, {"scheme_name", r.scheme_name}};
      row["N"] = r.n ? json(*r.n) : json(nullptr);
      row["lambda_star"] = r.lambda_star ? json(*r.lambda_star) : json(nullptr);
      row["xi"] = r.costs ? json(r.costs->xi) : json(nullptr);
      row["sigma"] = r.costs ? json(r.costs->sigma) : json(nullptr);
      row["zeta"] = r.costs ? json(r.costs->zeta) : json(nullptr);
      j["rows"].push_back(row);
    }
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    agecmpc::write_sweep_csv(os, rows);
    emit(cfg, os.str());
  }
  return dominated ? 0 : 1;
}

/// Random k-subset of {1..n}, sorted.
std::vector<std::int64_t> random_subset(agecmpc::CounterRng& rng, std::size_t n, std::size_t k) {
  std::vector<std::int64_t> ids(n);
  std::iota(ids.begin(), ids.end(), 1);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(k);
  std::sort(ids.begin(), ids.end());
  return ids;
}

int cmd_run(const RunConfig& cfg) {
  if (!cfg.m) throw CLI::ValidationError("--m", "run requires --m");
  const agecmpc::PrimeField f(resolve_prime(cfg));
  PartitionScheme p = PartitionScheme::make(cfg.s, cfg.t, cfg.z, 0, cfg.m);
  const auto age = agecmpc::n_age(p);
  p = p.with_lambda(cfg.lambda.value_or(age.lambda_star.value_or(0)));

  const auto m = static_cast<std::size_t>(*cfg.m);
  agecmpc::BlockMatrix a, b;
  if (cfg.identity) {
    a = agecmpc::BlockMatrix::identity(m);
    b = agecmpc::BlockMatrix::identity(m);
  } else {
    agecmpc::CounterRng rng(cfg.seed, agecmpc::stream_id(agecmpc::Stream::kInputs));
    a = rng.uniform_block(f, m, m);
    b = rng.uniform_block(f, m, m);
  }

  const std::size_t n_workers = agecmpc::product_support(p).size();
  const std::size_t threshold = static_cast<std::size_t>(p.t() * p.t() + p.z());
  agecmpc::CounterRng subset_rng(cfg.seed, agecmpc::stream_id(agecmpc::Stream::kSubsets));
  std::optional<std::vector<std::int64_t>> responders;
  if (cfg.phase3_subset) {
    const auto k = static_cast<std::size_t>(*cfg.phase3_subset);
    if (k > n_workers) throw CLI::ValidationError("--phase3-subset", "exceeds the number of workers");
    responders = random_subset(subset_rng, n_workers, k);
  }

  const auto result = agecmpc::run_protocol(f, a, b, p, cfg.seed, responders);
  const agecmpc::BlockMatrix expected = agecmpc::multiply(f, a.transpose(), b);
  const bool correct = result.y == expected;

  const auto report = agecmpc::predicted_costs(result.transcript.scheme, static_cast<Count>(n_workers));
  const auto rec = agecmpc::reconcile(result.transcript, report);

  constexpr int kSubsetTrials = 10;
  int subsets_ok = 0;
  for (int trial = 0; trial < kSubsetTrials; ++trial) {
    std::vector<agecmpc::Response> rs;
    for (std::int64_t id : random_subset(subset_rng, n_workers, threshold))
      rs.push_back(result.all_responses[static_cast<std::size_t>(id - 1)]);
    if (agecmpc::assemble(agecmpc::phase3_reconstruct(f, rs, p)) == expected) ++subsets_ok;
  }

  json j;
  j["schema_version"] = 1;
  j["scheme"] = {{"m", *cfg.m}, {"s", p.s()}, {"t", p.t()}, {"z", p.z()}, {"lambda", p.lambda()}};
  j["prime"] = f.prime();
  j["seed"] = cfg.seed;
  j["n_workers"] = n_workers;
  j["n_age"] = age.n;
  j["correct"] = correct;
  j["responders"] = result.transcript.master_received;
  j["reconciliation"] = json::array();
  for (const auto& d : rec.fields) {
    j["reconciliation"].push_back(
        {{"field", d.name}, {"predicted", d.predicted}, {"measured", d.measured}, {"delta", d.delta}});
  }
  j["workers_uniform"] = rec.workers_uniform;
  j["recovery_subsets"] = {{"size", threshold}, {"trials", kSubsetTrials}, {"correct", subsets_ok}};
  j["y_digest"] = result.transcript.y_digest;
  j["transcript"] = agecmpc::to_json(result.transcript);
  emit(cfg, j.dump(2) + "\n");
  return correct && rec.exact() && subsets_ok == kSubsetTrials ? 0 : 1;
}

/// Deliberately broken guard selection for the negative control: lambda = z
/// is routed to the Entangled-style branch instead of its own.
agecmpc::GammaValue wrong_guard_gamma(const PartitionScheme& p) {
  if (p.lambda() == p.z()) return {agecmpc::upsilon_value(agecmpc::UpsilonCase::k1, p), agecmpc::UpsilonCase::k1};
  return agecmpc::gamma(p);
}

int cmd_oracle(const RunConfig& cfg) {
  const auto summary = cfg.inject_wrong_guard ? agecmpc::run_oracle(cfg.s_max, cfg.t_max, cfg.z_max, wrong_guard_gamma)
                                              : agecmpc::run_oracle(cfg.s_max, cfg.t_max, cfg.z_max);
  json j = agecmpc::to_json(summary);
  j["schema_version"] = 1;
  j["grid"] = {{"s_max", cfg.s_max}, {"t_max", cfg.t_max}, {"z_max", cfg.z_max}};
  j["pass"] = summary.all();
  emit(cfg, j.dump(2) + "\n");
  return summary.all() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AGE-CMPC worker counts, costs and protocol simulation"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_stz = [&cfg](CLI::App* sub, bool need_st) {
    if (need_st) {
      sub->add_option("--s", cfg.s, "row partitions")->required()->check(CLI::PositiveNumber);
      sub->add_option("--t", cfg.t, "column partitions")->required()->check(CLI::PositiveNumber);
    }
    sub->add_option("--z", cfg.z, "colluding workers")->required()->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output path (default stdout)");
  };

  auto* plan = app.add_subcommand("plan", "worker counts and baseline comparison for (s, t, z)");
  add_stz(plan, true);
  plan->add_option("--m", cfg.m, "matrix size");
  plan->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* sweep = app.add_subcommand("sweep", "all divisor pairs of st, five schemes each");
  add_stz(sweep, false);
  sweep->add_option("--st", cfg.st, "product s*t")->required()->check(CLI::Range(2, 1 << 20));
  sweep->add_option("--m", cfg.m, "matrix size (default st)");
  sweep->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* run = app.add_subcommand("run", "simulate the protocol on seeded random inputs");
  add_stz(run, true);
  run->add_option("--m", cfg.m, "matrix size")->required();
  run->add_option("--lambda", cfg.lambda, "gap parameter (default lambda*)");
  run->add_option("--seed", cfg.seed, "RNG seed");
  run->add_option("--prime", cfg.prime, "field prime (default AGE_MPC_PRIME or 2^61-1)");
  run->add_option("--phase3-subset", cfg.phase3_subset, "number of random phase-3 responders");
  run->add_flag("--identity", cfg.identity, "use A = B = I");

  auto* oracle = app.add_subcommand("oracle", "check Gamma against the explicit support on a grid");
  oracle->add_option("--s-max", cfg.s_max)->check(CLI::PositiveNumber);
  oracle->add_option("--t-max", cfg.t_max)->check(CLI::PositiveNumber);
  oracle->add_option("--z-max", cfg.z_max)->check(CLI::PositiveNumber);
  oracle->add_option("--out", cfg.out, "output path (default stdout)");
  oracle->add_flag("--inject-wrong-guard", cfg.inject_wrong_guard, "negative control")->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(cfg);
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (run->parsed()) return cmd_run(cfg);
    if (oracle->parsed()) return cmd_oracle(cfg);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
