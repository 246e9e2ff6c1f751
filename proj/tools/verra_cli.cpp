/*
 * Copyright 2026 The verra authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "verra/cli.hpp"

namespace {

void add_member_flags(CLI::App* sub, verra::cli::RunConfig* cfg) {
  sub->add_option("--seed", cfg->seed, "member seed");
  sub->add_flag("--fixed-fermat", cfg->fixed_fermat,
                "use the Fermat quadric for q");
}

void add_budget_flags(CLI::App* sub, verra::cli::RunConfig* cfg) {
  sub->add_option("--budget-pairs", cfg->budget_pairs,
                  "Groebner pair-reduction cap");
  sub->add_option("--budget-degree", cfg->budget_degree,
                  "Groebner reduction-degree cap");
}

int emit(const verra::cli::RunResult& res, const std::string& json_path) {
  const std::string text = verra::cli::render(res.report);
  if (json_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write " << json_path << "\n";
      return 1;
    }
    out << text;
  }
  std::cerr << res.summary << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact construction and certification of bidegree-(2,2) members, "
      "their discriminant sextics, and the supporting lattice identities"};
  app.require_subcommand(1);
  verra::cli::RunConfig cfg;
  std::string json_path;

  CLI::App* gen = app.add_subcommand("gen", "generate one member");
  add_member_flags(gen, &cfg);
  gen->add_option("--prime", cfg.prime, "coefficient prime");
  gen->add_flag("--force-degenerate", cfg.force_degenerate,
                "replace the correction terms by zero");

  CLI::App* certify =
      app.add_subcommand("certify", "full certification pipeline");
  add_member_flags(certify, &cfg);
  certify->add_option("--prime", cfg.prime, "certification prime");
  certify->add_option("--primes", cfg.primes, "point-count primes")->delimiter(',');
  certify->add_flag("--with-pgl3", cfg.with_pgl3,
                    "run the projective-equivalence system if counts tie");
  certify->add_flag("--force-degenerate", cfg.force_degenerate,
                    "replace the correction terms by zero");
  add_budget_flags(certify, &cfg);

  CLI::App* count =
      app.add_subcommand("count-points", "sextic point counts per prime");
  add_member_flags(count, &cfg);
  count->add_option("--primes", cfg.primes, "primes to count at")->delimiter(',');

  CLI::App* pgl3 =
      app.add_subcommand("pgl3", "projective-equivalence system for the pair");
  add_member_flags(pgl3, &cfg);
  long pgl3_prime = 101;
  pgl3->add_option("--prime", pgl3_prime, "prime for the system");
  pgl3->add_flag("--self-equivalence", cfg.self_equivalence,
                 "match the first sextic against itself");
  add_budget_flags(pgl3, &cfg);

  CLI::App* lattice =
      app.add_subcommand("lattice-demo", "lattice fixture verdicts");
  CLI::App* mukai =
      app.add_subcommand("mukai-verify", "twisted-lattice verdicts");
  CLI::App* grothv =
      app.add_subcommand("groth-verify", "class-difference identity");
  for (CLI::App* sub : {gen, certify, count, pgl3, lattice, mukai, grothv})
    sub->add_option("--json", json_path, "write the report here");

  CLI11_PARSE(app, argc, argv);

  cfg.json_path = json_path;
  if (gen->parsed()) cfg.command = "gen";
  if (certify->parsed()) cfg.command = "certify";
  if (count->parsed()) cfg.command = "count-points";
  if (pgl3->parsed()) {
    cfg.command = "pgl3";
    cfg.prime = pgl3_prime;
  }
  if (lattice->parsed()) cfg.command = "lattice-demo";
  if (mukai->parsed()) cfg.command = "mukai-verify";
  if (grothv->parsed()) cfg.command = "groth-verify";

  try {
    return emit(verra::cli::run(cfg), json_path);
  } catch (const verra::algebra::BudgetExceeded& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
