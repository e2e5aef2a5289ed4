#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "salv/cli.hpp"
#include "salv/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Exact homology over Q[t,t^-1] of weighted Coxeter cell complexes, "
      "families A, B and D"};
  app.require_subcommand(1);

  std::string family = "A";
  std::string complex_text = "full";
  std::string method = "auto";
  std::string out_path;
  std::string ring = "laurent";
  std::string profile = "desk";
  std::string cache_op;
  int rank = 1;
  int degree = 1;
  int k = 1;
  int k_max = 0;
  int n_max = 1;
  int betti_kmax = -1;
  bool no_cache = false;

  CLI::App* compute =
      app.add_subcommand("compute", "compute one homology report");
  compute->add_option("--family", family, "A, B or D")->required();
  compute->add_option("--rank", rank, "Coxeter rank n")->required();
  compute->add_option("--complex", complex_text,
                      "full | subg:K | quotf:K | quotmod:K");
  compute->add_option("--method", method, "auto | snf | field | modular")
      ->check(CLI::IsMember({"auto", "snf", "field", "modular"}));
  compute->add_option("--out", out_path, "write the report here");
  compute->add_flag("--no-cache", no_cache, "skip the result cache");

  CLI::App* verify = app.add_subcommand("verify", "run verification checks");
  verify->require_subcommand(1);
  CLI::App* vstab = verify->add_subcommand(
      "stability", "trivial stable homology across a family range");
  vstab->add_option("--family", family)->required();
  vstab->add_option("--k-max", k_max)->required();
  vstab->add_option("--n-max", n_max)->required();
  vstab->add_option("--out", out_path);
  CLI::App* vrank = verify->add_subcommand(
      "rank-formula", "stable multiplicity against the alternating sum");
  vrank->add_option("--family", family)->required();
  vrank->add_option("--rank", rank)->required();
  vrank->add_option("--k", k)->required();
  vrank->add_option("--out", out_path);
  CLI::App* vsuite =
      verify->add_subcommand("suite", "the full acceptance check set");
  vsuite->add_option("--profile", profile, "desk | extended")
      ->check(CLI::IsMember({"desk", "extended"}));
  vsuite->add_option("--out", out_path);

  CLI::App* dump =
      app.add_subcommand("dump", "print one boundary matrix as LSM text");
  dump->add_option("--family", family)->required();
  dump->add_option("--rank", rank)->required();
  dump->add_option("--degree", degree)->required();
  dump->add_option("--ring", ring, "laurent | q1 | cyc:<d>");
  dump->add_option("--complex", complex_text);

  CLI::App* betti_cmd =
      app.add_subcommand("betti", "t = 1 Betti numbers as a JSON array");
  betti_cmd->add_option("--family", family)->required();
  betti_cmd->add_option("--rank", rank)->required();
  betti_cmd->add_option("--k-max", betti_kmax, "stop at this degree");

  CLI::App* cache_cmd = app.add_subcommand("cache", "manage the result cache");
  cache_cmd->add_option("op", cache_op, "clear | stat")
      ->required()
      ->check(CLI::IsMember({"clear", "stat"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : salv::kExitUsage;
  }

  try {
    salv::RunConfig cfg;
    salv::apply_env(cfg);
    cfg.family = salv::parse_family(family);
    cfg.rank = rank;
    cfg.complex = salv::ComplexSpec::parse(complex_text);
    cfg.method = method;
    cfg.out_path = out_path;
    cfg.use_cache = !no_cache;
    salv::apply_threads(cfg);

    if (compute->parsed())
      return salv::cmd_compute(cfg, std::cout, std::cerr);
    if (vstab->parsed())
      return salv::cmd_verify_stability(cfg, k_max, n_max, std::cout,
                                        std::cerr);
    if (vrank->parsed())
      return salv::cmd_verify_rank_formula(cfg, k, std::cout, std::cerr);
    if (vsuite->parsed())
      return salv::cmd_verify_suite(cfg, profile == "extended", std::cout,
                                    std::cerr);
    if (dump->parsed()) return salv::cmd_dump(cfg, degree, ring, std::cout);
    if (betti_cmd->parsed())
      return salv::cmd_betti(cfg, betti_kmax, std::cout);
    if (cache_cmd->parsed())
      return salv::cmd_cache(cfg, cache_op, std::cout);
    return salv::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return salv::exit_code_for(e);
  }
}
