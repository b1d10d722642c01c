#include <CLI11.hpp>
#include <iostream>

#include "weil/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace weil::cli;
  CLI::App app{"Weil-etale cohomology and zeta special values"};
  app.require_subcommand(1);

  weil::chainlab::LabConfig lab;
  auto* lab_cmd = app.add_subcommand("lab", "check the level-complex identities on random modules");
  lab_cmd->add_option("--seed", lab.seed, "random seed");
  lab_cmd->add_option("--cases", lab.cases, "number of random cases");
  lab_cmd->add_option("--max-order", lab.max_order, "largest module order");
  lab_cmd->add_option("--max-level", lab.max_level, "largest level m");
  lab_cmd->add_option("--max-n", lab.max_n, "largest second level n");

  std::string weil_file;
  bool weil_json = false;
  auto* weil_cmd = app.add_subcommand("weil", "compute the Weil-etale cohomology report of a document");
  weil_cmd->add_option("file", weil_file, "input document")->required();
  weil_cmd->add_flag("--json", weil_json, "structured output");

  std::string zeta_file;
  bool zeta_json = false;
  auto* zeta_cmd = app.add_subcommand("zeta-check", "compare the zeta special value with the Weil-etale side");
  zeta_cmd->add_option("file", zeta_file, "input document")->required();
  zeta_cmd->add_flag("--json", zeta_json, "structured output");

  auto* example_cmd = app.add_subcommand("example", "write a worked example as a document");
  example_cmd->require_subcommand(1);
  long pd_q = 0, pd_n = 0;
  int pd_d = 0;
  std::string pd_out;
  auto* pd_cmd = example_cmd->add_subcommand("pd", "projective space P^d over F_q");
  pd_cmd->add_option("--q", pd_q, "field size")->required();
  pd_cmd->add_option("--d", pd_d, "dimension")->required();
  pd_cmd->add_option("--n", pd_n, "weight")->required();
  pd_cmd->add_option("-o,--output", pd_out, "output file, - for stdout")->required();
  long ell_q = 0, ell_a = 0;
  std::optional<long> ell_p_part;
  std::string ell_out;
  auto* ell_cmd = example_cmd->add_subcommand("elliptic", "elliptic curve over F_q with trace a");
  ell_cmd->add_option("--q", ell_q, "field size")->required();
  ell_cmd->add_option("--a", ell_a, "Frobenius trace")->required();
  ell_cmd->add_option("--p-part", ell_p_part, "order of the p-part of E(F_q)");
  ell_cmd->add_option("-o,--output", ell_out, "output file, - for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  if (lab_cmd->parsed()) return cmd_lab(lab, std::cout, std::cerr);
  if (weil_cmd->parsed()) return cmd_weil(weil_file, weil_json, std::cout, std::cerr);
  if (zeta_cmd->parsed()) return cmd_zeta_check(zeta_file, zeta_json, std::cout, std::cerr);
  if (pd_cmd->parsed()) return cmd_example_pd(pd_q, pd_d, pd_n, pd_out, std::cout, std::cerr);
  if (ell_cmd->parsed()) return cmd_example_elliptic(ell_q, ell_a, ell_p_part, ell_out, std::cout, std::cerr);
  return kInvalidInput;
}
