#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "lastloop/cli/commands.hpp"

namespace {

using lastloop::cli::RunConfig;

void add_table(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--table", cfg.table, "C table written by `cmatrix` (built in memory if omitted)");
}

void add_jobs(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--jobs,-j", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Last erased loops of self-avoiding polygons on the square lattice"};
  app.require_subcommand(1);

  auto* cmatrix = app.add_subcommand("cmatrix", "build the exact Green coefficient table");
  cmatrix->add_option("--max-index,-n", cfg.max_index, "largest coordinate index")->required();
  cmatrix->add_option("--out,-o", cfg.out, "table file to write");

  auto* enumerate = app.add_subcommand("enumerate", "enumerate canonical self-avoiding polygons");
  enumerate->add_option("--length,-l", cfg.length, "polygon length (even)")->required();
  enumerate->add_option("--out,-o", cfg.out, "store root; shards go to <root>/l<length>/<prefix>.saps");
  enumerate->add_flag("--count-only", cfg.count_only, "print the number of polygons only");
  enumerate->add_flag("--compress", cfg.compress, "xz-compress store payloads");
  enumerate->add_option("--shard-depth", cfg.shard_depth, "prefix length used to split the work");
  add_jobs(enumerate, cfg);

  auto* fp = app.add_subcommand("fp", "F_p of one polygon word");
  fp->add_option("word", cfg.word, "word over {D,L,R,U}, e.g. RUULLDRD")->required();
  fp->add_flag("--exact", cfg.exact, "also print the exact polynomial in 1/pi");
  add_table(fp, cfg);

  auto* sweep = app.add_subcommand("sweep", "F(l) and S(l) for l = 2, 4, ..., length");
  sweep->add_option("--length,-l", cfg.length, "largest length (even)")->required();
  sweep->add_option("--out,-o", cfg.out, "CSV file (stdout if omitted)");
  sweep->add_option("--stores", cfg.stores, "store root written by `enumerate --out`");
  add_table(sweep, cfg);
  add_jobs(sweep, cfg);

  auto* square = app.add_subcommand("square", "F_p of the L x L square");
  square->add_option("side", cfg.length, "side length L")->required();
  add_table(square, cfg);

  auto* tri = app.add_subcommand("tri", "diagonal resistance r_n on the triangular lattice");
  tri->add_option("n", cfg.length, "diagonal index n")->required();
  tri->add_option("--mode", cfg.mode, "recurrence | closed | asymptotic | oracle")
      ->check(CLI::IsMember({"recurrence", "closed", "asymptotic", "oracle"}));
  tri->add_option("--out,-o", cfg.out, "write the CSV for 1..n instead");

  auto* verify = app.add_subcommand("verify", "run the oracle cross-checks");
  add_jobs(verify, cfg);

  auto* stats = app.add_subcommand("stats", "size report for a store file or shard directory");
  stats->add_option("store", cfg.stores, "file or directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lastloop::cli::kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return lastloop::cli::run(cfg, std::cout, std::cerr);
}
