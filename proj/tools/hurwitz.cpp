// hurwitz: command-line front end to the group, cover and recognition code.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hurwitz/app/commands.hpp"
#include "hurwitz/error.hpp"

using hurwitz::app::JobConfig;

namespace {

void fall_through(CLI::App *sub) { sub->fallthrough(); }

std::pair<unsigned, unsigned> parse_degrees(const std::string &text) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--degrees", "expected dbeta,dgamma");
  try {
    return {static_cast<unsigned>(std::stoul(text.substr(0, comma))),
            static_cast<unsigned>(std::stoul(text.substr(comma + 1)))};
  } catch (const std::exception &) {
    throw CLI::ValidationError("--degrees", "expected two nonnegative integers, got '" + text + "'");
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hurwitz space and branched cover computations"};
  app.require_subcommand(1);
  JobConfig cfg;
  std::string alpha, target_alpha, degrees, value, out, cover_out;

  app.add_option("--prime", cfg.prime, "prime for reductions (default 31)")->envname("HURWITZ_PRIME");
  app.add_option("--alpha", alpha, "family parameter override, a rational")->envname("HURWITZ_ALPHA");
  app.add_option("--precision-bits", cfg.precision_bits, "working precision in bits (default 128)")
      ->envname("HURWITZ_PRECISION_BITS");
  app.add_option("--seed", cfg.seed, "random seed (default 1)")->envname("HURWITZ_SEED");
  app.add_option("--budget-elements", cfg.budget_elements,
                 "candidate cap for enumeration, orbit cap for braid orbits")
      ->envname("HURWITZ_BUDGET_ELEMENTS");
  app.add_option("--budget-iterations", cfg.budget_iterations, "Newton iteration cap (default 40)")
      ->envname("HURWITZ_BUDGET_ITERATIONS");
  app.add_option("--threads", cfg.threads, "worker threads (default 1)")->envname("HURWITZ_THREADS");
  app.add_option("--out", out, "also write the report to this file")->envname("HURWITZ_OUT");

  auto *nielsen = app.add_subcommand("nielsen", "Nielsen classes")->require_subcommand(1);
  auto *nenum = nielsen->add_subcommand("enum", "inner Nielsen classes of a type file");
  nenum->add_option("type-file", cfg.inputs)->required()->expected(1);

  auto *braid = app.add_subcommand("braid", "braid group action")->require_subcommand(1);
  auto *borbit = braid->add_subcommand("orbit", "braid orbits and word actions");
  borbit->add_option("type-file", cfg.inputs)->required()->expected(1);
  borbit->add_option("--word", cfg.words, "extra braid word, e.g. \"Q1 Q2^-1\"");

  auto *verify = app.add_subcommand("verify", "exact checks")->require_subcommand(1);
  auto *vfam = verify->add_subcommand("family", "check a family file's expectations");
  vfam->add_option("family-file", cfg.inputs)->required()->expected(1);

  auto *cover = app.add_subcommand("cover", "numerical covers")->require_subcommand(1);
  auto *cfam = cover->add_subcommand("from-family", "refined cover file from a family member");
  cfam->add_option("family-file", cfg.inputs)->required()->expected(1);
  cfam->add_option("--pin", cfg.pins, "normalisation pin, e.g. \"scale inf 729\"");
  cfam->add_option("--cover-out", cover_out, "cover file to write");

  auto *mono = app.add_subcommand("monodromy", "monodromy by path lifting");
  mono->add_option("file", cfg.inputs, "cover file or family file")->required()->expected(1);

  auto *def = app.add_subcommand("deform", "move branch points by continuation");
  def->add_option("file", cfg.inputs, "cover file or family file")->required()->expected(1);
  def->add_option("--targets", cfg.targets, "target branch points, \"re\" or \"re,im\"")->delimiter(';');
  def->add_option("--target-alpha", target_alpha, "take targets from the family at this alpha");
  def->add_option("--pin", cfg.pins, "normalisation pin");
  def->add_option("--cover-out", cover_out, "cover file to write");

  auto *rec = app.add_subcommand("recognize", "relations and minimal polynomials");
  rec->add_option("samples", cfg.inputs, "file of `sample beta gamma` lines")->expected(0, 1);
  rec->add_option("--degrees", degrees, "degree bounds dbeta,dgamma");
  rec->add_option("--value", value, "number to recognise, \"re\" or \"re,im\"");
  rec->add_option("--max-degree", cfg.max_degree, "largest degree tried (default 4)");
  rec->add_option("--height", cfg.height, "coefficient height bound (default 1000000)");

  for (auto *s : {nielsen, nenum, braid, borbit, verify, vfam, cover, cfam, mono, def, rec})
    fall_through(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  }

  if (nenum->parsed())
    cfg.command = "nielsen enum";
  else if (borbit->parsed())
    cfg.command = "braid orbit";
  else if (vfam->parsed())
    cfg.command = "verify family";
  else if (cfam->parsed())
    cfg.command = "cover from-family";
  else if (mono->parsed())
    cfg.command = "monodromy";
  else if (def->parsed())
    cfg.command = "deform";
  else
    cfg.command = "recognize";
  if (!alpha.empty())
    cfg.alpha = alpha;
  if (!target_alpha.empty())
    cfg.target_alpha = target_alpha;
  if (!value.empty())
    cfg.value = value;
  if (!out.empty())
    cfg.out = out;
  if (!cover_out.empty())
    cfg.cover_out = cover_out;

  try {
    if (!degrees.empty())
      cfg.degrees = parse_degrees(degrees);
    auto report = hurwitz::app::run(cfg);
    auto text = report.render(cfg);
    std::cout << text;
    if (cfg.out) {
      std::ofstream f(*cfg.out);
      if (!f) {
        std::cerr << "error: cannot write " << cfg.out->string() << "\n";
        return 2;
      }
      f << text;
    }
    return report.passed() ? 0 : 1;
  } catch (const CLI::ValidationError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hurwitz::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hurwitz::InvalidArgument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
