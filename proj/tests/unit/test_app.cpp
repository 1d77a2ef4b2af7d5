#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include "hurwitz/app/commands.hpp"
#include "hurwitz/error.hpp"
#include "test_util.hpp"

using namespace hurwitz;
using hurwitz::app::JobConfig;
using hurwitz::testing::data_path;

namespace {

std::filesystem::path temp_file(const std::string &name, const std::string &text) {
  auto dir = std::filesystem::temp_directory_path() / "hurwitz_test_app";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::filesystem::path s3_type_file(const std::string &extra = "") {
  temp_file("s3.grp", "degree 3\n(1,2)\n(1,2,3)\n");
  return temp_file("s3.type", "group s3.grp\nclass 2.1\nclass 2.1\nclass 3\n" + extra);
}

JobConfig job(const std::string &command, std::vector<std::string> inputs) {
  JobConfig c;
  c.command = command;
  c.inputs = std::move(inputs);
  return c;
}

std::string trailer_value(const app::Report &r, const std::string &key) {
  for (const auto &[k, v] : r.trailer)
    if (k == key)
      return v;
  return "<missing>";
}

// Rendered report without the run line.
std::string stable_text(const app::Report &r, const JobConfig &c) {
  std::string text = r.render(c), out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l.rfind("run ", 0) != 0)
      out += l + "\n";
  return out;
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string &args) {
  std::string cmd = std::string(HURWITZ_CLI) + " " + args + " 2>&1";
  Run r{0, {}};
  FILE *p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p))
    r.out.append(buf.data(), n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

} // namespace

TEST(JobConfig, RangesAreValidated) {
  JobConfig c;
  EXPECT_NO_THROW(c.validate());
  for (auto bad : {0u, 2u, 33u, 91u})
    EXPECT_THROW(([&] { JobConfig d; d.prime = bad; d.validate(); }()), InvalidArgument) << bad;
  EXPECT_THROW(([&] { JobConfig d; d.precision_bits = 32; d.validate(); }()), InvalidArgument);
  EXPECT_THROW(([&] { JobConfig d; d.threads = 0; d.validate(); }()), InvalidArgument);
  EXPECT_THROW(([&] { JobConfig d; d.budget_elements = 0; d.validate(); }()), InvalidArgument);
  EXPECT_THROW(([&] { JobConfig d; d.height = "12a"; d.validate(); }()), InvalidArgument);
  EXPECT_THROW(([&] { JobConfig d; d.alpha = "1/0"; d.validate(); }()), Error);
}

TEST(JobConfig, EchoCoversEveryField) {
  JobConfig c = job("verify family", {"a.family"});
  c.alpha = "2";
  auto echo = c.echo();
  for (const char *k : {"command=", "inputs=", "prime=", "alpha=", "precision_bits=", "seed=",
                        "budget_elements=", "budget_iterations=", "out="})
    EXPECT_TRUE(std::any_of(echo.begin(), echo.end(),
                            [&](const std::string &l) { return l.rfind(k, 0) == 0; }))
        << k;
}

TEST(Commands, S3HasOneClass) {
  auto c = job("nielsen enum", {s3_type_file().string()});
  auto r = app::run(c);
  EXPECT_EQ(trailer_value(r, "INNER_CLASSES"), "1");
  EXPECT_EQ(trailer_value(r, "RIGID"), "true");
  EXPECT_TRUE(r.passed());
  auto text = r.render(c);
  EXPECT_NE(text.find("1 inner classes"), std::string::npos);
  EXPECT_NE(text.find("\n--- trailer\n"), std::string::npos);
  EXPECT_NE(text.find("RESULT=PASS\n"), std::string::npos);
}

TEST(Commands, EmptyClassListIsAnError) {
  auto p = temp_file("empty.type", "group s3.grp\n");
  s3_type_file();
  EXPECT_THROW(app::run(job("nielsen enum", {p.string()})), ParseError);
}

TEST(Commands, BraidWords) {
  auto c = job("braid orbit", {s3_type_file().string()});
  c.words = {"id", "Q1^2"};
  auto r = app::run(c);
  EXPECT_EQ(trailer_value(r, "ORBITS"), "1");
  EXPECT_EQ(trailer_value(r, "WORD_1"), "1");
  EXPECT_EQ(trailer_value(r, "WORD_2"), "1");
  c.words = {"Q1^"};
  EXPECT_THROW(app::run(c), InvalidArgument);
}

TEST(Commands, ThreadCountDoesNotChangeReports) {
  auto c1 = job("nielsen enum", {data_path("types/psp43_2_27_rigid.type")});
  auto c2 = c1;
  c2.threads = 3;
  EXPECT_EQ(stable_text(app::run(c1), c1), stable_text(app::run(c2), c2));
}

TEST(Commands, WrongManifestFailsWithDiff) {
  std::string text = read_text_file(data_path("families/psp43_2_27.family"));
  auto at = text.find("expect profiles");
  text.replace(at, text.find('\n', at) - at, "expect profiles 2^6.1^15 2^6.1^15 4^6.1^3 9^3");
  auto dir = temp_file("dummy", "").parent_path();
  auto p = temp_file("wrong.family", text);
  std::filesystem::copy_file(data_path("psp43_2_27.grp"), dir.parent_path() / "psp43_2_27.grp",
                             std::filesystem::copy_options::overwrite_existing);
  auto r = app::run(job("verify family", {p.string()}));
  EXPECT_FALSE(r.passed());
  ASSERT_EQ(r.failures, std::vector<std::string>{"profiles"});
  bool diff = false;
  for (const auto &l : r.lines)
    diff = diff || (l.find("FAIL") != std::string::npos && l.find("expected") != std::string::npos &&
                    l.find("9^3") != std::string::npos);
  EXPECT_TRUE(diff);
}

TEST(Commands, RecognizeReportsRequiredBits) {
  auto c = job("recognize", {});
  c.value = "1.4142135623730950488";
  c.max_degree = 6;
  c.precision_bits = 64;
  auto r = app::run(c);
  EXPECT_FALSE(r.passed());
  bool said = false;
  for (const auto &l : r.lines)
    said = said || l.find("insufficient precision: ") != std::string::npos;
  EXPECT_TRUE(said);
  EXPECT_NE(trailer_value(r, "REQUIRED_BITS"), "<missing>");
}

TEST(Commands, RecognizeSamples) {
  auto p = temp_file("circle.samples",
                     "sample 1 0\nsample 0 1\nsample -1 0\nsample 3/5 4/5\nsample 5/13 -12/13\n"
                     "sample -8/17 15/17\nsample 7/25 24/25\nsample -20/29 -21/29\n"
                     "sample 9/41 40/41\nsample 0 -1\n");
  auto c = job("recognize", {p.string()});
  c.degrees = {2, 2};
  auto r = app::run(c);
  EXPECT_EQ(trailer_value(r, "RELATION"), "beta^2 + gamma^2 - 1");
  c.degrees.reset();
  EXPECT_THROW(app::run(c), InvalidArgument);
}

TEST(Commands, CoverFileErrorsCarryLines) {
  auto p = temp_file("bad.cover", "degree 2\nprecision_bits 64\nnum_coeff 0 1\n");
  try {
    app::run(job("monodromy", {p.string()}));
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

// ---- the executable ----

TEST(Cli, ExitCodesAndDeterminism) {
  auto type = s3_type_file().string();
  auto a = run_cli("nielsen enum " + type);
  auto b = run_cli("--threads 2 nielsen enum " + type + " --seed 9");
  EXPECT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(b.status, 0) << b.out;
  EXPECT_NE(a.out.find("INNER_CLASSES=1\n"), std::string::npos);
  EXPECT_NE(b.out.find("config seed=9\n"), std::string::npos);
  EXPECT_EQ(run_cli("nielsen enum " + type).out, a.out);

  EXPECT_EQ(run_cli("--prime 4 nielsen enum " + type).status, 2);
  EXPECT_NE(run_cli("nielsen enum").status, 0);
  EXPECT_EQ(run_cli("nielsen enum /nonexistent.type").status, 2);
  auto help = run_cli("--help");
  EXPECT_EQ(help.status, 0);
  for (const char *flag : {"--prime", "--alpha", "--precision-bits", "--seed", "--budget-elements",
                           "--threads", "--out", "HURWITZ_PRIME"})
    EXPECT_NE(help.out.find(flag), std::string::npos) << flag;
}

TEST(Cli, EnvironmentOverridesAndOutFile) {
  auto type = s3_type_file().string();
  auto out = std::filesystem::temp_directory_path() / "hurwitz_test_app" / "report.txt";
  auto direct = run_cli("--prime 41 nielsen enum " + type);
  EXPECT_NE(direct.out.find("config prime=41\n"), std::string::npos);
  std::string cmd = "HURWITZ_PRIME=37 HURWITZ_OUT=" + out.string() + " " + std::string(HURWITZ_CLI) +
                    " nielsen enum " + type + " > /dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  std::string saved = read_text_file(out);
  EXPECT_NE(saved.find("config prime=37\n"), std::string::npos);
  EXPECT_NE(saved.find("RESULT=PASS"), std::string::npos);
}

TEST(Cli, FailedChecksExitOne) {
  auto r = run_cli("recognize --value 1.4142135623730950488 --max-degree 6 --precision-bits 64");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("insufficient precision"), std::string::npos);
}
