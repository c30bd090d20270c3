#include <gtest/gtest.h>

#include "json.hpp"

#include "friezekit/report.hpp"

using namespace friezekit;
using nlohmann::json;

namespace {

RunConfig config(const FamilySpec& f, std::vector<std::string> checks = {"all"}, int seeds = 3) {
  RunConfig c;
  c.family = f;
  c.seeds = seeds;
  c.checks = std::move(checks);
  c.threads = 1;
  return c;
}

CheckReport report(Verdict v, bool conjectural = false) {
  CheckReport r;
  r.id = "X.test";
  r.verdict = v;
  r.conjectural = conjectural;
  return r;
}

const Table& table_named(const std::vector<Table>& ts, const std::string& part) {
  for (const auto& t : ts)
    if (t.name.find(part) != std::string::npos) return t;
  throw std::runtime_error("no table " + part);
}

bool has_row(const Table& t, const std::vector<std::string>& prefix) {
  for (const auto& r : t.rows)
    if (std::equal(prefix.begin(), prefix.end(), r.begin())) return true;
  return false;
}

}  // namespace

TEST(Report, ByteStableAcrossRunsAndThreadCounts) {
  RunConfig a = config(FamilySpec::e7());
  RunConfig b = a;
  b.threads = 3;
  const std::string ja = run_verify(a).rendered;
  EXPECT_EQ(ja, run_verify(a).rendered);
  EXPECT_EQ(ja, run_verify(b).rendered);
  a.format = b.format = Format::Csv;
  EXPECT_EQ(run_verify(a).rendered, run_verify(b).rendered);
}

TEST(Report, JsonShape) {
  const auto res = run_verify(config(FamilySpec::d(5), {"period", "linear"}));
  const json j = json::parse(res.rendered);
  ASSERT_TRUE(j.contains("reports"));
  EXPECT_EQ(j["config"]["family"], "D5");
  ASSERT_FALSE(j["reports"].empty());
  for (const auto& r : j["reports"]) {
    for (const char* key : {"id", "family", "group", "mode", "trials", "n_window", "verdict", "citation"})
      EXPECT_TRUE(r.contains(key)) << key;
    EXPECT_EQ(r["verdict"], "PASS") << r["id"];
    EXPECT_LE(r["n_window"][0].get<int>(), r["n_window"][1].get<int>());
  }
  EXPECT_EQ(res.exit_code, 0);
}

TEST(Report, CsvHasOneLinePerReport) {
  RunConfig c = config(FamilySpec::e6(), {"period"});
  c.format = Format::Csv;
  const auto res = run_verify(c);
  const auto lines = std::count(res.rendered.begin(), res.rendered.end(), '\n');
  EXPECT_EQ(static_cast<std::size_t>(lines), res.reports.size() + 1);
  EXPECT_EQ(res.rendered.rfind("id,family,group,mode,trials,n_lo,n_hi,verdict", 0), 0u);
}

TEST(Report, ExitStatus) {
  EXPECT_EQ(exit_status({report(Verdict::Pass), report(Verdict::Evidence, true)}), 0);
  EXPECT_EQ(exit_status({report(Verdict::Pass), report(Verdict::Inconclusive)}), 0);
  EXPECT_NE(exit_status({report(Verdict::Pass), report(Verdict::Fail)}), 0);
  // A conjecture probe that fails is reported, not fatal.
  EXPECT_EQ(exit_status({report(Verdict::Fail, true)}), 0);
}

TEST(Report, ConjectureEvidenceDoesNotFailTheRun) {
  const auto res = run_verify(config(FamilySpec::e8(), {"conjecture"}, 2));
  ASSERT_FALSE(res.reports.empty());
  for (const auto& r : res.reports) EXPECT_EQ(r.verdict, Verdict::Evidence) << r.id;
  EXPECT_EQ(res.exit_code, 0);
}

TEST(Report, Validation) {
  RunConfig c = config(FamilySpec::e6(), {"period"});
  c.n_max = required_depth(c) - 1;
  EXPECT_THROW(validate(c), UsageError);
  c.n_max = required_depth(c);
  EXPECT_NO_THROW(validate(c));
  c.seeds = -1;
  EXPECT_THROW(validate(c), UsageError);
  RunConfig bad = config(FamilySpec::d(3));
  EXPECT_THROW(validate(bad), UsageError);
  EXPECT_THROW(parse_format("yaml"), UsageError);
  EXPECT_EQ(parse_format("csv"), Format::Csv);
}

TEST(Report, ReductionChecksRideAlongForSupportedFamilies) {
  const auto reps = run_checks(config(FamilySpec::e6(), {"integrability"}, 2));
  ASSERT_FALSE(reps.empty());
  for (const auto& r : reps) EXPECT_EQ(r.verdict, Verdict::Pass) << r.id << " " << r.note;
  EXPECT_THROW(run_checks(config(FamilySpec::d(4), {"integrability"}, 2)), UsageError);  // nothing selected
}

TEST(Tables, ClaimedAndMeasuredValues) {
  TableOptions o;
  o.trials = 1;
  o.threads = 1;
  const auto ts = emit_tables(o);
  ASSERT_EQ(ts.size(), 3u);
  const Table& b = table_named(ts, "b-values");
  EXPECT_TRUE(has_row(b, {"E6", "6", "E6:6"}));
  EXPECT_TRUE(has_row(b, {"E7", "12", "E7:12"}));
  EXPECT_TRUE(has_row(b, {"E8", "30", "E8:30"}));
  EXPECT_TRUE(has_row(b, {"D_N, N odd", "2N-4"}));
  for (const auto& r : b.rows) EXPECT_EQ(r.back(), "PASS") << r[0];

  const Table& ap = table_named(ts, "a-p-values");
  EXPECT_TRUE(has_row(ap, {"E8", "6", "5"}));
  EXPECT_TRUE(has_row(ap, {"E8", "10", "3"}));
  EXPECT_TRUE(has_row(ap, {"E8", "15?", "2?"}));
  EXPECT_TRUE(has_row(ap, {"D_N, N even", "1", "N-2"}));

  const Table& per = table_named(ts, "period");
  EXPECT_TRUE(has_row(per, {"E7", "2", "Kt_n"}));
  EXPECT_TRUE(has_row(per, {"E8", "2?", "Kt_n"}));
  for (const auto& r : per.rows) EXPECT_TRUE(r.back() == "PASS" || r.back() == "EVIDENCE") << r[2];

  EXPECT_EQ(render_tables(ts, Format::Text), render_tables(emit_tables(o), Format::Text));
  EXPECT_NO_THROW((void)json::parse(render_tables(ts, Format::Json)));
}

TEST(Dumps, FriezeAndReduction) {
  const auto t = frieze_units(build_affine_quiver(FamilySpec::d(4)), 2);
  const json j = json::parse(dump_frieze(t, Format::Json));
  EXPECT_FALSE(j.empty());
  const std::string csv = dump_frieze(t, Format::Csv);
  EXPECT_NE(csv.find("3"), std::string::npos);
  const json r = json::parse(dump_reduction(build_reduction(build_affine_quiver(FamilySpec::e6())), Format::Json));
  EXPECT_FALSE(r.empty());
}
