#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "innerdist/errors.hpp"
#include "innerdist/suites.hpp"

using namespace innerdist;

namespace {

SuiteConfig small(const std::string& suite, std::size_t cases) {
  SuiteConfig c;
  c.suite = suite;
  c.cases = cases;
  return c;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::size_t commas(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == ',';
  return n;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("suite configuration", "[verify][config]") {
  SECTION("unknown suites are rejected") {
    try {
      run_suite(small("nope", 1));
      FAIL("expected an error");
    } catch (const Error& err) {
      REQUIRE(err.code() == errc::unknown_suite);
    }
  }
  SECTION("invalid knobs are rejected") {
    SuiteConfig c = small("loewner", 1);
    c.tolerance = -1.0;
    REQUIRE_THROWS_AS(run_suite(c), Error);
    c = small("loewner", 1);
    c.alphas = {1.5};
    REQUIRE_THROWS_AS(run_suite(c), Error);
    c = small("loewner", 1);
    c.format = "xml";
    REQUIRE_THROWS_AS(run_suite(c), Error);
  }
  SECTION("defaults are filled into the resolved config") {
    SuiteReport rep = run_suite(small("theorem1b", 0));
    REQUIRE(rep.config.cases == 1);
    REQUIRE(rep.config.tolerance == 1e-4);
    REQUIRE(rep.config.alphas == std::vector<double>{0.25, 0.5, 0.75});
  }
}

TEST_CASE("reports are deterministic for a fixed config", "[verify][determinism]") {
  const std::vector<std::pair<std::string, std::size_t>> plans = {
      {"loewner", 2},    {"theorem1", 2},      {"theorem1b", 1}, {"theorem2", 16},
      {"fp", 30},        {"counterexample", 4}, {"convergence", 2}, {"halfplane", 2}};
  for (const auto& [suite, cases] : plans) {
    SuiteReport a = run_suite(small(suite, cases));
    SuiteReport b = run_suite(small(suite, cases));
    INFO("suite " << suite);
    REQUIRE(render_csv(a) == render_csv(b));
    REQUIRE(render_json(a) == render_json(b));
  }
  SECTION("the seed changes the sampled rows") {
    SuiteConfig c1 = small("loewner", 2);
    SuiteConfig c2 = c1;
    c2.seed = 2;
    REQUIRE(render_csv(run_suite(c1)) != render_csv(run_suite(c2)));
  }
}

TEST_CASE("csv rendering", "[verify][csv]") {
  SuiteReport rep = run_suite(small("loewner", 2));
  std::string csv = render_csv(rep);
  auto ls = lines_of(csv);
  REQUIRE(ls.front() == "suite,case_id,alpha,func,base,target,check,lhs,rhs,ratio,pass");
  std::size_t data = 0, trailers = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    if (ls[i].rfind("# ", 0) == 0) {
      ++trailers;
      continue;
    }
    REQUIRE(commas(ls[i]) == 10);
    REQUIRE((ls[i].back() == '0' || ls[i].back() == '1'));
    REQUIRE(ls[i].rfind("loewner,", 0) == 0);
    ++data;
  }
  REQUIRE(data == rep.rows.size());
  REQUIRE(data == 30);  // 2 cases x 5 arc sets x 3 interior points
  REQUIRE(trailers == 1);
  SECTION("an empty report renders as the bare header") {
    SuiteReport empty;
    empty.config = small("loewner", 2);
    REQUIRE(render_csv(empty) == "suite,case_id,alpha,func,base,target,check,lhs,rhs,ratio,pass\n");
  }
  SECTION("distortion suites append empirical trailers") {
    std::string csv2 = render_csv(run_suite(small("theorem2", 15)));
    REQUIRE(csv2.find("# empirical alpha=0.25 min_ratio=") != std::string::npos);
    REQUIRE(csv2.find("# empirical alpha=0.75 min_ratio=") != std::string::npos);
  }
}

TEST_CASE("json rendering", "[verify][json]") {
  SuiteReport rep = run_suite(small("theorem1", 2));
  std::string payload = render_json(rep);
  json parsed = json::parse(payload);
  REQUIRE(payload == parsed.dump(2) + "\n");
  REQUIRE(parsed["suite"] == "theorem1");
  REQUIRE(parsed["rows"].size() == rep.rows.size());
  REQUIRE(parsed["rows"][0]["alpha"].is_null());
  REQUIRE(parsed["summary"]["failures"] == 0);
  SECTION("infinities use the string encoding") {
    json cj = report_to_json(run_suite(small("counterexample", 1)));
    bool saw_inf = false;
    for (const auto& r : cj["rows"])
      if (r["lhs"] == json("inf")) saw_inf = true;
    REQUIRE(saw_inf);
  }
}

TEST_CASE("suite row semantics", "[verify][suites]") {
  SECTION("identity suites pass cleanly at their tolerances") {
    for (const auto& [suite, cases] :
         std::vector<std::pair<std::string, std::size_t>>{
             {"loewner", 3}, {"theorem1", 3}, {"theorem1b", 1}, {"convergence", 2}, {"halfplane", 3}}) {
      SuiteReport rep = run_suite(small(suite, cases));
      INFO("suite " << suite);
      REQUIRE(rep.summary.rows > 0);
      REQUIRE(rep.summary.failures == 0);
    }
  }
  SECTION("distortion suites report per-alpha empirical minima") {
    SuiteReport rep = run_suite(small("fp", 30));
    REQUIRE(rep.summary.failures == 0);
    REQUIRE(rep.summary.empirical.size() == 3);
    for (const auto& [alpha, m] : rep.summary.empirical) {
      REQUIRE((alpha > 0.0 && alpha < 1.0));
      REQUIRE(std::isfinite(m));
      REQUIRE(m > 0.0);
    }
  }
  SECTION("the concentration family fails its middle bound and nothing else") {
    SuiteReport rep = run_suite(small("counterexample", 5));
    REQUIRE(rep.rows.size() == 15);
    std::size_t limit_fails = 0;
    for (const SuiteRow& r : rep.rows) {
      if (r.check == "limit-upper") {
        REQUIRE_FALSE(r.pass);
        ++limit_fails;
      } else {
        REQUIRE(r.pass);
      }
    }
    REQUIRE(limit_fails == 5);
    REQUIRE(rep.summary.failures == 5);
  }
}

TEST_CASE("report emission", "[verify][emit]") {
  SECTION("files are written byte-for-byte and exit codes follow failures") {
    auto path = temp_file("innerdist_report_test.csv");
    SuiteReport rep = run_suite(small("theorem1b", 1));
    SuiteConfig out_cfg = rep.config;
    out_cfg.output = path.string();
    REQUIRE(emit_report(rep, out_cfg) == 0);
    std::ifstream in(path, std::ios::binary);
    std::string disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(disk == render_csv(rep));
    std::filesystem::remove(path);

    SuiteReport bad = run_suite(small("counterexample", 2));
    REQUIRE(emit_report(bad, bad.config) == 1);
  }
  SECTION("json format writes json") {
    auto path = temp_file("innerdist_report_test.json");
    SuiteConfig c = small("theorem1b", 1);
    c.format = "json";
    SuiteReport rep = run_suite(c);
    SuiteConfig out_cfg = rep.config;
    out_cfg.output = path.string();
    REQUIRE(emit_report(rep, out_cfg) == 0);
    std::ifstream in(path, std::ios::binary);
    std::string disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(disk == render_json(rep));
    std::filesystem::remove(path);
  }
  SECTION("unwritable paths report io failures") {
    SuiteReport rep = run_suite(small("theorem1b", 1));
    SuiteConfig out_cfg = rep.config;
    out_cfg.output = "/nonexistent-dir-innerdist/report.csv";
    try {
      emit_report(rep, out_cfg);
      FAIL("expected an error");
    } catch (const Error& err) {
      REQUIRE(err.code() == errc::io_failure);
    }
  }
}

TEST_CASE("function corpus overrides", "[verify][functions]") {
  auto path = temp_file("innerdist_functions_test.json");
  {
    std::ofstream out(path);
    out << R"([{"zeros": [[0.5, 0.0], [-0.3, 0.2]]}])";
  }
  SuiteConfig c = small("loewner", 2);
  c.functions_file = path.string();
  SuiteReport rep = run_suite(c);
  REQUIRE(rep.summary.failures == 0);
  for (const SuiteRow& r : rep.rows) REQUIRE(r.func == "file-0");
  std::filesystem::remove(path);

  SECTION("missing and malformed files") {
    SuiteConfig miss = small("loewner", 1);
    miss.functions_file = "/nonexistent-dir-innerdist/functions.json";
    try {
      run_suite(miss);
      FAIL("expected an error");
    } catch (const Error& err) {
      REQUIRE(err.code() == errc::io_failure);
    }

    auto garbled = temp_file("innerdist_functions_bad.json");
    {
      std::ofstream out(garbled);
      out << "not json at all {";
    }
    SuiteConfig badc = small("loewner", 1);
    badc.functions_file = garbled.string();
    try {
      run_suite(badc);
      FAIL("expected an error");
    } catch (const Error& err) {
      REQUIRE(err.code() == errc::config_invalid);
    }
    std::filesystem::remove(garbled);
  }
}
