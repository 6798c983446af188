#include "piforge/commands.hpp"
#include "piforge/report.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using namespace piforge;
using nlohmann::ordered_json;

namespace {

RunConfig config(const std::string& command, std::vector<std::string> ids = {}) {
    RunConfig c;
    c.command = command;
    c.ids = std::move(ids);
    c.format = Format::Json;
    return c;
}

std::string body(const Report& r) { return report_body(r).dump(); }

}  // namespace

TEST_CASE("truncate_digits") {
    const std::string d61(61, '7');
    CHECK(truncate_digits("12345") == "12345");
    CHECK(truncate_digits(std::string(60, '1')) == std::string(60, '1'));
    CHECK(truncate_digits(d61) == std::string(60, '7') + "\xE2\x80\xA6(61 digits)");
    CHECK(truncate_digits("-" + d61) == "-" + std::string(60, '7') + "\xE2\x80\xA6(61 digits)");
    CHECK(truncate_digits(d61 + "/3") == std::string(60, '7') + "\xE2\x80\xA6(61 digits)/3");
    CHECK(truncate_digits("pass") == "pass");
    CHECK(truncate_digits("1234", 2) == "12\xE2\x80\xA6(4 digits)");
}

TEST_CASE("format names") {
    CHECK(format_from_name("json") == Format::Json);
    CHECK(format_from_name("csv") == Format::Csv);
    CHECK(format_from_name("text") == Format::Text);
    CHECK_FALSE(format_from_name("xml").has_value());
}

TEST_CASE("items sort by id then index") {
    Report r;
    r.items = {{"b", 2, "x", Status::Proved, "pass", {}}, {"a", 5, "x", Status::Proved, "pass", {}},
               {"b", 1, "x", Status::Proved, "pass", {}}, {"a", -1, "x", Status::Proved, "pass", {}}};
    r.sort_items();
    CHECK(r.items[0].id == "a");
    CHECK(r.items[0].index == -1);
    CHECK(r.items[1].index == 5);
    CHECK(r.items[2].index == 1);
    CHECK(r.items[3].index == 2);
}

TEST_CASE("json body and envelope") {
    Report r;
    r.config["command"] = "seq";
    ReportItem it{"s", 3, "sequence", Status::Proved, "value", {}};
    it.detail["value"] = "23408";
    r.items.push_back(it);
    r.timestamp = "2024-01-01T00:00:00Z";
    r.wall_ms = 12.5;
    r.workers = 3;
    const auto b = report_body(r);
    CHECK(b["version"] == 1);
    CHECK(b["items"][0]["status"] == "proved");
    CHECK_FALSE(b.contains("timings"));
    const auto full = report_json(r);
    CHECK(full["timings"]["workers"] == 3);
    CHECK(full["timings"]["timestamp"] == "2024-01-01T00:00:00Z");
    CHECK_FALSE(report_json(r, false).contains("timings"));
    const auto parsed = ordered_json::parse(render(r, Format::Json));
    CHECK(parsed["items"][0]["detail"]["value"] == "23408");
}

TEST_CASE("csv quoting") {
    Report r;
    ReportItem it{"C5.3i-a", 7, "congruence", Status::Conjecture, "pass", {}};
    it.detail["branch"] = "4x^2-2p, p=x^2+y^2";
    r.items.push_back(it);
    const std::string csv = render_csv(r);
    CHECK(csv.rfind("id,index,kind,status,result,detail\n", 0) == 0);
    CHECK(csv.find("C5.3i-a,7,congruence,conjecture,pass,\"{\"\"branch\"\":\"\"4x^2-2p, p=x^2+y^2\"\"}\"") !=
          std::string::npos);
}

TEST_CASE("text rendering") {
    Report r;
    ReportItem it{"C5.8a", 3, "congruence", Status::Conjecture, "fail", {}};
    it.detail["lhs"] = std::string(70, '9');
    it.detail["flag"] = "FINDING";
    r.items.push_back(it);
    const std::string text = render_text(r);
    CHECK(text.find("FINDING") != std::string::npos);
    CHECK(text.find("(70 digits)") != std::string::npos);
    CHECK(text.find(std::string(61, '9')) == std::string::npos);
}

TEST_CASE("seq command") {
    auto c = config("seq", {"P"});
    c.params["x"] = "4";
    c.n = 1;
    auto r = run_command(c);
    REQUIRE(r.items.size() == 1);
    CHECK(r.items[0].detail["value"] == "12");
    c = config("seq", {"s"});
    c.n = 3;
    CHECK(run_command(c).items[0].detail["value"] == "23408");
    c = config("seq", {"T"});
    c.params = {{"b", "2"}, {"c", "1"}};
    c.n = 4;
    CHECK(run_command(c).items[0].detail["value"] == "70");
    c.n = -1;
    c.n_max = 5;
    CHECK(run_command(c).items.size() == 6);
}

TEST_CASE("usage errors") {
    auto c = config("seq", {"T"});
    c.params["b"] = "2";
    CHECK_THROWS_AS(run_command(c), UsageError);  // missing --c
    c.params["c"] = "1";
    c.params["x"] = "1";
    CHECK_THROWS_AS(run_command(c), UsageError);  // extra --x
    CHECK_THROWS_AS(run_command(config("seq", {"nope"})), UsageError);
    CHECK_THROWS_AS(run_command(config("identities", {"9.9"})), UsageError);
    CHECK_THROWS_AS(run_command(config("series", {"9.9"})), UsageError);
    CHECK_THROWS_AS(run_command(config("congruences", {"C9"})), UsageError);
    auto p = config("congruences", {"1.5"});
    p.p_min = 2;
    CHECK_THROWS_AS(run_command(p), UsageError);
    p.p_min = 3;
    p.p_max = 20000;
    CHECK_THROWS_AS(run_command(p), UsageError);
    auto m = config("series", {"L3.2"});
    m.m = {"4"};
    CHECK_THROWS_AS(run_command(m), UsageError);
    auto s = config("series");
    s.suite = "maybe";
    CHECK_THROWS_AS(run_command(s), UsageError);
    auto d = config("series", {"R4"});
    d.digits = 5000;
    CHECK_THROWS_AS(run_command(d), UsageError);
}

TEST_CASE("identities command") {
    auto c = config("identities", {"2.1"});
    c.n_max = 50;
    const auto r = run_command(c);
    CHECK(r.items.size() == 51);
    CHECK(r.exit_code == 0);
    for (const auto& it : r.items) CHECK(it.result == "pass");
    auto rec = config("identities", {"REC_2_1"});
    rec.n_max = 10;
    const auto rr = run_command(rec);
    CHECK(rr.items.size() == 2 * 9 + 1);
    CHECK(rr.exit_code == 0);
}

TEST_CASE("series command and exit codes") {
    auto c = config("series", {"R4", "1.9"});
    auto r = run_command(c);
    CHECK(r.items.size() == 2);
    CHECK(r.exit_code == 0);
    c.max_terms = 3;  // a proved series that cannot certify is not ok
    r = run_command(c);
    CHECK(r.exit_code == 1);
    auto l = config("series", {"L3.2"});
    l.digits = 20;
    r = run_command(l);
    CHECK(r.items.size() == 4);
    CHECK(r.exit_code == 0);
}

TEST_CASE("congruence findings only fail the run with strict conjectures") {
    auto c = config("congruences", {"C5.8"});
    c.p_max = 13;
    auto r = run_command(c);
    CHECK(r.exit_code == 0);
    bool finding = false;
    for (const auto& it : r.items) {
        if (it.id == "C5.8a" && it.index == 3) {
            finding = true;
            CHECK(it.result == "fail");
            CHECK(it.detail["flag"] == "FINDING");
            CHECK(it.detail["exact_recheck"] == true);
        }
    }
    CHECK(finding);
    c.strict_conjectures = true;
    CHECK(run_command(c).exit_code == 1);
}

TEST_CASE("report bodies are identical across worker counts") {
    auto c = config("congruences");
    c.suite = "proved";
    c.p_max = 200;
    c.workers = 1;
    const std::string one = body(run_command(c));
    TermStore::global().clear();
    c.workers = 8;
    const std::string eight = body(run_command(c));
    CHECK(one == eight);
}

TEST_CASE("cold and warm cache runs give the same body") {
    const std::string path = "piforge_test_report.cache";
    std::remove(path.c_str());
    auto c = config("congruences", {"C5.4", "1.6"});
    c.p_max = 150;
    c.cache_path = path;
    TermStore::global().clear();
    const auto cold = run_command(c);
    CHECK(cold.warnings.empty());
    TermStore::global().clear();
    const auto warm = run_command(c);
    CHECK(warm.warnings.empty());
    CHECK(body(cold) == body(warm));
    CHECK(report_json(warm)["timings"]["cache"] == path);

    std::ofstream(path, std::ios::app) << "garbage line\n";
    TermStore::global().clear();
    const auto bad = run_command(c);
    CHECK(bad.warnings.size() == 1);
    CHECK(body(bad) == body(cold));
    std::remove(path.c_str());
}
