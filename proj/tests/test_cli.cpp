#include "support.hpp"

#include <cstdlib>

#include <json.hpp>

using namespace fedlab;

namespace
{

SuiteConfig base(std::vector<std::string> suites, std::vector<int> levels = {1, 2})
{
    SuiteConfig c;
    c.suites = std::move(suites);
    c.levels = std::move(levels);
    return c;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("level lists")
    {
        CHECK(parse_levels("1..4") == std::vector<int>{1, 2, 3, 4});
        CHECK(parse_levels("8,16,32,64") == std::vector<int>{8, 16, 32, 64});
        CHECK(parse_levels("1..3,7") == std::vector<int>{1, 2, 3, 7});
        CHECK_THROWS_AS(parse_levels("3,2"), ConfigError);
        CHECK_THROWS_AS(parse_levels("0..2"), ConfigError);
        CHECK_THROWS_AS(parse_levels("x"), ConfigError);
        CHECK_THROWS_AS(parse_levels(""), ConfigError);
    }

    TEST_CASE("config errors precede computation")
    {
        CHECK_THROWS_AS(run_suite(base({"asymptotics"}, {8, 16})), ConfigError);
        CHECK_THROWS_AS(run_suite(base({"nonsense"})), ConfigError);
        SuiteConfig low = base({"flatness"});
        low.order = 2;
        CHECK_THROWS_AS(run_suite(low), ConfigError);
        SuiteConfig expr = base({"star"});
        expr.f = "z +";
        CHECK_THROWS_AS(run_suite(expr), ConfigError);
        SuiteConfig geo = base({"flatness"});
        geo.geometry = "torus";
        CHECK_THROWS_AS(run_suite(geo), ConfigError);
        SuiteConfig alpha = base({"flatness"});
        alpha.alpha = "/does/not/exist";
        CHECK_THROWS_AS(run_suite(alpha), ConfigError);
        SuiteConfig flat = base({"diagram"});
        flat.geometry = "flat:1";
        CHECK_THROWS_AS(run_suite(flat), ConfigError);
    }

    TEST_CASE("diagram rows count")
    {
        const Report r = run_suite(base({"diagram"}, {1, 2, 3, 4, 5}));
        CHECK(r.rows.size() == 15);
        CHECK(r.all_pass());
    }

    TEST_CASE("classify without force gives a not-Killing error row")
    {
        SuiteConfig c = base({"classify"});
        c.f0 = "(z^2+zbar^2)*z*zbar";
        const Report r = run_suite(c);
        REQUIRE(r.rows.size() == 1);
        CHECK(r.rows[0].status == "error");
        CHECK(r.rows[0].defect.find("not-Killing") != std::string::npos);
        c.force = true;
        const Report forced = run_suite(c);
        CHECK(forced.rows[0].status == "pass");
    }

    TEST_CASE("flat geometry runs the applicable default suites")
    {
        SuiteConfig c;
        c.geometry = "flat:1";
        c.f = "z";
        c.g = "zbar";
        c.f0 = "z*zbar";
        c.alpha = "zero";
        const Report r = run_suite(c);
        CHECK(r.all_pass());
        for (const auto &row : r.rows) {
            CHECK(row.suite != "diagram");
        }
    }

    TEST_CASE("determinism across thread counts")
    {
        SuiteConfig c = base({"hamiltonian", "tuynman", "commutator", "roundtrip"}, {1, 2, 3});
        c.threads = 1;
        const std::string one = emit_report(run_suite(c), "json", false);
        c.threads = 3;
        const std::string three = emit_report(run_suite(c), "json", false);
        CHECK(one == three);
    }

    TEST_CASE("report formats")
    {
        Report empty;
        const auto j = nlohmann::json::parse(emit_report(empty, "json"));
        CHECK(j["version"] == kToolVersion);
        CHECK(j["rows"].empty());
        Report r;
        r.rows.push_back({"s", "a,b", "fail", "x|\"y\"", 1.5});
        const std::string csv = emit_report(r, "csv");
        CHECK(csv.rfind("suite,case,status,defect\n", 0) == 0);
        CHECK(csv.find("\"a,b\"") != std::string::npos);
        CHECK(csv.find("\"x|\"\"y\"\"\"") != std::string::npos);
        const std::string md = emit_report(r, "md");
        CHECK(md.find("x\\|\"y\"") != std::string::npos);
        CHECK(emit_report(r, "json", false).find("runtime_ms") == std::string::npos);
        CHECK(emit_report(r, "json", true).find("runtime_ms") != std::string::npos);
        CHECK_THROWS_AS(emit_report(r, "xml"), std::invalid_argument);
        CHECK_FALSE(r.all_pass());
    }

    TEST_CASE("thread cap from the environment")
    {
        ::setenv("FEDOSOV_LAB_THREADS", "3", 1);
        CHECK(thread_cap_from_env() == 3);
        ::setenv("FEDOSOV_LAB_THREADS", "0", 1);
        CHECK(thread_cap_from_env() == 1);
        ::unsetenv("FEDOSOV_LAB_THREADS");
        CHECK(thread_cap_from_env() == 1);
    }

    TEST_CASE("custom alpha from a component file")
    {
        const std::string path = "alpha_components.txt";
        {
            std::FILE *f = std::fopen(path.c_str(), "w");
            REQUIRE(f);
            std::fputs("# alpha_{1 1bar}\n1 1 -2*D^-2\n", f);
            std::fclose(f);
        }
        const FedosovConnection c = make_connection(testing::cp1(), path, 6);
        CHECK(c.residual.is_zero());
        CHECK(c.alpha[0][0] == testing::conn(testing::cp1(), AlphaChoice::canonical, 6).alpha[0][0]);
        std::remove(path.c_str());
    }
}
