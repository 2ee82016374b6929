#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "monobound/bounds.hpp"
#include "monobound/cli/app.hpp"
#include "monobound/cli/json_writer.hpp"
#include "monobound/cli/specs.hpp"
#include "monobound/error.hpp"

namespace mb = monobound;
namespace cli = monobound::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempFiles {
 public:
  TempFiles() {
    dir_ = std::filesystem::temp_directory_path() /
           ("monobound_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(dir_);
  }
  ~TempFiles() { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto path = dir_ / name;
    std::ofstream(path) << body;
    return path.string();
  }

 private:
  std::filesystem::path dir_;
};

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

}  // namespace

TEST(CliBound, WorkedExampleJson) {
  TempFiles tmp;
  const auto w = tmp.write("w.csv", "0.2,0.3,0.5\n");
  const auto r = run({"bound", "--weights", w, "--fn", "power:k=2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["t_n"].get<double>(), 0.417, 1e-12);
  EXPECT_NEAR(j["integral"].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(j["integral_source"], "closed_form");
  EXPECT_NEAR(j["gap"].get<double>(), 2.0 / 3.0 - 0.417, 1e-12);
  EXPECT_EQ(j["gap_bound"].get<double>(), 0.5);
  EXPECT_EQ(j["strict"], true);
  EXPECT_NEAR(j["abel_value"].get<double>(), 0.417, 1e-12);
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j.size(), 8u);
}

TEST(CliBound, JsonRoundTripIsBitExact) {
  TempFiles tmp;
  const auto w = tmp.write("w.json", "[0.2, 0.3, 0.5]");
  const auto lib = mb::bound_report(
      mb::MonotoneFunction::exponential(1),
      mb::cumulative(mb::WeightVector::from_weights(std::vector<double>{0.2, 0.3, 0.5})));
  const auto r = run({"bound", "--weights", w, "--fn", "exp:lambda=1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(bits(j["t_n"].get<double>()), bits(lib.t_n));
  EXPECT_EQ(bits(j["integral"].get<double>()), bits(lib.integral));
  EXPECT_EQ(bits(j["gap"].get<double>()), bits(lib.gap));
  EXPECT_EQ(bits(j["gap_bound"].get<double>()), bits(lib.gap_bound));
  EXPECT_EQ(bits(j["abel_value"].get<double>()), bits(lib.abel_value));
}

TEST(CliBound, ConstantFunctionHasZeroGap) {
  TempFiles tmp;
  const auto w = tmp.write("w.txt", "1.0\n");
  const auto r = run({"bound", "--weights", w, "--fn", "const:c=7", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["t_n"].get<double>(), 7.0);
  EXPECT_EQ(j["gap"].get<double>(), 0.0);
  EXPECT_EQ(j["gap_bound"].get<double>(), 0.0);
  EXPECT_EQ(j["strict"], false);
}

TEST(CliBound, UniformReciprocal) {
  const auto r = run({"bound", "--uniform", "10", "--fn", "recip", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["integral"].get<double>(), std::numbers::ln2, 1e-15);
  EXPECT_EQ(j["n"], 10);
  EXPECT_LT(j["t_n"].get<double>(), j["integral"].get<double>());
}

TEST(CliBound, TextAndJsonAgree) {
  const auto t = run({"bound", "--uniform", "7", "--fn", "trig"});
  const auto j = run({"bound", "--uniform", "7", "--fn", "trig", "--json"});
  ASSERT_EQ(t.code, 0);
  ASSERT_EQ(j.code, 0);
  const auto doc = json::parse(j.out);
  for (const char* key : {"t_n", "integral", "gap", "gap_bound", "abel_value"}) {
    const std::string expected = cli::format_number(doc[key].get<double>());
    std::istringstream lines(t.out);
    std::string line;
    bool found = false;
    while (std::getline(lines, line)) {
      std::istringstream fields(line);
      std::string k;
      std::string v;
      fields >> k >> v;
      if (k == key) {
        EXPECT_EQ(v, expected) << key;
        found = true;
      }
    }
    EXPECT_TRUE(found) << key;
  }
}

TEST(CliBound, NormalizeFlag) {
  TempFiles tmp;
  const auto w = tmp.write("w.csv", "2 3 5");
  EXPECT_EQ(run({"bound", "--weights", w, "--fn", "power:k=2"}).code, cli::kExitDomainError);
  const auto r = run({"bound", "--weights", w, "--normalize", "--fn", "power:k=2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(json::parse(r.out)["t_n"].get<double>(), 0.417, 1e-12);
}

TEST(CliBound, TabulatedFunctionUsesQuadrature) {
  TempFiles tmp;
  const auto knots = tmp.write("g.txt", "# x, g(x)\n0,1\n0.5,0.25\n1,0\n");
  const auto r = run({"bound", "--uniform", "4", "--fn", "table:@" + knots, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["integral_source"], "quadrature");
  EXPECT_NEAR(j["integral"].get<double>(), 0.375, 1e-10);
}

TEST(CliEnclose, LowerAndUpper) {
  const auto r = run({"enclose", "--uniform", "4", "--fn", "linear:b=1,m=-1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["lower"].get<double>(), 0.375);
  EXPECT_DOUBLE_EQ(j["upper"].get<double>(), 0.625);
  EXPECT_DOUBLE_EQ(j["width"].get<double>(), 0.25);
  EXPECT_EQ(j["holds"], true);
}

TEST(CliAbel, MatchesDirectSum) {
  TempFiles tmp;
  const auto w = tmp.write("w.csv", "0.2,0.3,0.5");
  const auto r = run({"abel", "--weights", w, "--fn", "power:k=2", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["abel_value"].get<double>(), 0.417, 1e-12);
  EXPECT_LE(std::abs(j["difference"].get<double>()), 1e-12);
  EXPECT_EQ(j["terms"].size(), 2u);  // n - 1 summands
}

TEST(CliRefine, PowerComplementRows) {
  const auto r = run({"refine", "--uniform", "1", "--fn", "power:k=2", "--depth", "3", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = json::parse(r.out)["rows"];
  ASSERT_EQ(rows.size(), 4u);
  const double expected[] = {0.0, 0.375, 0.53125, 0.6015625};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rows[i]["n"], 1u << i);
    EXPECT_DOUBLE_EQ(rows[i]["t_n"].get<double>(), expected[i]);
  }
  EXPECT_EQ(run({"refine", "--uniform", "1", "--fn", "trig", "--depth", "0"}).code,
            cli::kExitParseError);
}

TEST(CliTransform, Examples) {
  struct Case {
    const char* density;
    const char* fn;
    double expected;
    double tol;
  };
  for (const auto& c : {Case{"uniform", "trig", 0.6366197724, 1e-10},
                        Case{"poly:0,2", "power:k=2", 2.0 / 3.0, 1e-10},
                        Case{"tri:peak=0.5", "const:c=1", 1.0, 1e-12}}) {
    const auto r = run({"transform-check", "--density", c.density, "--fn", c.fn, "--json"});
    ASSERT_EQ(r.code, 0) << c.density << " " << r.err;
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["lhs"].get<double>(), c.expected, c.tol) << c.density;
    EXPECT_NEAR(j["rhs"].get<double>(), c.expected, c.tol) << c.density;
    EXPECT_EQ(j["pass"], true);
  }
  EXPECT_EQ(run({"transform-check", "--density", "poly:0,1", "--fn", "trig"}).code,
            cli::kExitDomainError);
}

TEST(CliCatalog, ListsIntegrals) {
  const auto r = run({"catalog", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = json::parse(r.out);
  ASSERT_EQ(rows.size(), mb::catalog_entries().size());
  bool saw_log = false;
  bool saw_exp2 = false;
  for (const auto& row : rows) {
    if (row["spec"] == "log") {
      EXPECT_NEAR(row["integral"].get<double>(), 2 * std::numbers::ln2 - 1, 1e-15);
      saw_log = true;
    }
    if (row["spec"] == "exp:lambda=2") {
      EXPECT_NEAR(row["integral"].get<double>(), 0.4323323584, 1e-10);
      saw_exp2 = true;
    }
    // Every listed spec parses back to the same function.
    const auto g = cli::parse_function_spec(row["spec"].get<std::string>());
    EXPECT_EQ(g.formula(), row["formula"].get<std::string>());
  }
  EXPECT_TRUE(saw_log);
  EXPECT_TRUE(saw_exp2);
}

TEST(CliMajorize, Verdicts) {
  TempFiles tmp;
  const auto x = tmp.write("x.csv", "0.5,0.5");
  const auto y = tmp.write("y.csv", "1,0");
  const auto y3 = tmp.write("y3.csv", "0.6,0.3,0.1");
  const auto r = run({"majorize", "--x", x, "--y", y, "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["relation"], "x_majorized_by_y");
  const auto text = run({"majorize", "--x", x, "--y", y});
  EXPECT_NE(text.out.find("x ≺ y"), std::string::npos);

  const auto k = run({"karamata", "--x", x, "--y", y, "--fn", "square", "--json"});
  ASSERT_EQ(k.code, 0) << k.err;
  EXPECT_DOUBLE_EQ(json::parse(k.out)["margin"].get<double>(), 0.5);
  EXPECT_EQ(json::parse(k.out)["pass"], true);

  EXPECT_EQ(run({"majorize", "--x", x, "--y", y3}).code, cli::kExitDomainError);
  EXPECT_EQ(run({"karamata", "--x", y, "--y", x, "--fn", "square"}).code,
            cli::kExitDomainError);
  EXPECT_EQ(run({"karamata", "--x", x, "--y", y, "--fn", "power:k=2"}).code,
            cli::kExitDomainError);
}

TEST(CliMajorize, GeneratedFromSeed) {
  const auto r = run({"majorize", "--seed", "42", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rel = json::parse(r.out)["relation"].get<std::string>();
  EXPECT_TRUE(rel == "x_majorized_by_y" || rel == "both") << rel;
  const auto k = run({"karamata", "--seed", "42", "--fn", "exp", "--json"});
  ASSERT_EQ(k.code, 0) << k.err;
  EXPECT_EQ(json::parse(k.out)["pass"], true);
}

TEST(CliErrors, ParseFailuresExitOne) {
  EXPECT_EQ(run({"bound", "--uniform", "10", "--fn", "bogus"}).code, cli::kExitParseError);
  EXPECT_EQ(run({"bound", "--uniform", "10", "--fn", "power:k=abc"}).code, cli::kExitParseError);
  EXPECT_EQ(run({"bound", "--uniform", "10"}).code, cli::kExitParseError);
  EXPECT_EQ(run({"bound", "--fn", "trig"}).code, cli::kExitParseError);
  EXPECT_EQ(run({"nosuchcommand"}).code, cli::kExitParseError);
  EXPECT_EQ(run({}).code, cli::kExitParseError);
  TempFiles tmp;
  const auto w = tmp.write("w.csv", "0.5,abc");
  EXPECT_EQ(run({"bound", "--weights", w, "--fn", "trig"}).code, cli::kExitParseError);
  EXPECT_EQ(run({"bound", "--weights", "/nonexistent/weights.csv", "--fn", "trig"}).code,
            cli::kExitParseError);
}

TEST(CliErrors, DomainFailuresExitTwo) {
  TempFiles tmp;
  const auto zero = tmp.write("zero.csv", "0.5,0,0.5");
  const auto r = run({"bound", "--weights", zero, "--fn", "trig"});
  EXPECT_EQ(r.code, cli::kExitDomainError);
  EXPECT_FALSE(r.err.empty());
  const auto bump = tmp.write("bump.txt", "0 0\n0.5 1\n1 0\n");
  EXPECT_EQ(run({"bound", "--uniform", "4", "--fn", "table:@" + bump}).code,
            cli::kExitDomainError);
  EXPECT_EQ(run({"bound", "--uniform", "4", "--fn", "power:k=-1"}).code, cli::kExitDomainError);
}

TEST(CliErrors, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bound"), std::string::npos);
}

TEST(Specs, FunctionGrammar) {
  EXPECT_EQ(cli::parse_function_spec("power:k=2.5").formula(),
            mb::MonotoneFunction::power_complement(2.5).formula());
  EXPECT_EQ(cli::parse_function_spec("exp:lambda=3")(0.0), 1.0);
  EXPECT_EQ(cli::parse_function_spec("const:c=-4")(0.5), -4.0);
  EXPECT_EQ(cli::parse_function_spec("linear:m=2,b=1")(0.5), 2.0);
  EXPECT_EQ(cli::parse_function_spec("linear:b=1,m=2")(0.5), 2.0);
  for (const char* bad : {"", "power", "power:k=", "power:q=2", "exp:lambda=inf", "log:x=1",
                          "linear:m=1", "linear:m=1,m=2", "power:k=2 ", "table:nofile"}) {
    try {
      cli::parse_function_spec(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const mb::Error& e) {
      EXPECT_EQ(e.code(), mb::ErrorCode::ParseError) << bad;
    }
  }
}

TEST(Specs, DensityAndConvexGrammar) {
  EXPECT_EQ(cli::parse_density_spec("uniform")(0.3), 1.0);
  EXPECT_DOUBLE_EQ(cli::parse_density_spec("poly:0,2")(0.25), 0.5);
  EXPECT_DOUBLE_EQ(cli::parse_density_spec("tri:peak=0.5")(0.5), 2.0);
  EXPECT_THROW(cli::parse_density_spec("poly:"), mb::Error);
  EXPECT_THROW(cli::parse_density_spec("gauss"), mb::Error);
  EXPECT_EQ(cli::parse_convex_spec("square")(3.0), 9.0);
  EXPECT_EQ(cli::parse_convex_spec("absdev:c=1")(-1.0), 2.0);
  EXPECT_THROW(cli::parse_convex_spec("cube"), mb::Error);
}

TEST(Specs, Numbers) {
  EXPECT_EQ(cli::parse_numbers("[0.2, 0.3, 0.5]"), (std::vector<double>{0.2, 0.3, 0.5}));
  EXPECT_EQ(cli::parse_numbers("# weights\n0.2; 0.3\n0.5\n"),
            (std::vector<double>{0.2, 0.3, 0.5}));
  EXPECT_EQ(cli::parse_real("+1e-3"), 1e-3);
  EXPECT_THROW(cli::parse_real("nan"), mb::Error);
  EXPECT_THROW(cli::parse_numbers("[1, \"a\"]"), mb::Error);
  EXPECT_THROW(cli::parse_numbers("1,,2x"), mb::Error);
  const auto knots = cli::parse_knots("0 1\n# mid\n0.5,0.5\n1 0\n");
  ASSERT_EQ(knots.size(), 3u);
  EXPECT_EQ(knots[1], (std::pair<double, double>{0.5, 0.5}));
}

TEST(JsonWriter, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 2.0 / 3.0 - 0.417, 1e-300, -5e-324, 12345678.9}) {
    const auto s = cli::format_number(v);
    EXPECT_EQ(bits(json::parse(s).get<double>()), bits(v)) << s;
  }
  EXPECT_EQ(cli::format_number(NAN), "null");
  EXPECT_EQ(cli::json_string("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
}
