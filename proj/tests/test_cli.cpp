// End-to-end tests for the charvar command-line tool: pinned text outputs,
// exit-code contract, JSON shape validation against the shipped schema, and
// byte-identical determinism across repeated invocations.

#include <catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <regex>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#ifndef CHARVAR_CLI_PATH
#error "CHARVAR_CLI_PATH must point at the built command-line binary"
#endif
#ifndef CHARVAR_SCHEMA_PATH
#error "CHARVAR_SCHEMA_PATH must point at the shipped JSON schema"
#endif

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(CHARVAR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  CliResult res;
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.output = std::move(out);
  return res;
}

nlohmann::json load_schema() {
  std::ifstream in(CHARVAR_SCHEMA_PATH);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

// Minimal recursive validator covering the subset of JSON Schema the shipped
// file uses: $ref into definitions, anyOf, type, enum, pattern, minimum,
// required, properties, items.
class SchemaValidator {
 public:
  explicit SchemaValidator(nlohmann::json schema)
      : schema_(std::move(schema)) {}

  bool validate(const nlohmann::json& doc) const {
    return check(schema_, doc);
  }

 private:
  const nlohmann::json& resolve(const nlohmann::json& node) const {
    if (node.is_object() && node.contains("$ref")) {
      const std::string ref = node["$ref"].get<std::string>();
      const std::string prefix = "#/definitions/";
      REQUIRE(ref.rfind(prefix, 0) == 0);
      return schema_.at("definitions").at(ref.substr(prefix.size()));
    }
    return node;
  }

  static bool type_matches(const std::string& type,
                           const nlohmann::json& doc) {
    if (type == "string") return doc.is_string();
    if (type == "integer") return doc.is_number_integer();
    if (type == "number") return doc.is_number();
    if (type == "boolean") return doc.is_boolean();
    if (type == "array") return doc.is_array();
    if (type == "object") return doc.is_object();
    return false;
  }

  bool check(const nlohmann::json& raw, const nlohmann::json& doc) const {
    const nlohmann::json& node = resolve(raw);
    if (node.contains("anyOf")) {
      bool any = false;
      for (const auto& branch : node["anyOf"]) {
        if (check(branch, doc)) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    if (node.contains("type") &&
        !type_matches(node["type"].get<std::string>(), doc)) {
      return false;
    }
    if (node.contains("enum")) {
      bool hit = false;
      for (const auto& v : node["enum"]) {
        if (v == doc) {
          hit = true;
          break;
        }
      }
      if (!hit) return false;
    }
    if (node.contains("pattern")) {
      if (!doc.is_string()) return false;
      const std::regex re(node["pattern"].get<std::string>());
      if (!std::regex_search(doc.get<std::string>(), re)) return false;
    }
    if (node.contains("minimum")) {
      if (!doc.is_number()) return false;
      if (doc.get<double>() < node["minimum"].get<double>()) return false;
    }
    if (node.contains("required")) {
      if (!doc.is_object()) return false;
      for (const auto& key : node["required"]) {
        if (!doc.contains(key.get<std::string>())) return false;
      }
    }
    if (node.contains("properties") && doc.is_object()) {
      for (const auto& [key, sub] : node["properties"].items()) {
        if (doc.contains(key) && !check(sub, doc.at(key))) return false;
      }
    }
    if (node.contains("items") && doc.is_array()) {
      for (const auto& item : doc) {
        if (!check(node["items"], item)) return false;
      }
    }
    return true;
  }

  nlohmann::json schema_;
};

// Drop the trailing (elapsed-time) column from each csv row so timing noise
// does not defeat determinism comparisons.
std::string strip_last_csv_column(const std::string& text) {
  std::string out;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    const size_t comma = line.rfind(',');
    if (comma != std::string::npos) line.resize(comma);
    out += line;
    out += '\n';
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("pinned text outputs for compute, eval, and euler", "[cli]") {
  CHECK(run_cli("compute --group sl3 --r 1").output == "q^2\n");
  CHECK(run_cli("compute --group sl2 --r 2").output == "q^3\n");
  CHECK(run_cli("compute --group pgl2 --r 2").output == "q^3\n");
  CHECK(run_cli("eval --group sl3 --r 1 --q 4").output == "16\n");
  CHECK(run_cli("eval --group sl2 --r 2 --q 3").output == "27\n");
  CHECK(run_cli("eval --group sl3 --r 2 --q 1").output == "2\n");
  CHECK(run_cli("eval --group pgl3 --r 2 --q 1").output == "2\n");
  CHECK(run_cli("eval --group sl2 --r 1 --q 0").output == "0\n");
  CHECK(run_cli("euler --group sl2 --r 3").output == "chi_M=2\n");

  const CliResult e3 = run_cli("euler --group sl3 --r 3");
  CHECK(e3.exit_code == 0);
  CHECK(e3.output.find("chi_M=6\n") != std::string::npos);

  const CliResult e2 = run_cli("euler --group sl3 --r 2");
  CHECK(e2.exit_code == 0);
  CHECK(e2.output.find("chi_M=2\n") != std::string::npos);
  CHECK(e2.output.find("chi_abelian=3\n") != std::string::npos);
  CHECK(e2.output.find("note:") != std::string::npos);
  CHECK(e2.output.find("asserts the computed value") != std::string::npos);
}

TEST_CASE("invalid invocations exit with code 2", "[cli]") {
  CHECK(run_cli("euler --group sl3 --r 1").exit_code == 2);
  CHECK(run_cli("euler --group pgl3 --r 1").exit_code == 2);
  CHECK(run_cli("compute --group so5 --r 2").exit_code == 2);
  CHECK(run_cli("compute --group sl2").exit_code == 2);
  CHECK(run_cli("compute --group sl2 --r 0").exit_code == 2);
  CHECK(run_cli("compute --group sl2 --r 99").exit_code == 2);
  CHECK(run_cli("compute --group sl2 --r 2 --format yaml").exit_code == 2);
  CHECK(run_cli("eval --group sl2 --r 1 --q -3").exit_code == 2);
  CHECK(run_cli("eval --group sl2 --r 1 --q 12x4").exit_code == 2);
  CHECK(run_cli("eval --group sl2 --r 1").exit_code == 2);
  CHECK(run_cli("verify --level sometimes").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);

  // Well-formed requests succeed.
  CHECK(run_cli("compute --group pgl3 --r 4").exit_code == 0);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("json outputs validate against the shipped schema", "[cli]") {
  const SchemaValidator validator(load_schema());

  const std::vector<std::string> invocations = {
      "compute --group sl3 --r 2 --format json",
      "compute --group sl3 --r 2 --strata --format json",
      "compute --group pgl2 --r 3 --strata --format json",
      "eval --group sl2 --r 3 --q 7 --format json",
      "euler --group sl3 --r 4 --format json",
      "euler --group sl2 --r 2 --format json",
  };
  for (const std::string& args : invocations) {
    INFO(args);
    const CliResult res = run_cli(args);
    CHECK(res.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(res.output);
    CHECK(doc.at("schema") == "charvar/1");
    CHECK(validator.validate(doc));
  }

  // Field spot checks.
  const nlohmann::json epoly = nlohmann::json::parse(
      run_cli("compute --group sl3 --r 2 --format json").output);
  CHECK(epoly.at("kind") == "epoly");
  CHECK(epoly.at("group") == "sl3");
  CHECK(epoly.at("r") == 2);
  CHECK(epoly.at("degree") == 8);

  const nlohmann::json ev = nlohmann::json::parse(
      run_cli("eval --group sl3 --r 1 --q 4 --format json").output);
  CHECK(ev.at("q") == "4");
  CHECK(ev.at("value") == "16");

  const nlohmann::json eu = nlohmann::json::parse(
      run_cli("euler --group sl3 --r 2 --format json").output);
  CHECK(eu.at("chi_M") == "2");
  CHECK(eu.at("chi_abelian") == "3");
  CHECK(eu.at("chi_abelian_claimed") == "1");
  CHECK(eu.at("abelian_discrepancy") == true);

  const nlohmann::json strata = nlohmann::json::parse(
      run_cli("compute --group sl3 --r 2 --strata --format json").output);
  CHECK(strata.at("kind") == "strata");
  CHECK(strata.at("strata").is_array());
  CHECK(strata.at("strata").size() >= 20);
}

TEST_CASE("verify quick passes end to end", "[cli]") {
  const CliResult text = run_cli("verify --level quick");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("all checks passed\n") != std::string::npos);
  CHECK(text.output.find("FAIL") == std::string::npos);

  const CliResult json_res = run_cli("verify --level quick --format json");
  CHECK(json_res.exit_code == 0);
  const nlohmann::json arr = nlohmann::json::parse(json_res.output);
  REQUIRE(arr.is_array());
  CHECK(arr.size() == 24);  // 6 symbolic checks + 18 counting reports
  const SchemaValidator validator(load_schema());
  CHECK(validator.validate(arr));
  size_t symbolic = 0, counts = 0;
  for (const auto& item : arr) {
    if (item.at("kind") == "symbolic") {
      ++symbolic;
      CHECK(item.at("passed") == true);
    } else {
      ++counts;
      CHECK(item.at("matched") == true);
      CHECK(item.at("diagnostic") == "");
    }
  }
  CHECK(symbolic == 6);
  CHECK(counts == 18);

  const CliResult csv = run_cli("verify --level quick --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.rfind("n,q,r,predicate,count,expected,match,seconds\n",
                         0) == 0);
  CHECK(csv.output.find(",no,") == std::string::npos);
}

TEST_CASE("repeated invocations are byte-identical", "[cli]") {
  const std::vector<std::string> invocations = {
      "compute --group sl3 --r 3 --strata --format json",
      "compute --group sl3 --r 3 --strata --format csv",
      "compute --group pgl3 --r 2 --strata",
      "euler --group sl3 --r 5 --format json",
      "eval --group pgl3 --r 3 --q 1000000007",
      "verify --level quick",  // text output carries no timings
  };
  for (const std::string& args : invocations) {
    INFO(args);
    const CliResult a = run_cli(args);
    const CliResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
  }

  // The csv verification table embeds elapsed seconds in its final column;
  // everything before it must be reproducible.
  const std::string c1 =
      strip_last_csv_column(run_cli("verify --level quick --format csv").output);
  const std::string c2 =
      strip_last_csv_column(run_cli("verify --level quick --format csv").output);
  CHECK(c1 == c2);
}

TEST_CASE("csv strata table matches the pinned rank-2 golden", "[cli]") {
  const CliResult res = run_cli("compute --group sl2 --r 2 --strata --format csv");
  CHECK(res.exit_code == 0);
  const std::string expected =
      "group,r,id,poly\n"
      "sl2,2,R0,\"4\"\n"
      "sl2,2,R1,\"q^4 - 5*q^2\"\n"
      "sl2,2,R2,\"4*q^3 + 4*q^2 - 4*q - 4\"\n"
      "sl2,2,R3,\"q^5 - 2*q^4 - 4*q^3 + 2*q^2 + 3*q\"\n"
      "sl2,2,Rred,\"q^5 - q^4 + q^2 - q\"\n"
      "sl2,2,Mred,\"q^2 + 1\"\n"
      "sl2,2,Mirr,\"q^3 - q^2 - 1\"\n"
      "sl2,2,M,\"q^3\"\n";
  CHECK(res.output == expected);
}
