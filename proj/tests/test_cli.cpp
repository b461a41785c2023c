#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

#ifndef DIRACSOL_BIN
#define DIRACSOL_BIN "diracsol"
#endif
#ifndef SCHEMA_DIR
#define SCHEMA_DIR "."
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(DIRACSOL_BIN) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int rc = pclose(p);
    return {WEXITSTATUS(rc), out};
}

// minimal structural validator for the subset of JSON Schema the report uses
bool validate(const json& schema, const json& value);

bool type_ok(const std::string& t, const json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    return false;
}

bool validate(const json& schema, const json& value) {
    if (schema.contains("type") && !type_ok(schema["type"], value)) return false;
    if (schema.contains("required"))
        for (const auto& k : schema["required"])
            if (!value.contains(k.get<std::string>())) return false;
    if (schema.contains("properties") && value.is_object()) {
        for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
            if (value.contains(it.key()) && !validate(it.value(), value[it.key()]))
                return false;
    }
    if (schema.contains("items") && value.is_array()) {
        for (const auto& v : value)
            if (!validate(schema["items"], v)) return false;
    }
    return true;
}

} // namespace

TEST_CASE("spectrum: rows ascend toward 1 and output is deterministic") {
    auto r = run("spectrum coulomb --Z=-0.5 --kappa=1 --lambda-bar=0.1 --n=0..3 --format=csv");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    CHECK(line == "n,branch,sign,epsilon,E_nonrel");
    double prev = 0.0;
    int rows = 0;
    while (std::getline(is, line)) {
        auto p1 = line.find(',', line.find(',', line.find(',') + 1) + 1);
        double eps = std::stod(line.substr(p1 + 1));
        CHECK(eps > prev);
        CHECK(eps < 1.0);
        prev = eps;
        ++rows;
    }
    CHECK(rows == 4);

    auto r2 = run("spectrum coulomb --Z=-0.5 --kappa=1 --lambda-bar=0.1 --n=0..3 --format=csv");
    CHECK(r.out == r2.out);  // identical invocations, identical bytes
}

TEST_CASE("spectrum: omega = 0 oscillator gives eps = 1 rows") {
    auto r = run("spectrum oscillator --omega=0 --kappa=1 --lambda-bar=0.1 --n=0..2 --format=csv");
    CHECK(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) CHECK(line.find(",1,") != std::string::npos);
}

TEST_CASE("unknown potential exits 2") {
    auto r = run("spectrum no-such-potential");
    CHECK(r.exit_code == 2);
}

TEST_CASE("domain error exits 3") {
    // |lb Z| >= |kappa| makes gamma imaginary
    auto r = run("spectrum coulomb --Z=-11 --kappa=1 --lambda-bar=0.1 --n=0");
    CHECK(r.exit_code == 3);
}

TEST_CASE("wavefunction CSV and sidecar") {
    std::string csv = "/tmp/diracsol_test_wf.csv";
    auto r = run("wavefunction coulomb --Z=-0.5 --kappa=1 --lambda-bar=0.1 --n=0 "
                 "--points=501 --out=" + csv);
    CHECK(r.exit_code == 0);
    std::ifstream f(csv);
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "r,phi_plus,phi_minus");
    // ground state: the upper column is single-signed
    std::string line;
    int nrows = 0;
    while (std::getline(f, line)) {
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 + 1);
        double up = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        CHECK(up >= 0.0);
        ++nrows;
    }
    CHECK(nrows == 501);
    std::ifstream side(csv + ".json");
    REQUIRE(side.good());
    json js;
    side >> js;
    CHECK(js["state"]["n"] == 0);
    CHECK(js["norm"] == 1.0);
}

TEST_CASE("oscillator irregular lowest state: phi_minus column all zeros") {
    std::string csv = "/tmp/diracsol_test_osc.csv";
    auto r = run("wavefunction oscillator --omega=1 --kappa=-1 --branch=irregular --n=0 "
                 "--lambda-bar=0.1 --points=301 --out=" + csv);
    CHECK(r.exit_code == 0);
    std::ifstream f(csv);
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        auto c2 = line.rfind(',');
        CHECK(std::stod(line.substr(c2 + 1)) == 0.0);
    }
}

TEST_CASE("wavefunction dual-path gap is reported") {
    std::string csv = "/tmp/diracsol_test_rm1.csv";
    auto r = run("wavefunction rosen-morse1 --A=4 --B=2 --range-lambda=1 --kappa=1 "
                 "--lambda-bar=0.1 --n=1 --via=balance --points=4001 --out=" + csv);
    CHECK(r.exit_code == 0);
    std::ifstream side(csv + ".json");
    json js;
    side >> js;
    REQUIRE(js.contains("balance_vs_closed_max_rel_gap"));
    CHECK(js["balance_vs_closed_max_rel_gap"].get<double>() < 1e-6);
}

TEST_CASE("verify single fixture passes; perturbed fails") {
    auto ok = run("verify coulomb-a --out=/tmp/diracsol_verify1.json");
    CHECK(ok.exit_code == 0);
    auto bad = run("verify coulomb-a --perturb-epsilon=1e-3 --out=/dev/null");
    CHECK(bad.exit_code == 1);
}

TEST_CASE("verify --limit-scan prints ratios in range") {
    auto r = run("verify --limit-scan coulomb");
    CHECK(r.exit_code == 0);
    json js = json::parse(r.out);
    for (const auto& c : js["sections"][0]["checks"]) {
        double v = c["value"];
        CHECK(v >= 3.2);
        CHECK(v <= 4.8);
    }
}

TEST_CASE("verify report validates against the shipped schema") {
    auto r = run("verify woods-saxon-a");
    CHECK(r.exit_code == 0);
    json report = json::parse(r.out);
    std::ifstream sf(std::string(SCHEMA_DIR) + "/run_report.schema.json");
    REQUIRE(sf.good());
    json schema;
    sf >> schema;
    CHECK(validate(schema, report));
}

TEST_CASE("maps coulomb prints the three substitutions") {
    auto r = run("maps coulomb --format=json");
    CHECK(r.exit_code == 0);
    json js = json::parse(r.out);
    const auto& first = js["maps"][0];
    CHECK(first["component"] == "upper");
    CHECK(first["branch"] == "regular");
    REQUIRE(first["substitutions"].size() == 3);
    CHECK(first["substitutions"][0]["source"] == "l");
    CHECK(first["substitutions"][0]["target"] == "gamma");
}

TEST_CASE("xpct identity has zero deviation; oscillator->morse under 1e-6") {
    auto id = run("xpct oscillator oscillator --omega=1 --kappa=1 --lambda-bar=0.1 --n=0..2");
    CHECK(id.exit_code == 0);
    json j1 = json::parse(id.out);
    CHECK(j1["max_rel_deviation"].get<double>() == 0.0);

    auto m = run("xpct oscillator morse --A=30 --B=180 --range-lambda=1 --kappa=1 "
                 "--lambda-bar=0.05 --n=0..2");
    CHECK(m.exit_code == 0);
    json j2 = json::parse(m.out);
    CHECK(j2["max_rel_deviation"].get<double>() < 1e-6);
}

TEST_CASE("config file fills missing flags") {
    std::string cfg = "/tmp/diracsol_test_cfg.json";
    {
        std::ofstream f(cfg);
        f << R"({"Z": -0.5, "kappa": 1, "lambda-bar": 0.1})";
    }
    auto r = run("spectrum coulomb --n=0..1 --format=csv --config=" + cfg);
    CHECK(r.exit_code == 0);
    auto direct = run("spectrum coulomb --Z=-0.5 --kappa=1 --lambda-bar=0.1 --n=0..1 --format=csv");
    CHECK(r.out == direct.out);
}

TEST_CASE("verify --all passes on the shipped fixtures") {
    auto r = run("verify --all --out=/tmp/diracsol_all.json");
    CHECK(r.exit_code == 0);
    std::ifstream f("/tmp/diracsol_all.json");
    json js;
    f >> js;
    CHECK(js["pass"] == true);
    CHECK(js["sections"].size() == 8);
}

TEST_CASE("spectrum and sidecar JSON validate against their schemas") {
    auto load = [](const std::string& name) {
        std::ifstream f(std::string(SCHEMA_DIR) + "/" + name);
        REQUIRE(f.good());
        json s;
        f >> s;
        return s;
    };
    auto r = run("spectrum morse --A=30 --B=180 --range-lambda=1 --kappa=1 "
                 "--lambda-bar=0.05 --n=0..2 --format=json");
    CHECK(r.exit_code == 0);
    CHECK(validate(load("spectrum.schema.json"), json::parse(r.out)));

    std::string csv = "/tmp/diracsol_schema_wf.csv";
    auto w = run("wavefunction oscillator --omega=1 --kappa=1 --lambda-bar=0.1 --n=1 "
                 "--points=301 --out=" + csv);
    CHECK(w.exit_code == 0);
    std::ifstream side(csv + ".json");
    json js;
    side >> js;
    CHECK(validate(load("wavefunction_sidecar.schema.json"), js));
}

TEST_CASE("verify reports differ only in the wall-time footer across runs") {
    auto a = run("verify scarf-a");
    auto b = run("verify scarf-a");
    CHECK(a.exit_code == 0);
    json ja = json::parse(a.out), jb = json::parse(b.out);
    CHECK(ja["wall_time_seconds"].is_number());
    ja.erase("wall_time_seconds");
    jb.erase("wall_time_seconds");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("verify accepts bare potential names") {
    auto ok = run("verify coulomb --out=/dev/null");
    CHECK(ok.exit_code == 0);
    auto bad = run("verify coulomb --perturb-epsilon=1e-3 --out=/dev/null");
    CHECK(bad.exit_code == 1);
}
