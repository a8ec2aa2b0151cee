// Drives the command-line binary through a shell and checks exit codes and output.

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args) {
    const std::string cmd = std::string(EQUI_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct Scratch {
    fs::path dir;
    Scratch() : dir(fs::temp_directory_path() / ("equi_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string write(const std::string &name, const std::string &text) const {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
};

}  // namespace

TEST_CASE("frame") {
    Run r = run("frame --order 3 --format csv");
    CHECK(r.code == 0);
    CHECK(r.out ==
          "word;coefficient_num;coefficient_den;v_exp;z_exp\n"
          "(1);1;1;1;-1\n(2);1;2;2;-1\n(3);1;3;3;-1\n(1,1);1;2;2;-2\n"
          "(1,2);1;3;3;-2\n(2,1);1;6;3;-2\n(1,1,1);1;6;3;-3\n");
    CHECK(run("frame --order 1 --format csv").out == "word;coefficient_num;coefficient_den;v_exp;z_exp\n(1);1;1;1;-1\n");
    CHECK(run("frame --order 0").code == 2);
    CHECK(run("frame --order 13").code == 2);
    CHECK(run("frame --format xml").code == 2);
    CHECK(run("").code == 2);

    Run j = run("frame --order 4");
    CHECK(j.code == 0);
    CHECK(Json::parse(j.out)["rows"].size() == 15);
    CHECK(run("frame --order 4").out == j.out);
    Run oracle = run("frame --order 3 --oracle-steps 20000");
    CHECK(Json::parse(oracle.out)["oracle"]["max_error"].get<double>() < 1e-3);
}

TEST_CASE("truncation from the environment") {
    Run env = run("--trunc 2 frame --format csv");
    CHECK(env.out == "word;coefficient_num;coefficient_den;v_exp;z_exp\n(1);1;1;1;-1\n(2);1;2;2;-1\n(1,1);1;2;2;-2\n");
    setenv("EQUI_TRUNC", "2", 1);
    CHECK(run("frame --format csv").out == env.out);
    setenv("EQUI_TRUNC", "bogus", 1);
    CHECK(run("frame").code == 2);
    unsetenv("EQUI_TRUNC");
}

TEST_CASE("birkhoff") {
    Scratch s;
    // a/z + b on the letter (1): the minus part is -a/z
    const std::string phi = s.write("phi.json", R"({"presentation": "shuffle", "trunc": 2, "values": [
        {"key": [1], "series": {"coeffs": [{"z": -1, "monomials": [{"value": "3/1"}]},
                                            {"z": 0, "monomials": [{"value": "5/1"}]}]}}]})");
    const std::string minus_path = (s.dir / "minus.json").string();
    Run r = run("birkhoff " + phi + " --minus-out " + minus_path);
    REQUIRE(r.code == 0);
    const Json out = Json::parse(r.out);
    CHECK(out["report"]["reconstructed"] == "exact");
    const Json minus = out["minus"];
    CHECK(minus["values"][1]["key"] == "(1)");
    CHECK(minus["values"][1]["series"]["coeffs"][0]["monomials"][0]["value"] == "-3/1");
    std::ifstream f(minus_path);
    CHECK(Json::parse(f) == minus);
    CHECK(run("birkhoff " + phi).out == r.out);

    const std::string reg = s.write("reg.json", R"J({"presentation": "rooted_trees", "trunc": 3, "values": [
        {"key": "()", "series": "2/1"}]})J");
    const Json regular = Json::parse(run("birkhoff " + reg).out);
    CHECK(regular["minus"]["values"].size() == 1);

    // the minus part reads back as a pole-only character: its plus part is the counit
    const std::string again = s.write("again.json", out["minus"].dump());
    const Json second = Json::parse(run("birkhoff " + again).out);
    CHECK(second["plus"]["values"].size() == 1);
    CHECK(second["minus"]["values"][1]["series"]["coeffs"][0]["monomials"][0]["value"] == "3/1");

    CHECK(run("birkhoff " + s.write("bad.json", "{\"presentation\": 3}")).code == 3);
    CHECK(run("birkhoff " + (s.dir / "missing.json").string()).code == 3);
}

TEST_CASE("verify, classify and from-beta") {
    Scratch s;
    const std::string beta = s.write("beta.json", R"({"trunc": 3, "terms": [{"word": [1], "coeff": "1/1"},
                                                                           {"word": [2], "coeff": "1/1"}]})");
    Run conn = run("from-beta " + beta);
    REQUIRE(conn.code == 0);
    const std::string conn_path = s.write("conn.json", conn.out);
    Run v = run("verify " + conn_path);
    CHECK(v.code == 0);
    const Json verdict = Json::parse(v.out);
    CHECK(verdict["flat"] == true);
    CHECK(verdict["equisingular"] == true);
    CHECK(verdict["obstruction"].is_null());

    const std::string e2 = s.write("e2.json", R"({"trunc": 3, "terms": [{"word": [2], "coeff": "1/1"}]})");
    const std::string e2conn = s.write("e2conn.json", run("from-beta " + e2).out);
    Run c = run("classify " + e2conn);
    CHECK(c.code == 0);
    CHECK(Json::parse(c.out)["terms"].size() == 1);
    CHECK(Json::parse(c.out)["terms"][0]["word"] == Json::array({2}));
    // from-beta . classify is a round trip on its own output
    CHECK(run("from-beta " + s.write("beta2.json", c.out)).out == run("from-beta " + e2).out);

    const std::string zero = s.write("zero.json", R"({"trunc": 3, "a": [], "b": []})");
    const Json zv = Json::parse(run("verify " + zero).out);
    CHECK(zv["flat"] == true);
    CHECK(zv["equisingular"] == true);
    CHECK(Json::parse(run("classify " + zero).out)["terms"].empty());

    const std::string nonflat = s.write("nonflat.json", R"({"trunc": 2, "a": [{"terms": [{"word": [1],
        "coeff": {"coeffs": [{"z": -1, "monomials": [{"value": "1/1"}]}]}}]}], "b": []})");
    const Json nv = Json::parse(run("verify " + nonflat).out);
    CHECK(nv["flat"] == false);
    CHECK(nv["obstruction"]["degree"] == 1);
    CHECK(run("classify " + nonflat).code == 5);
    CHECK(run("verify " + s.write("junk.json", "{")).code == 3);

    // verdicts are stable across runs
    CHECK(run("verify " + conn_path).out == v.out);
}

TEST_CASE("morphism") {
    Scratch s;
    const std::string e = s.write("e.json", R"({"dims": {"0": 1, "1": 1}, "beta": [{"n": 1, "matrix": [["0", "0"], ["1", "0"]]}]})");
    const std::string q1 = s.write("q1.json", R"({"dims": {"1": 1}, "beta": []})");
    const std::string id = s.write("id.json", R"({"blocks": [{"degree": 0, "matrix": [["1"]]}, {"degree": 1, "matrix": [["1"]]}]})");
    const std::string inc = s.write("inc.json", R"({"blocks": [{"degree": 1, "matrix": [["1"]]}]})");
    const std::string proj = s.write("proj.json", R"({"blocks": [{"degree": 1, "matrix": [["1"]]}]})");

    Json r = Json::parse(run("morphism " + e + " " + e + " " + id).out);
    CHECK(r["morphism"] == true);
    CHECK(r["hom_dimension"] == 1);
    CHECK(Json::parse(run("morphism " + q1 + " " + e + " " + inc).out)["morphism"] == true);
    CHECK(Json::parse(run("morphism " + e + " " + q1 + " " + proj).out)["morphism"] == false);

    const std::string skew = s.write("skew.json", R"({"dims": {"0": 1, "1": 1}, "beta": [{"n": 1, "matrix": [["0", "1"], ["0", "0"]]}]})");
    CHECK(run("morphism " + skew + " " + e + " " + id).code == 3);
    CHECK(Json::parse(run("morphism " + e + " " + e + " " + inc).out)["morphism"] == false);
    const std::string wide = s.write("wide.json", R"({"blocks": [{"degree": 1, "matrix": [["1", "0"]]}]})");
    CHECK(run("morphism " + e + " " + e + " " + wide).code == 3);
}
