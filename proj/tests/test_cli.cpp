#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = h3::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string fixtures = H3_FIXTURES_DIR;

fs::path temp_dir(const std::string& name)
{
    fs::path p = fs::temp_directory_path() / ("h3_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("gamma subcommand")
{
    Run r = run({"--json", "gamma", "--cyclic", "4"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["invariants"]["Gamma(A)"] == "Z/8");
    CHECK(j["invariants"]["oracle"] == "Z/8");
    CHECK(j["invariants"]["structural"] == "Z/8");
    for (const auto& c : j["checks"])
        CHECK(c["verdict"] == "pass");

    Run one = run({"--json", "gamma", "--cyclic", "1"});
    CHECK(one.code == 0);
    CHECK(nlohmann::json::parse(one.out)["invariants"]["Gamma(A)"] == "0");

    CHECK(run({"gamma", "--group", "Z/2+Z/2"}).out.find("Gamma(A) = Z/2 + Z/4 + Z/4") != std::string::npos);
    CHECK(run({"--max-order", "4", "gamma", "--cyclic", "5"}).code == h3::cli::resource_limit);
}

TEST_CASE("ext-check subcommand")
{
    Run r = run({"ext-check", "--group", fixtures + "/q8.json", "--central-subgroup", "-1"});
    CHECK(r.code == 0);
    CHECK(r.out.find("[pass] theorem_2torsion") != std::string::npos);
    CHECK(r.out.find("H_3(G) = Z/8") != std::string::npos);

    Run j = run({"--json", "ext-check", "--group", "D4", "--center"});
    CHECK(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["input"]["order"] == 8);
    CHECK(doc.contains("checks"));
    CHECK(doc["invariants"].contains("exact1_probe"));
    CHECK(run({"--json", "ext-check", "--group", "D4", "--center"}).out == j.out);

    CHECK(run({"ext-check", "--group", "C4", "--center"}).code == h3::cli::usage_error);
    CHECK(run({"ext-check", "--group", "Q8"}).code == h3::cli::usage_error);
    CHECK(run({"ext-check", "--group", "nonsense", "--center"}).code == h3::cli::usage_error);
    CHECK(run({"ext-check", "--group", "central_square_32", "--center"}).code == h3::cli::resource_limit);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == h3::cli::usage_error);
    CHECK(run({"frobnicate"}).code == h3::cli::usage_error);
    CHECK(run({"gamma", "--cyclic", "x"}).code == h3::cli::usage_error);
    CHECK(run({"gamma"}).code == h3::cli::usage_error);
    CHECK(run({"lambda3", "--group", "Q8", "--center", "--image", "x", "--commutator", "x;y"}).code ==
          h3::cli::usage_error);
    Run help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("verify-suite") != std::string::npos);
}

TEST_CASE("homology subcommands")
{
    auto inv = [](const Run& r) { return nlohmann::json::parse(r.out)["invariants"]; };
    CHECK(inv(run({"--json", "abhom", "--group", "Z/2+Z/2"}))["H_2"] == "Z/2");
    CHECK(inv(run({"--json", "grouphom", "--group", "Q8"}))["H_3"] == "Z/8");
    CHECK(inv(run({"--json", "grouphom", "--group", fixtures + "/groups/S3.json", "--degree", "3"}))["H_3"] == "Z/6");
    CHECK(inv(run({"--json", "tor", "--left", "Z/4", "--right", "Z/6"}))["Tor_1"] == "Z/2");
    Run em = run({"--json", "em-h4", "--group", "Z/2", "--k3"});
    CHECK(em.code == 0);
    CHECK(inv(em)["H_4(K(A,2))"] == "Z/4");
    CHECK(inv(em)["H_5(K(A,3))"] == "Z/2");
}

TEST_CASE("lambda certificates through files")
{
    fs::path dir = temp_dir("certs");
    std::string cert = (dir / "q8.json").string();
    Run r = run({"lambda3", "--group", "Q8", "--center", "--image", "x=i", "--image", "y=j", "--commutator", "x;y",
                 "--certificate", cert});
    // 2[lambda] is the nonzero image of H_3(A) in H_3(Q8) = Z/8 and rho_*(A (x) H_2(Q8)) = 0.
    CHECK(r.code == h3::cli::assertion_failure);
    CHECK(r.out.find("[fail] twice_class_in_rho:") != std::string::npos);
    CHECK(r.out.find("[pass] twice_class_in_rho_plus_image_H3A") != std::string::npos);
    CHECK(r.out.find("[pass] pi_class_zero") != std::string::npos);
    REQUIRE(fs::exists(cert));

    Run back = run({"--json", "lambda3", "--verify-certificate", cert});
    CHECK(back.code == 0);
    auto checks = nlohmann::json::parse(back.out)["checks"];
    CHECK(checks.size() == 6);

    nlohmann::json doc;
    std::ifstream(cert) >> doc;
    doc["chain"][0]["coeff"] = doc["chain"][0]["coeff"].get<long long>() + 2;
    std::ofstream(cert) << doc.dump();
    CHECK(run({"lambda3", "--verify-certificate", cert}).code == h3::cli::assertion_failure);

    std::string c2 = (dir / "v4.json").string();
    Run l2 = run({"lambda2", "--group", "C2^2", "--image", "x=(1,0)", "--image", "y=(0,1)", "--commutator", "x;y",
                  "--certificate", c2});
    CHECK(l2.code == 0);
    CHECK(run({"lambda2", "--verify-certificate", c2}).code == 0);
    CHECK(run({"lambda2", "--group", "Q8", "--image", "x=i", "--image", "y=j", "--commutator", "x;y"}).code ==
          h3::cli::usage_error);
    fs::remove_all(dir);
}

TEST_CASE("verify-suite on a reduced corpus")
{
    fs::path dir = temp_dir("corpus");
    fs::create_directories(dir / "groups");
    fs::copy_file(fixtures + "/groups/D4.json", dir / "groups/D4.json");
    nlohmann::json full;
    std::ifstream(fixtures + "/corpus.json") >> full;
    nlohmann::json c = {{"gamma_family", {"Z/2", "Z/3"}},
                        {"suslin_max_order", 8},
                        {"em_family", {"Z/2"}},
                        {"engine_max_order", 4},
                        {"extensions", nlohmann::json::array()},
                        {"lambda", nlohmann::json::array()}};
    for (const auto& e : full["extensions"])
        if (e["group"] == "groups/D4.json")
            c["extensions"].push_back(e);
    std::ofstream(dir / "corpus.json") << c.dump();

    Run a = run({"--json", "verify-suite", "--corpus", dir.string()});
    Run b = run({"--json", "verify-suite", "--corpus", dir.string()});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto doc = nlohmann::json::parse(a.out);
    CHECK(doc["passed"] == true);
    CHECK(doc["sections"][6]["entries"].size() == 2);
    CHECK(a.out.find(dir.string()) == std::string::npos);

    Run text = run({"verify-suite", "--corpus", dir.string()});
    CHECK(text.out.find("[PASS] 7 extension_checks: 2/2 entries pass") != std::string::npos);
    CHECK(run({"verify-suite", "--corpus", (dir / "missing").string()}).code == h3::cli::usage_error);
    fs::remove_all(dir);
}

TEST_CASE("bench-snf")
{
    Run r = run({"--json", "bench-snf", "--group", "Q8", "--degree", "3"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["agree"] == true);
    CHECK(j[0]["seconds"].contains("reference"));
    CHECK(j[1]["agree"] == true);
}
