#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "cli.hpp"
#include "h3/catalog.hpp"
#include "h3/extlab.hpp"
#include "h3/hopf.hpp"

using namespace h3;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string file_stem(const std::string& name)
{
    std::string out;
    for (char c : name) {
        if (c == '^')
            out += '_';
        else if (c == ':')
            out += '-';
        else if (c != '(' && c != ')')
            out += c;
    }
    return out;
}

void write(const fs::path& p, const Json& j)
{
    std::ofstream os(p);
    if (!os)
        throw std::runtime_error("cannot write " + p.string());
    os << j.dump(2) << "\n";
}

std::vector<std::vector<Elt>> central_subgroups_in_derived(const FiniteGroup& g)
{
    std::vector<Elt> z = g.center(), d = g.derived_subgroup(), pool;
    std::set_intersection(z.begin(), z.end(), d.begin(), d.end(), std::back_inserter(pool));
    std::set<std::vector<Elt>> subs{{g.identity()}};
    for (Elt x : pool)
        for (Elt y : pool)
            subs.insert(g.generate({x, y}));
    std::vector<std::vector<Elt>> out(subs.begin(), subs.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

std::vector<std::string> nontrivial_labels(const FiniteGroup& g, const std::vector<Elt>& a)
{
    std::vector<std::string> out;
    for (Elt x : a)
        if (x != g.identity())
            out.push_back(g.label(x));
    return out;
}

std::string subgroup_id(const std::vector<std::string>& labels)
{
    std::string s = "{";
    for (size_t i = 0; i < labels.size(); ++i)
        s += (i ? "," : "") + labels[i];
    return s + "}";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Writes the fixture corpus", "h3corpus"};
    std::string dir = "fixtures";
    app.add_option("--out", dir, "Corpus directory")->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    fs::path root(dir);
    fs::create_directories(root / "groups");
    fs::create_directories(root / "data");

    struct Entry {
        std::string name, file;
        FiniteGroup g;
    };
    std::vector<Entry> groups;
    for (const auto& name : cli::builtin_group_names()) {
        FiniteGroup g = cli::builtin_group(name);
        std::string file = "groups/" + file_stem(name) + ".json";
        write(root / file, g.to_json());
        groups.push_back({name, file, g});
    }
    write(root / "q8.json", quaternion_group().to_json());
    write(root / "d4.json", dihedral(4).to_json());

    Json corpus = Json::object();
    corpus["gamma_family"] = {"Z/2", "Z/3", "Z/4",  "Z/5",  "Z/6",     "Z/7",     "Z/8",     "Z/9",
                              "Z/10", "Z/11", "Z/12", "Z/2+Z/2", "Z/2+Z/4", "Z/3+Z/3", "Z/2+Z/2+Z/2"};
    corpus["suslin_max_order"] = 36;
    corpus["em_family"] = {"Z/2", "Z/3", "Z/4", "Z/2+Z/2"};
    corpus["engine_max_order"] = 16;

    Json extensions = Json::array(), lambda = Json::array();
    for (const auto& e : groups) {
        if (e.g.order() > 16)
            continue;
        auto subs = central_subgroups_in_derived(e.g);
        for (const auto& a : subs) {
            auto labels = nontrivial_labels(e.g, a);
            extensions.push_back(
                {{"id", e.name + " A=" + subgroup_id(labels)}, {"group", e.file}, {"central_subgroup", labels}});
        }
        const auto& a = subs.back();
        if (a.size() < 2)
            continue;
        auto labels = nontrivial_labels(e.g, a);
        std::vector<std::pair<Elt, Elt>> pairs;
        for (Elt x = 0; x < e.g.order(); ++x)
            for (Elt y = 0; y < e.g.order(); ++y) {
                Elt c = e.g.commutator(x, y);
                if (c != e.g.identity() && std::binary_search(a.begin(), a.end(), c))
                    pairs.emplace_back(x, y);
            }
        std::set<size_t> picks{0, pairs.size() / 2, pairs.size() - 1};
        for (size_t k : picks) {
            auto [x, y] = pairs[k];
            lambda.push_back({{"id", e.name + " A=" + subgroup_id(labels) + " [" + e.g.label(x) + "," +
                                         e.g.label(y) + "]"},
                              {"group", e.file},
                              {"central_subgroup", labels},
                              {"images", {{"x", e.g.label(x)}, {"y", e.g.label(y)}}},
                              {"words", Json::array({Json::array({"x", "y"})})}});
        }
    }
    lambda.push_back({{"id", "Q8 A={-1} [i,j][i,k]"},
                      {"group", "groups/Q8.json"},
                      {"central_subgroup", {"-1"}},
                      {"images", {{"x", "i"}, {"y", "j"}, {"z", "k"}}},
                      {"words", Json::array({Json::array({"x", "y"}), Json::array({"x", "z"})})}});
    extensions.push_back({{"id", "Heis27 A=center"},
                          {"group", "groups/Heis27.json"},
                          {"central_subgroup", nontrivial_labels(heisenberg(3), heisenberg(3).center())},
                          {"stretch", true}});
    corpus["extensions"] = extensions;
    corpus["lambda"] = lambda;
    write(root / "corpus.json", corpus);

    for (auto [name, g] : {std::pair{"q8", quaternion_group()}, std::pair{"d4", dihedral(4)}}) {
        ExtensionContext cx(validate(g, g.center()));
        write(root / "data" / (std::string(name) + "_extension_report.json"), extension_json(cx, extension_report(cx)));
        auto pair = name == std::string("q8") ? std::map<std::string, std::string>{{"x", "i"}, {"y", "j"}}
                                              : std::map<std::string, std::string>{{"x", "a"}, {"y", "b"}};
        PresSetup setup(cx.data(), PresSetup::images_by_label(g, pair));
        CommutatorProduct s{{FreeWord::parse("x"), FreeWord::parse("y")}};
        write(root / "data" / (std::string(name) + "_lambda3_certificate.json"), lambda3_certificate(s, setup, cx));
        write(root / "data" / (std::string(name) + "_lambda2_certificate.json"),
              lambda2_certificate(s, setup.on_quotient()));
    }
    std::cout << "wrote " << extensions.size() << " extension entries and " << lambda.size() << " lambda entries to "
              << root.string() << "\n";
}
