#include <iostream>

#include "cli.hpp"
#include "h3/catalog.hpp"

int main(int argc, char** argv)
{
    std::vector<std::pair<std::string, size_t>> runs{{"Q8", 3}, {"D4", 4}, {"C2xQ8", 3}, {"D8", 3}, {"C2^4", 3}};
    if (argc == 3)
        runs = {{argv[1], std::stoul(argv[2])}};
    else if (argc != 1) {
        std::cerr << "usage: bench_kernels [group degree]\n";
        return 2;
    }
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    bool agree = true;
    for (const auto& [name, n] : runs) {
        h3::FiniteGroup g = h3::cli::resolve_group(name);
        for (auto j : {h3::cli::bench_snf(g, n), h3::cli::bench_bar_boundary(g, n)}) {
            agree = agree && j["agree"].get<bool>();
            out.push_back(std::move(j));
        }
    }
    std::cout << out.dump(2) << "\n";
    return agree ? 0 : 1;
}
