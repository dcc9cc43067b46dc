#include <cstdio>
#include <cstdlib>

#include "hmfront/acceptance.hpp"

// Usage: acceptance [criterion ids...]; no ids runs the whole suite.
int main(int argc, char** argv) {
    hmfront::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
    bool all = true;
    for (const auto& r : hmfront::run_acceptance(opt)) {
        std::printf("%s\n", hmfront::format_result(r).c_str());
        std::fflush(stdout);
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
