// Verification suite runner: executes every suite criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion. Exits nonzero if
// any criterion fails, so ctest reports the suite status directly.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "brwlab/experiments.hpp"

int main(int argc, char** argv) {
    brwlab::SuiteOptions opt;
    opt.master_seed = 7;
    const unsigned hw = std::thread::hardware_concurrency();
    opt.threads = hw ? static_cast<int>(hw) : 1;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--seed") opt.master_seed = std::strtoull(argv[i + 1], nullptr, 10);
        else if (flag == "--threads") opt.threads = std::atoi(argv[i + 1]);
    }

    int failures = 0;
    for (brwlab::CriterionFn fn : brwlab::acceptance_criteria()) {
        const brwlab::CriterionResult r = fn(opt);
        std::printf("%s criterion %2d: %s\n        %s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
