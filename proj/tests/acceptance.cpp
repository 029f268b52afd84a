// Acceptance gate: runs the numbered verification criteria and prints one
// PASS/FAIL line each. Exit 0 only if every criterion run passed. An
// optional argument limits the run to that one criterion.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "stopping/checks.hpp"
#include "stopping/errors.hpp"

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 2) {
        std::fprintf(stderr, "usage: %s [criterion 1..%d]\n", argv[0], stopping::kNumCriteria);
        return 2;
    }
    if (argc == 2) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > stopping::kNumCriteria) {
            std::fprintf(stderr, "usage: %s [criterion 1..%d]\n", argv[0],
                         stopping::kNumCriteria);
            return 2;
        }
    }

    bool all_pass = true;
    for (int c = 1; c <= stopping::kNumCriteria; ++c) {
        if (only != 0 && c != only) continue;
        const stopping::CheckResult r = stopping::run_criterion(c);
        std::printf("%s  criterion %2d %-28s %s\n", r.pass ? "PASS" : "FAIL", r.criterion,
                    r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}
