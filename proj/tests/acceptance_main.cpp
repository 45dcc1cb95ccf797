// Gate runner: one line per criterion, nonzero exit if any fails.
#include <cstdio>

#include "cvdv/acceptance.hpp"

int main() {
    const auto results = cvdv::run_acceptance();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("[%s] %2d %-36s (%.2f s of %.0f s) %s\n",
                    r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.limit_seconds, r.detail.c_str());
        if (!r.passed) ++failed;
    }
    std::printf("%d/%d criteria passed\n",
                static_cast<int>(results.size()) - failed,
                static_cast<int>(results.size()));
    return failed == 0 ? 0 : 1;
}
