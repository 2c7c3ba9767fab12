#include <cstdio>
#include <string>
#include <vector>

#include "bergman/acceptance.hpp"
#include "bergman/precision.hpp"

int main(int argc, char** argv) {
    bergman::sync_thread_precision();
    std::vector<std::string> only(argv + 1, argv + argc);
    auto results = bergman::run_acceptance(only);
    bool ok = bergman::all_passed(results);
    std::printf("%s (%zu criteria)\n", ok ? "ALL PASSED" : "FAILURES PRESENT",
                results.size());
    return ok ? 0 : 1;
}
