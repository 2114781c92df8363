#include "siltlab/acceptance.hpp"

#include <iostream>

int main() {
    auto results = siltlab::run_acceptance_suite(std::cout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.pass) ++failed;
    std::cout << (results.size() - size_t(failed)) << "/" << results.size()
              << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
