#include <cstdlib>

#include "visclab/acceptance.hpp"

int main() {
    const auto results = visclab::run_acceptance(true);
    for (const auto& r : results)
        if (!r.pass) return EXIT_FAILURE;
    return EXIT_SUCCESS;
}
