#include <cstdio>
#include <cstring>

#include "ellhyp/acceptance.hpp"

int main(int argc, char** argv) {
    using namespace ellhyp;
    RunConfig cfg = load_config();
    bool fast = argc > 1 && std::strcmp(argv[1], "--fast") == 0;
    int failed = 0;
    auto results = acceptance::run_all(cfg.seed, !fast, [&](const acceptance::Result& r) {
        std::printf("%s criterion %d: %s (%.1f s) -- %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    });
    std::printf("%d/%zu criteria passed\n", int(results.size()) - failed, results.size());
    return failed ? 1 : 0;
}
