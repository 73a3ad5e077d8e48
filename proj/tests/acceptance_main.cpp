#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "cpdyn/acceptance.hpp"

// usage: cpdyn_acceptance [--only 1,2,...]
int main(int argc, char** argv) {
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            std::string list = argv[++i];
            std::size_t pos = 0;
            while (pos < list.size()) {
                const std::size_t next = list.find(',', pos);
                only.push_back(std::atoi(list.substr(pos, next - pos).c_str()));
                if (next == std::string::npos) break;
                pos = next + 1;
            }
        } else {
            std::fprintf(stderr, "usage: %s [--only id[,id...]]\n", argv[0]);
            return 2;
        }
    }

    bool all = true;
    for (const auto& r : cpdyn::run_acceptance(only)) {
        std::printf("%s [%d] %s (%.2f s): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                    r.detail.c_str());
        all = all && r.passed;
    }
    return all ? 0 : 1;
}
