// Writes a valid P6 with the wrong dimensions; used to exercise the
// dimension-mismatch check.

#include <string>

#include "stylevo/image.hpp"
#include "stylevo/pnm.hpp"

int main(int argc, char** argv) {
    std::string out;
    for (int i = 1; i + 1 < argc; i += 2)
        if (std::string(argv[i]) == "--out") out = argv[i + 1];
    if (out.empty()) return 64;
    stylevo::write_image(stylevo::Image(1, 1, 0.5), out);
    return 0;
}
