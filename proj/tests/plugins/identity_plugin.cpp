// Protocol-conforming plugin that copies the content image to the output
// byte for byte.

#include <fstream>
#include <string>

int main(int argc, char** argv) {
    std::string content, out;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        if (key == "--content") content = argv[i + 1];
        if (key == "--out") out = argv[i + 1];
    }
    if (content.empty() || out.empty()) return 64;
    std::ifstream in(content, std::ios::binary);
    std::ofstream dst(out, std::ios::binary);
    if (!in || !dst) return 66;
    dst << in.rdbuf();
    return dst ? 0 : 74;
}
