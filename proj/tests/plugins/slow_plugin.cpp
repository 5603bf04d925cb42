// Sleeps past any reasonable test timeout, then behaves like the identity
// plugin; used to exercise the timeout path.

#include <chrono>
#include <fstream>
#include <string>
#include <thread>

int main(int argc, char** argv) {
    std::this_thread::sleep_for(std::chrono::seconds(30));
    std::string content, out;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string key = argv[i];
        if (key == "--content") content = argv[i + 1];
        if (key == "--out") out = argv[i + 1];
    }
    std::ifstream in(content, std::ios::binary);
    std::ofstream dst(out, std::ios::binary);
    dst << in.rdbuf();
    return 0;
}
