#include "stylevo/plugin.hpp"

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include "stylevo/pnm.hpp"

extern char** environ;

namespace stylevo {

namespace fs = std::filesystem;

std::string temp_root() {
    if (const char* v = std::getenv("STYLEVO_TMPDIR"); v && *v) return v;
    if (const char* v = std::getenv("TMPDIR"); v && *v) return v;
    return "/tmp";
}

namespace {

// Private scratch directory, removed on scope exit.
class ScratchDir {
public:
    ScratchDir() {
        std::string tmpl = temp_root() + "/stylevo-plugin-XXXXXX";
        std::vector<char> buf(tmpl.begin(), tmpl.end());
        buf.push_back('\0');
        if (!mkdtemp(buf.data()))
            throw OperatorError(std::string("plugin: cannot create scratch dir: ") +
                                std::strerror(errno));
        path_ = buf.data();
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Spawns argv[0] with stdout routed to /dev/null and waits up to
// timeout_seconds; returns the exit code or throws on timeout/signal.
int run_process(const std::vector<std::string>& argv, double timeout_seconds) {
    std::vector<char*> cargv;
    cargv.reserve(argv.size() + 1);
    for (const std::string& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, "/dev/null", O_WRONLY, 0);

    pid_t pid = -1;
    const int rc = posix_spawn(&pid, cargv[0], &actions, nullptr, cargv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0)
        throw OperatorError("plugin: cannot execute " + argv[0] + ": " + std::strerror(rc));

    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(timeout_seconds);
    for (;;) {
        int status = 0;
        const pid_t r = waitpid(pid, &status, WNOHANG);
        if (r == pid) {
            if (WIFEXITED(status)) return WEXITSTATUS(status);
            throw OperatorError("plugin terminated by signal " +
                                std::to_string(WIFSIGNALED(status) ? WTERMSIG(status) : 0));
        }
        if (r < 0)
            throw OperatorError(std::string("plugin: waitpid failed: ") + std::strerror(errno));
        if (std::chrono::steady_clock::now() >= deadline) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            throw OperatorError("plugin timed out after " + std::to_string(timeout_seconds) +
                                " s: " + argv[0]);
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
}

} // namespace

Image apply_external(const std::string& name, const Image& image, const StyleContext& ctx,
                     const PluginSpec& spec) {
    if (image.empty()) throw OperatorError(name + ": input image is empty");
    if (ctx.style_image.empty())
        throw OperatorError(name + ": external operator requires a style image");
    if (!fs::exists(spec.executable))
        throw OperatorError(name + ": plugin executable not found: " + spec.executable);

    ScratchDir dir;
    const std::string content_path = dir.path() + "/content.ppm";
    const std::string style_path = dir.path() + "/style.ppm";
    const std::string out_path = dir.path() + "/out.ppm";
    std::string mask_path = "none";
    std::string style_mask_path = "none";

    write_image(image, content_path);
    write_image(ctx.style_image, style_path);
    if (ctx.content_mask) {
        mask_path = dir.path() + "/mask.pgm";
        write_mask(*ctx.content_mask, mask_path);
    }
    if (ctx.style_mask) {
        style_mask_path = dir.path() + "/style_mask.pgm";
        write_mask(*ctx.style_mask, style_mask_path);
    }

    const std::vector<std::string> argv = {
        spec.executable, "--content", content_path,   "--style", style_path,
        "--mask",        mask_path,   "--style-mask", style_mask_path,
        "--out",         out_path,
    };
    const int code = run_process(argv, spec.timeout_seconds);
    if (code != 0)
        throw OperatorError(name + ": plugin exited with code " + std::to_string(code), code);

    Image out;
    try {
        out = read_image(out_path);
    } catch (const PnmError& e) {
        throw OperatorError(name + ": plugin output unreadable: " + e.what());
    }
    if (out.width != image.width || out.height != image.height)
        throw OperatorError(name + ": plugin output is " + std::to_string(out.width) + "x" +
                            std::to_string(out.height) + ", expected " +
                            std::to_string(image.width) + "x" + std::to_string(image.height));
    return out;
}

Image apply_operator(const OperatorId& op, const Image& image, const StyleContext& ctx,
                     const PluginTable& plugins) {
    switch (op.kind) {
    case OpKind::AdaIn: return apply_adain(image, ctx);
    case OpKind::Cacti: return apply_cacti(image, ctx);
    case OpKind::External: {
        const auto it = plugins.find(op.name);
        if (it == plugins.end())
            throw OperatorError("no plugin registered for operator '" + op.name + "'");
        return apply_external(op.name, image, ctx, it->second);
    }
    case OpKind::Stop:
        throw OperatorError("the terminal node cannot be applied to an image");
    default: return apply_classical(op, image, ctx);
    }
}

} // namespace stylevo
