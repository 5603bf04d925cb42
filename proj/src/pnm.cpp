#include "stylevo/pnm.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace stylevo {

namespace {

struct Reader {
    std::vector<char> buf;
    std::size_t pos = 0;
    const std::string& path;

    explicit Reader(const std::string& p) : path(p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw PnmError(PnmErrorKind::Io, "cannot open " + p);
        in.seekg(0, std::ios::end);
        buf.resize(static_cast<std::size_t>(in.tellg()));
        in.seekg(0);
        in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
        if (!in) throw PnmError(PnmErrorKind::Io, "cannot read " + p);
    }

    bool eof() const { return pos >= buf.size(); }
    char peek() const { return buf[pos]; }

    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    }

    // Skips whitespace and '#' comments running to end of line.
    void skip_separators() {
        while (!eof()) {
            if (is_space(peek())) {
                ++pos;
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    int read_int() {
        skip_separators();
        if (eof() || peek() < '0' || peek() > '9')
            throw PnmError(PnmErrorKind::MalformedHeader, path + ": expected integer in header");
        long v = 0;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            v = v * 10 + (peek() - '0');
            if (v > 1'000'000'000L)
                throw PnmError(PnmErrorKind::MalformedHeader, path + ": header value out of range");
            ++pos;
        }
        return static_cast<int>(v);
    }

    // Parses "P6"/"P5", width, height, maxval; leaves pos at the first payload byte.
    void read_header(char expected_digit, char other_digit, int& w, int& h) {
        if (buf.size() < 2 || buf[0] != 'P')
            throw PnmError(PnmErrorKind::MalformedHeader, path + ": not a PNM file");
        if (buf[1] == other_digit)
            throw PnmError(PnmErrorKind::WrongFormat,
                           path + ": got P" + std::string(1, buf[1]) + " where P" +
                               std::string(1, expected_digit) + " was expected");
        if (buf[1] != expected_digit)
            throw PnmError(PnmErrorKind::MalformedHeader, path + ": unsupported PNM magic");
        pos = 2;
        w = read_int();
        h = read_int();
        if (w < 1 || h < 1)
            throw PnmError(PnmErrorKind::MalformedHeader, path + ": non-positive dimensions");
        const int maxval = read_int();
        if (maxval != 255)
            throw PnmError(PnmErrorKind::UnsupportedMaxValue,
                           path + ": max value " + std::to_string(maxval) + " (only 255 supported)");
        if (eof() || !is_space(peek()))
            throw PnmError(PnmErrorKind::MalformedHeader, path + ": missing separator after max value");
        ++pos; // exactly one whitespace byte before the payload
    }

    const unsigned char* payload(std::size_t need) {
        if (buf.size() - pos < need)
            throw PnmError(PnmErrorKind::TruncatedPayload,
                           path + ": payload has " + std::to_string(buf.size() - pos) +
                               " bytes, needs " + std::to_string(need));
        return reinterpret_cast<const unsigned char*>(buf.data() + pos);
    }
};

inline unsigned char quantize(double v) {
    const long q = std::lround(v * 255.0);
    return static_cast<unsigned char>(q < 0 ? 0 : (q > 255 ? 255 : q));
}

} // namespace

Image read_image(const std::string& path) {
    Reader r(path);
    int w = 0, h = 0;
    r.read_header('6', '5', w, h);
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const unsigned char* p = r.payload(n * 3);
    Image img(w, h);
    double* red = img.plane(0);
    double* green = img.plane(1);
    double* blue = img.plane(2);
    for (std::size_t i = 0; i < n; ++i) {
        red[i] = p[i * 3] / 255.0;
        green[i] = p[i * 3 + 1] / 255.0;
        blue[i] = p[i * 3 + 2] / 255.0;
    }
    return img;
}

void write_image(const Image& img, const std::string& path) {
    validate(img);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PnmError(PnmErrorKind::Io, "cannot open " + path + " for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    const std::size_t n = img.pixels();
    std::vector<unsigned char> bytes(n * 3);
    const double* red = img.plane(0);
    const double* green = img.plane(1);
    const double* blue = img.plane(2);
    for (std::size_t i = 0; i < n; ++i) {
        bytes[i * 3] = quantize(red[i]);
        bytes[i * 3 + 1] = quantize(green[i]);
        bytes[i * 3 + 2] = quantize(blue[i]);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw PnmError(PnmErrorKind::Io, "write failed: " + path);
}

SegMask read_mask(const std::string& path) {
    Reader r(path);
    int w = 0, h = 0;
    r.read_header('5', '6', w, h);
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const unsigned char* p = r.payload(n);
    SegMask mask(w, h);
    for (std::size_t i = 0; i < n; ++i) mask.data[i] = p[i];
    return mask;
}

void write_mask(const SegMask& mask, const std::string& path) {
    if (mask.empty() || mask.data.size() != static_cast<std::size_t>(mask.width) * mask.height)
        throw std::invalid_argument("write_mask: invalid mask");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PnmError(PnmErrorKind::Io, "cannot open " + path + " for writing");
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(mask.data.data()),
              static_cast<std::streamsize>(mask.data.size()));
    if (!out) throw PnmError(PnmErrorKind::Io, "write failed: " + path);
}

} // namespace stylevo
