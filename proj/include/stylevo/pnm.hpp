#pragma once

#include <stdexcept>
#include <string>

#include "stylevo/image.hpp"

namespace stylevo {

enum class PnmErrorKind {
    Io,                  // file not readable/writable
    WrongFormat,         // valid PNM magic, but not the expected one
    MalformedHeader,     // bad magic or unparsable header fields
    UnsupportedMaxValue, // max value other than 255
    TruncatedPayload,    // fewer payload bytes than the header declares
};

class PnmError : public std::runtime_error {
public:
    PnmError(PnmErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    PnmErrorKind kind() const { return kind_; }

private:
    PnmErrorKind kind_;
};

// Binary portable pixmap (P6, 8-bit). Intensities are byte/255 on read and
// round(v*255) with ties away from zero on write. Comment lines after the
// magic are accepted on read; writes emit the canonical header
// "P6\n<w> <h>\n255\n".
Image read_image(const std::string& path);
void write_image(const Image& img, const std::string& path);

// Binary portable graymap (P5, 8-bit); the gray value is the class id.
SegMask read_mask(const std::string& path);
void write_mask(const SegMask& mask, const std::string& path);

} // namespace stylevo
