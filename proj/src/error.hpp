#pragma once

#include <stdexcept>
#include <string>

namespace zxh {

enum class Errc : int {
    param = 1,
    parse = 2,
    semantic = 3,
    overflow = 4,
    domain = 5,
    shape = 6,
    too_large = 7,
    match = 8,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace zxh
