#include "lvc/format.hpp"

#include <cstdio>

namespace lvc {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace lvc
