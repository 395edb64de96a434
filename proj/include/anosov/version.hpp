#ifndef ANOSOV_VERSION_HPP
#define ANOSOV_VERSION_HPP

namespace anosov {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
