#pragma once

#include <iostream>
#include <string>

namespace memgov {

inline void warn(const std::string& msg) {
    std::cerr << "[memgov:warn] " << msg << "\n";
}

}  // namespace memgov
