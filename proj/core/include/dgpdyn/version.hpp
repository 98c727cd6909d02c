#ifndef DGPDYN_VERSION_HPP
#define DGPDYN_VERSION_HPP

namespace dgpdyn {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
