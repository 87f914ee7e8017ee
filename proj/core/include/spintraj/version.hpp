#ifndef SPINTRAJ_VERSION_HPP
#define SPINTRAJ_VERSION_HPP

namespace spintraj {

inline constexpr const char* kToolName = "spintraj";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace spintraj

#endif
