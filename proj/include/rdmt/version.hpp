#ifndef RDMT_VERSION_HPP_
#define RDMT_VERSION_HPP_

namespace rdmt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rdmt

#endif  // RDMT_VERSION_HPP_
