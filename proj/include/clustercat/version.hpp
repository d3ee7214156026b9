#pragma once

namespace clustercat {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace clustercat
