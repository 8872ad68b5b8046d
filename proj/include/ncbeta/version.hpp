#pragma once

namespace ncbeta {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace ncbeta
