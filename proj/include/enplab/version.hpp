#pragma once

namespace enplab {

inline constexpr const char* kVersion = "0.1.0";

}
