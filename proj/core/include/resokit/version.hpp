#pragma once

namespace resokit {

// Embedded in cache keys so that algorithm changes invalidate stale entries.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace resokit
