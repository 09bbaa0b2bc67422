#pragma once

namespace focklab {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCatalogVersion = "catalog-v1";

} // namespace focklab
