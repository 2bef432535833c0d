// Copyright contributors to the hermitana project
// SPDX-License-Identifier: Apache-2.0
#ifndef HERMITANA_VERSION_HPP
#define HERMITANA_VERSION_HPP

namespace hermitana {

inline constexpr const char* version_string = "0.1.0";

} // namespace hermitana

#endif
