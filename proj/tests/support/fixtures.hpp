#pragma once

#include <string>

#include "transiso/io.hpp"

namespace fixture {

inline std::string path(const std::string& name) { return std::string(TRANSISO_FIXTURE_DIR) + "/" + name + ".json"; }

inline transiso::Group load(const std::string& name) { return transiso::io::load_group(path(name), {}); }

}  // namespace fixture
