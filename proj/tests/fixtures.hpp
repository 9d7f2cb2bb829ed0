#pragma once

#include "autobox/language.hpp"

#include <memory>
#include <string>

namespace autobox::test {

inline std::shared_ptr<const Composition> composition(const std::string& name) {
    static std::map<std::string, std::shared_ptr<const Composition>> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    auto c = Composition::load(std::string(AUTOBOX_DATA_DIR) + "/compositions/" + name + ".comp");
    cache.emplace(name, c);
    return c;
}

inline const Language& java() { return composition("java_sql")->outer(); }
inline const Language& sql() { return composition("java_sql")->language("MiniSQL"); }

}  // namespace autobox::test
