#pragma once

#include <string>

#include "mhwk/document.hpp"
#include "mhwk/words.hpp"

namespace test {

inline mhwk::MhwkMachine mhwk_fixture(const std::string& name) {
    return std::get<mhwk::MhwkMachine>(mhwk::fixture(name).machine);
}

inline mhwk::MhfaMachine mhfa_fixture(const std::string& name) {
    return std::get<mhwk::MhfaMachine>(mhwk::fixture(name).machine);
}

inline mhwk::Word a(std::size_t n) { return mhwk::repeat("a", n); }

}  // namespace test
