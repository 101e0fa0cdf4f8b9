#pragma once

#include "tconj/error.hpp"

namespace test_support {

// true iff fn() throws tconj::Error with exactly this code
template <typename Fn>
bool throws_code(Fn&& fn, tconj::errc code) {
    try {
        fn();
    } catch (const tconj::Error& e) {
        return e.code() == code;
    } catch (...) {
        return false;
    }
    return false;
}

} // namespace test_support
