#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace morita {

// FNV-1a, 64 bit.
class Fnv1a {
  public:
    void add_byte(std::uint8_t b) noexcept {
        h_ ^= b;
        h_ *= 1099511628211ull;
    }
    void add(std::uint64_t v) noexcept {
        for (int i = 0; i < 8; ++i) add_byte(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void add(std::string_view s) noexcept {
        for (char c : s) add_byte(static_cast<std::uint8_t>(c));
    }
    template <class T>
    void add_all(const std::vector<T>& v) noexcept {
        add(static_cast<std::uint64_t>(v.size()));
        for (const auto& x : v) add(static_cast<std::uint64_t>(x));
    }
    std::uint64_t value() const noexcept { return h_; }

  private:
    std::uint64_t h_ = 1469598103934665603ull;
};

}  // namespace morita
