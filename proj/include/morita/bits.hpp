#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace morita {

// Fixed-width bit-set whose width is chosen at run time. Used for subsets of
// small carriers (order-ideals, closed sets, relation sides).
class Bits {
  public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static Bits from_mask(std::size_t n, std::uint64_t mask) {
        Bits b(n);
        if (!b.w_.empty()) b.w_[0] = mask & b.tail_mask(0);
        return b;
    }
    static Bits full(std::size_t n) {
        Bits b(n);
        for (std::size_t i = 0; i < b.w_.size(); ++i) b.w_[i] = b.tail_mask(i);
        return b;
    }
    static Bits single(std::size_t n, std::size_t i) {
        Bits b(n);
        b.set(i);
        return b;
    }
    template <class It>
    static Bits of(std::size_t n, It first, It last) {
        Bits b(n);
        for (; first != last; ++first) b.set(static_cast<std::size_t>(*first));
        return b;
    }
    static Bits of(std::size_t n, const std::vector<std::size_t>& v) { return of(n, v.begin(), v.end()); }

    std::size_t size() const noexcept { return n_; }
    bool test(std::size_t i) const noexcept { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool none() const noexcept {
        for (auto w : w_)
            if (w) return false;
        return true;
    }
    bool any() const noexcept { return !none(); }

    // Lowest set index at or after i, or size() when none.
    std::size_t next(std::size_t i) const noexcept {
        if (i >= n_) return n_;
        std::size_t k = i >> 6;
        std::uint64_t w = w_[k] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (w) return (k << 6) + static_cast<std::size_t>(std::countr_zero(w));
            if (++k == w_.size()) return n_;
            w = w_[k];
        }
    }
    std::size_t first() const noexcept { return next(0); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t w = w_[k];
            while (w) {
                f((k << 6) + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }
    std::vector<std::size_t> elements() const {
        std::vector<std::size_t> v;
        v.reserve(count());
        for_each([&](std::size_t i) { v.push_back(i); });
        return v;
    }

    Bits& operator|=(const Bits& o) noexcept {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }
    Bits& operator&=(const Bits& o) noexcept {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }
    Bits& subtract(const Bits& o) noexcept {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= ~o.w_[k];
        return *this;
    }
    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator-(Bits a, const Bits& b) { return a.subtract(b); }

    bool subset_of(const Bits& o) const noexcept {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }
    bool intersects(const Bits& o) const noexcept {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    std::uint64_t word(std::size_t k) const noexcept { return w_[k]; }
    std::size_t words() const noexcept { return w_.size(); }

    bool operator==(const Bits& o) const noexcept = default;

    // Canonical order: by population count, then by value read as a binary
    // number with bit 0 least significant.
    friend bool canonical_less(const Bits& a, const Bits& b) noexcept {
        auto ca = a.count(), cb = b.count();
        if (ca != cb) return ca < cb;
        for (std::size_t k = a.w_.size(); k-- > 0;)
            if (a.w_[k] != b.w_[k]) return a.w_[k] < b.w_[k];
        return false;
    }

    std::size_t hash() const noexcept {
        std::uint64_t h = 1469598103934665603ull ^ n_;
        for (auto w : w_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }

    // Bit i is character i.
    std::string to_string() const {
        std::string s(n_, '0');
        for_each([&](std::size_t i) { s[i] = '1'; });
        return s;
    }

  private:
    std::uint64_t tail_mask(std::size_t k) const noexcept {
        std::size_t r = n_ - k * 64;
        return r >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << r) - 1);
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const noexcept { return b.hash(); }
};

}  // namespace morita
