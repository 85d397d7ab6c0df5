#pragma once

// Search and fill kernels with an OpenMP path and a serial reference path.
// Both paths return identical results: searches report the smallest witness
// in row-major order, fills write disjoint slots.
//
// Callables passed here must not throw.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace morita {

enum class Exec { serial, parallel };

inline bool openmp_enabled() noexcept {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int thread_count() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Process-wide default; tests flip it to compare the two paths.
inline Exec& default_exec() noexcept {
    static Exec e = openmp_enabled() ? Exec::parallel : Exec::serial;
    return e;
}

namespace detail {

inline void atomic_min(std::atomic<std::size_t>& a, std::size_t v) noexcept {
    std::size_t cur = a.load(std::memory_order_relaxed);
    while (v < cur && !a.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
}

// Smallest linear index in [0, outer*inner) accepted by pred(i, j) where the
// index is i*inner + j; the inner loop runs serially for each i.
template <class Pred>
std::optional<std::size_t> first_linear(std::size_t outer, std::size_t inner, Pred&& pred, Exec ex) {
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    if (outer == 0 || inner == 0) return std::nullopt;
    if (ex == Exec::serial || !openmp_enabled() || outer < 2) {
        for (std::size_t i = 0; i < outer; ++i)
            for (std::size_t j = 0; j < inner; ++j)
                if (pred(i, j)) return i * inner + j;
        return std::nullopt;
    }
    std::atomic<std::size_t> best{none};
    const auto n = static_cast<std::int64_t>(outer);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::int64_t si = 0; si < n; ++si) {
        const auto i = static_cast<std::size_t>(si);
        if (i * inner >= best.load(std::memory_order_relaxed)) continue;
        for (std::size_t j = 0; j < inner; ++j) {
            if (pred(i, j)) {
                atomic_min(best, i * inner + j);
                break;
            }
        }
    }
    std::size_t b = best.load();
    if (b == none) return std::nullopt;
    return b;
}

}  // namespace detail

template <class Pred>
std::optional<std::size_t> first_index(std::size_t n, Pred&& pred, Exec ex = default_exec()) {
    std::size_t inner = std::max<std::size_t>(1, std::min<std::size_t>(n, 256));
    std::size_t outer = (n + inner - 1) / inner;
    return detail::first_linear(
        outer, inner, [&](std::size_t i, std::size_t j) { std::size_t k = i * inner + j; return k < n && pred(k); }, ex);
}

template <class Pred>
std::optional<std::array<std::size_t, 2>> first_pair(std::size_t n1, std::size_t n2, Pred&& pred,
                                                     Exec ex = default_exec()) {
    auto r = detail::first_linear(n1, n2, pred, ex);
    if (!r) return std::nullopt;
    return std::array<std::size_t, 2>{*r / n2, *r % n2};
}

template <class Pred>
std::optional<std::array<std::size_t, 3>> first_triple(std::size_t n1, std::size_t n2, std::size_t n3, Pred&& pred,
                                                       Exec ex = default_exec()) {
    auto r = detail::first_linear(n1, n2 * n3,
                                  [&](std::size_t i, std::size_t jk) { return pred(i, jk / n3, jk % n3); }, ex);
    if (!r) return std::nullopt;
    std::size_t jk = *r % (n2 * n3);
    return std::array<std::size_t, 3>{*r / (n2 * n3), jk / n3, jk % n3};
}

// All masks in [0, 2^nbits) accepted by pred, increasing.
template <class Pred>
std::vector<std::uint64_t> filter_masks(unsigned nbits, Pred&& pred, Exec ex = default_exec()) {
    const std::uint64_t total = std::uint64_t{1} << nbits;
    std::vector<std::uint64_t> out;
    if (ex == Exec::serial || !openmp_enabled() || total < 1024) {
        for (std::uint64_t m = 0; m < total; ++m)
            if (pred(m)) out.push_back(m);
        return out;
    }
    const std::uint64_t chunk = 1024;
    const std::uint64_t nchunks = total / chunk;
    std::vector<std::vector<std::uint64_t>> parts(nchunks);
    const auto nc = static_cast<std::int64_t>(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (std::int64_t c = 0; c < nc; ++c) {
        auto& part = parts[static_cast<std::size_t>(c)];
        const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk;
        for (std::uint64_t m = lo; m < lo + chunk; ++m)
            if (pred(m)) part.push_back(m);
    }
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// Calls f(i) for every i in [0, n); f must only write state owned by i.
template <class F>
void for_each_index(std::size_t n, F&& f, Exec ex = default_exec()) {
    if (ex == Exec::serial || !openmp_enabled() || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    const auto sn = static_cast<std::int64_t>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (std::int64_t i = 0; i < sn; ++i) f(static_cast<std::size_t>(i));
}

}  // namespace morita
