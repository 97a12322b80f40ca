#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sumsetlab/intset.hpp"

namespace sumsetlab {

/// Fixed-window bitset over [base, base + bits).
class BitWindow {
  public:
    BitWindow() = default;
    BitWindow(std::int64_t base, std::int64_t bits);
    explicit BitWindow(const IntSet& set);

    [[nodiscard]] std::int64_t base() const { return base_; }
    [[nodiscard]] std::int64_t bits() const { return bits_; }
    [[nodiscard]] std::span<const std::uint64_t> words() const { return words_; }
    [[nodiscard]] std::span<std::uint64_t> words() { return words_; }

    void set(std::int64_t x);
    [[nodiscard]] bool test(std::int64_t x) const;
    [[nodiscard]] std::int64_t count() const;
    void clear();
    /// Re-targets the window and zeroes it, keeping the allocation.
    void reset(std::int64_t base, std::int64_t bits);

    /// this |= (src shifted up by `shift` bits); shift >= 0 and must fit the window.
    void or_shifted(const BitWindow& src, std::int64_t shift);

    [[nodiscard]] IntSet to_set() const;

  private:
    std::int64_t base_ = 0;
    std::int64_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Evaluates |A + X| for many small translate sets X against a fixed A.
///
/// Holds A's bitset and a scratch window; not thread-safe, one per worker.
class TranslateCounter {
  public:
    explicit TranslateCounter(const IntSet& a);

    [[nodiscard]] const IntSet& set() const { return a_; }

    /// |A + X|; X need not be sorted or distinct.
    std::int64_t count(std::span<const std::int64_t> translates);
    /// Materializes A + X.
    IntSet sum(std::span<const std::int64_t> translates);

  private:
    void fill(std::span<const std::int64_t> translates);

    IntSet a_;
    BitWindow bits_;
    BitWindow scratch_;
};

} // namespace sumsetlab
