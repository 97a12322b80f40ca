#include "sumsetlab/bitwindow.hpp"

#include <algorithm>
#include <bit>

namespace sumsetlab {

namespace {

constexpr std::int64_t kWordBits = 64;

std::size_t words_for(std::int64_t bits) { return static_cast<std::size_t>((bits + kWordBits - 1) / kWordBits); }

} // namespace

BitWindow::BitWindow(std::int64_t base, std::int64_t bits) : base_(base), bits_(bits), words_(words_for(bits), 0) {
    if (bits < 0) throw DomainError("negative bit window");
}

BitWindow::BitWindow(const IntSet& set) {
    if (set.empty()) return;
    base_ = set.min();
    bits_ = checked_add(checked_sub(set.max(), set.min()), 1);
    words_.assign(words_for(bits_), 0);
    for (auto x : set) {
        const auto i = static_cast<std::uint64_t>(x - base_);
        words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
    }
}

void BitWindow::reset(std::int64_t base, std::int64_t bits) {
    if (bits < 0) throw DomainError("negative bit window");
    base_ = base;
    bits_ = bits;
    words_.assign(words_for(bits), 0);
}

void BitWindow::set(std::int64_t x) {
    const std::int64_t i = x - base_;
    if (i < 0 || i >= bits_) throw DomainError("bit outside window");
    words_[static_cast<std::size_t>(i / kWordBits)] |= std::uint64_t{1} << (i % kWordBits);
}

bool BitWindow::test(std::int64_t x) const {
    const std::int64_t i = x - base_;
    if (i < 0 || i >= bits_) return false;
    return (words_[static_cast<std::size_t>(i / kWordBits)] >> (i % kWordBits)) & 1U;
}

std::int64_t BitWindow::count() const {
    std::int64_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

void BitWindow::clear() { std::fill(words_.begin(), words_.end(), 0); }

void BitWindow::or_shifted(const BitWindow& src, std::int64_t shift) {
    if (shift < 0 || shift + src.bits_ > bits_) throw DomainError("shifted source does not fit window");
    const auto word_shift = static_cast<std::size_t>(shift / kWordBits);
    const auto bit_shift = static_cast<unsigned>(shift % kWordBits);
    const std::size_t n = src.words_.size();
    std::uint64_t* dst = words_.data() + word_shift;
    const std::uint64_t* s = src.words_.data();
    if (bit_shift == 0) {
        for (std::size_t j = 0; j < n; ++j) dst[j] |= s[j];
        return;
    }
    const std::size_t limit = words_.size() - word_shift;
    for (std::size_t j = 0; j < n; ++j) {
        dst[j] |= s[j] << bit_shift;
        // Bits past the source window are zero, so the spill word only matters
        // when it lands inside this window.
        if (j + 1 < limit) dst[j + 1] |= s[j] >> (kWordBits - bit_shift);
    }
}

IntSet BitWindow::to_set() const {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::size_t j = 0; j < words_.size(); ++j) {
        std::uint64_t w = words_[j];
        while (w != 0) {
            const int t = std::countr_zero(w);
            out.push_back(base_ + static_cast<std::int64_t>(j) * kWordBits + t);
            w &= w - 1;
        }
    }
    return IntSet::from_sorted(std::move(out));
}

// ------------------------------------------------------ TranslateCounter

TranslateCounter::TranslateCounter(const IntSet& a) : a_(a), bits_(a) {
    if (a.empty()) throw DomainError("TranslateCounter over empty set");
}

void TranslateCounter::fill(std::span<const std::int64_t> translates) {
    const auto [lo, hi] = std::minmax_element(translates.begin(), translates.end());
    const std::int64_t span = checked_sub(*hi, *lo);
    const std::int64_t width = checked_add(bits_.bits(), span);
    const std::int64_t base = checked_add(a_.min(), *lo);
    checked_add(a_.max(), *hi);
    scratch_.reset(base, width);
    for (auto x : translates) scratch_.or_shifted(bits_, x - *lo);
}

std::int64_t TranslateCounter::count(std::span<const std::int64_t> translates) {
    if (translates.empty()) throw DomainError("empty translate set");
    std::int64_t small[kSmallOperand];
    std::vector<std::int64_t> sorted_buf;
    std::span<std::int64_t> sorted;
    if (translates.size() <= kSmallOperand) {
        std::copy(translates.begin(), translates.end(), small);
        sorted = std::span<std::int64_t>(small, translates.size());
    } else {
        sorted_buf.assign(translates.begin(), translates.end());
        sorted = sorted_buf;
    }
    std::sort(sorted.begin(), sorted.end());

    // Translates further apart than A's width give disjoint copies, so count
    // each cluster of overlapping translates separately.
    const std::int64_t width = bits_.bits();
    std::int64_t total = 0;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] - sorted[i - 1] < width) continue;
        auto cluster = sorted.subspan(begin, i - begin);
        const auto distinct = std::unique(cluster.begin(), cluster.end()) - cluster.begin();
        if (distinct == 1) {
            total += static_cast<std::int64_t>(a_.size());
        } else {
            fill(cluster.first(static_cast<std::size_t>(distinct)));
            total += scratch_.count();
        }
        begin = i;
    }
    return total;
}

IntSet TranslateCounter::sum(std::span<const std::int64_t> translates) {
    if (translates.empty()) throw DomainError("empty translate set");
    std::vector<std::int64_t> sorted(translates.begin(), translates.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    const std::int64_t width = bits_.bits();
    std::vector<std::int64_t> out;
    std::size_t begin = 0;
    for (std::size_t i = 1; i <= sorted.size(); ++i) {
        if (i < sorted.size() && sorted[i] - sorted[i - 1] < width) continue;
        fill(std::span<const std::int64_t>(sorted).subspan(begin, i - begin));
        const IntSet part = scratch_.to_set();
        out.insert(out.end(), part.begin(), part.end());
        begin = i;
    }
    return IntSet::from_sorted(std::move(out));
}

} // namespace sumsetlab
