#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "sumsetlab/errors.hpp"

namespace sumsetlab {

/// Finite set of 64-bit integers, stored as a strictly increasing sequence.
///
/// Immutable after construction. Constructors never translate or rescale;
/// use normalize() for the affine reduction.
class IntSet {
  public:
    IntSet() = default;
    IntSet(std::initializer_list<std::int64_t> values);

    /// Sorts and removes duplicates.
    static IntSet from_unsorted(std::vector<std::int64_t> values);
    /// Requires strictly increasing input; throws DomainError otherwise.
    static IntSet from_sorted(std::vector<std::int64_t> values);

    [[nodiscard]] std::span<const std::int64_t> elements() const { return elems_; }
    [[nodiscard]] const std::vector<std::int64_t>& vec() const { return elems_; }
    [[nodiscard]] std::size_t size() const { return elems_.size(); }
    [[nodiscard]] bool empty() const { return elems_.empty(); }
    [[nodiscard]] std::int64_t min() const;
    [[nodiscard]] std::int64_t max() const;
    [[nodiscard]] bool contains(std::int64_t x) const;
    [[nodiscard]] std::int64_t operator[](std::size_t i) const { return elems_[i]; }

    [[nodiscard]] auto begin() const { return elems_.begin(); }
    [[nodiscard]] auto end() const { return elems_.end(); }

    friend bool operator==(const IntSet&, const IntSet&) = default;

  private:
    std::vector<std::int64_t> elems_;
};

/// {start, start+d, ..., start+(length-1)d} with d >= 1 and length >= 1.
class ArithProgression {
  public:
    ArithProgression(std::int64_t start, std::int64_t difference, std::int64_t length);

    [[nodiscard]] std::int64_t start() const { return start_; }
    [[nodiscard]] std::int64_t difference() const { return difference_; }
    [[nodiscard]] std::int64_t length() const { return length_; }
    [[nodiscard]] std::int64_t last() const { return start_ + (length_ - 1) * difference_; }
    [[nodiscard]] bool contains(std::int64_t x) const;

    friend bool operator==(const ArithProgression&, const ArithProgression&) = default;

  private:
    std::int64_t start_;
    std::int64_t difference_;
    std::int64_t length_;
};

/// Subset of Z_m.
class ResidueSet {
  public:
    ResidueSet(std::int64_t modulus, std::vector<std::int64_t> residues);

    [[nodiscard]] std::int64_t modulus() const { return modulus_; }
    [[nodiscard]] std::span<const std::int64_t> residues() const { return residues_; }
    [[nodiscard]] std::size_t size() const { return residues_.size(); }
    [[nodiscard]] bool empty() const { return residues_.empty(); }
    [[nodiscard]] bool contains(std::int64_t r) const;
    /// Membership mask of length modulus().
    [[nodiscard]] std::vector<bool> mask() const;

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

  private:
    std::int64_t modulus_;
    std::vector<std::int64_t> residues_;
};

struct Normalized {
    IntSet set;
    std::int64_t offset;
    std::int64_t stride;
};

/// Sumset kernel selection. Auto picks the bitset path when the second
/// operand is small and the window fits the bit budget.
enum class SumsetKernel { Auto, SortedList, Bitset };

/// Default width limit (in bits) for the fixed-window bitset path.
inline constexpr std::int64_t kDefaultBitBudget = std::int64_t{1} << 28;
/// Largest second operand routed to the shifted word-OR path by Auto.
inline constexpr std::size_t kSmallOperand = 8;

IntSet sumset(const IntSet& a, const IntSet& b, SumsetKernel kernel = SumsetKernel::Auto,
              std::int64_t bit_budget = kDefaultBitBudget);
IntSet sumset_sorted_list(const IntSet& a, const IntSet& b);
IntSet sumset_bitset(const IntSet& a, const IntSet& b);

Normalized normalize(const IntSet& a);
ResidueSet project_mod(const IntSet& a, std::int64_t m);
IntSet fibre(const IntSet& a, std::int64_t m, std::int64_t x);
std::int64_t symm_diff_size(const IntSet& a, const IntSet& s);
std::int64_t intersection_size(const IntSet& a, const IntSet& s);
IntSet ap_elements(const ArithProgression& p);

IntSet translate(const IntSet& a, std::int64_t t);
IntSet dilate(const IntSet& a, std::int64_t lambda);
IntSet set_union(const IntSet& a, const IntSet& b);
IntSet set_difference(const IntSet& a, const IntSet& b);
bool is_subset(const IntSet& a, const IntSet& b);

/// |A \ P| without materializing P.
std::int64_t count_outside(const IntSet& a, const ArithProgression& p);

/// Floor modulus in [0, m).
inline std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

} // namespace sumsetlab
