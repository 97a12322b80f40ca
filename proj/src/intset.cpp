#include "sumsetlab/intset.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sumsetlab/bitwindow.hpp"

namespace sumsetlab {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("integer overflow in addition");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticError("integer overflow in subtraction");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("integer overflow in multiplication");
    return r;
}

// ---------------------------------------------------------------- IntSet

IntSet::IntSet(std::initializer_list<std::int64_t> values) : IntSet(from_unsorted(std::vector<std::int64_t>(values))) {}

IntSet IntSet::from_unsorted(std::vector<std::int64_t> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    IntSet s;
    s.elems_ = std::move(values);
    return s;
}

IntSet IntSet::from_sorted(std::vector<std::int64_t> values) {
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i - 1] >= values[i]) throw DomainError("IntSet::from_sorted: input not strictly increasing");
    IntSet s;
    s.elems_ = std::move(values);
    return s;
}

std::int64_t IntSet::min() const {
    if (elems_.empty()) throw DomainError("min of empty set");
    return elems_.front();
}

std::int64_t IntSet::max() const {
    if (elems_.empty()) throw DomainError("max of empty set");
    return elems_.back();
}

bool IntSet::contains(std::int64_t x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

// ------------------------------------------------------ ArithProgression

ArithProgression::ArithProgression(std::int64_t start, std::int64_t difference, std::int64_t length)
    : start_(start), difference_(difference), length_(length) {
    if (difference < 1) throw DomainError("progression difference must be >= 1");
    if (length < 1) throw DomainError("progression length must be >= 1");
    checked_add(start, checked_mul(length - 1, difference));
}

bool ArithProgression::contains(std::int64_t x) const {
    if (x < start_ || x > last()) return false;
    return (x - start_) % difference_ == 0;
}

// ------------------------------------------------------------ ResidueSet

ResidueSet::ResidueSet(std::int64_t modulus, std::vector<std::int64_t> residues) : modulus_(modulus) {
    if (modulus < 1) throw DomainError("residue modulus must be >= 1");
    for (auto r : residues)
        if (r < 0 || r >= modulus) throw DomainError("residue " + std::to_string(r) + " outside [0, m)");
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    residues_ = std::move(residues);
}

bool ResidueSet::contains(std::int64_t r) const { return std::binary_search(residues_.begin(), residues_.end(), r); }

std::vector<bool> ResidueSet::mask() const {
    std::vector<bool> m(static_cast<std::size_t>(modulus_), false);
    for (auto r : residues_) m[static_cast<std::size_t>(r)] = true;
    return m;
}

// ---------------------------------------------------------------- sumset

namespace {

void require_nonempty(const IntSet& a, const IntSet& b) {
    if (a.empty() || b.empty()) throw DomainError("sumset of an empty set");
}

void check_extremes(const IntSet& a, const IntSet& b) {
    // All sums lie between these two, so checking them covers every pair.
    checked_add(a.min(), b.min());
    checked_add(a.max(), b.max());
}

} // namespace

IntSet sumset_sorted_list(const IntSet& a, const IntSet& b) {
    require_nonempty(a, b);
    check_extremes(a, b);
    const IntSet& big = a.size() >= b.size() ? a : b;
    const IntSet& small = a.size() >= b.size() ? b : a;

    std::vector<std::int64_t> out;
    if (small.size() <= 2 * kSmallOperand) {
        // k-way merge of the shifted copies big + s.
        const std::size_t k = small.size();
        std::vector<std::size_t> head(k, 0);
        out.reserve(big.size() * k);
        const auto& bv = big.vec();
        for (;;) {
            std::size_t best = k;
            std::int64_t best_val = 0;
            for (std::size_t j = 0; j < k; ++j) {
                if (head[j] == bv.size()) continue;
                const std::int64_t v = bv[head[j]] + small[j];
                if (best == k || v < best_val) {
                    best = j;
                    best_val = v;
                }
            }
            if (best == k) break;
            if (out.empty() || out.back() != best_val) out.push_back(best_val);
            for (std::size_t j = 0; j < k; ++j)
                if (head[j] != bv.size() && bv[head[j]] + small[j] == best_val) ++head[j];
        }
        return IntSet::from_sorted(std::move(out));
    }
    out.reserve(big.size() * small.size());
    for (auto x : big)
        for (auto y : small) out.push_back(x + y);
    return IntSet::from_unsorted(std::move(out));
}

IntSet sumset_bitset(const IntSet& a, const IntSet& b) {
    require_nonempty(a, b);
    check_extremes(a, b);
    const IntSet& wide = (a.max() - a.min()) >= (b.max() - b.min()) ? a : b;
    const IntSet& other = &wide == &a ? b : a;
    TranslateCounter counter(wide);
    return counter.sum(other.elements());
}

IntSet sumset(const IntSet& a, const IntSet& b, SumsetKernel kernel, std::int64_t bit_budget) {
    switch (kernel) {
    case SumsetKernel::SortedList:
        return sumset_sorted_list(a, b);
    case SumsetKernel::Bitset:
        return sumset_bitset(a, b);
    case SumsetKernel::Auto:
        break;
    }
    require_nonempty(a, b);
    check_extremes(a, b);
    const std::size_t small = std::min(a.size(), b.size());
    const IntSet& big = a.size() >= b.size() ? a : b;
    const std::int64_t span = big.max() - big.min();
    if (small <= kSmallOperand && span < bit_budget) return sumset_bitset(a, b);
    return sumset_sorted_list(a, b);
}

// ------------------------------------------------------- set utilities

Normalized normalize(const IntSet& a) {
    if (a.empty()) throw DomainError("normalize of empty set");
    const std::int64_t offset = a.min();
    if (a.size() == 1) return {IntSet{0}, offset, 1};
    std::int64_t g = 0;
    for (auto x : a) g = std::gcd(g, x - offset);
    std::vector<std::int64_t> out;
    out.reserve(a.size());
    for (auto x : a) out.push_back((x - offset) / g);
    return {IntSet::from_sorted(std::move(out)), offset, g};
}

ResidueSet project_mod(const IntSet& a, std::int64_t m) {
    if (m < 1) throw DomainError("modulus must be >= 1");
    std::vector<std::int64_t> r;
    r.reserve(a.size());
    for (auto x : a) r.push_back(mod_floor(x, m));
    return ResidueSet(m, std::move(r));
}

IntSet fibre(const IntSet& a, std::int64_t m, std::int64_t x) {
    if (m < 1) throw DomainError("modulus must be >= 1");
    const std::int64_t target = mod_floor(x, m);
    std::vector<std::int64_t> out;
    for (auto y : a)
        if (mod_floor(y, m) == target) out.push_back(y);
    return IntSet::from_sorted(std::move(out));
}

std::int64_t intersection_size(const IntSet& a, const IntSet& s) {
    std::int64_t common = 0;
    auto i = a.begin();
    auto j = s.begin();
    while (i != a.end() && j != s.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    return common;
}

std::int64_t symm_diff_size(const IntSet& a, const IntSet& s) {
    return static_cast<std::int64_t>(a.size() + s.size()) - 2 * intersection_size(a, s);
}

IntSet ap_elements(const ArithProgression& p) {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(p.length()));
    for (std::int64_t i = 0; i < p.length(); ++i) out.push_back(p.start() + i * p.difference());
    return IntSet::from_sorted(std::move(out));
}

IntSet translate(const IntSet& a, std::int64_t t) {
    if (a.empty()) return a;
    checked_add(a.min(), t);
    checked_add(a.max(), t);
    std::vector<std::int64_t> out(a.begin(), a.end());
    for (auto& x : out) x += t;
    return IntSet::from_sorted(std::move(out));
}

IntSet dilate(const IntSet& a, std::int64_t lambda) {
    if (lambda < 1) throw DomainError("dilation factor must be >= 1");
    std::vector<std::int64_t> out;
    out.reserve(a.size());
    for (auto x : a) out.push_back(checked_mul(x, lambda));
    return IntSet::from_sorted(std::move(out));
}

IntSet set_union(const IntSet& a, const IntSet& b) {
    std::vector<std::int64_t> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return IntSet::from_sorted(std::move(out));
}

IntSet set_difference(const IntSet& a, const IntSet& b) {
    std::vector<std::int64_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return IntSet::from_sorted(std::move(out));
}

bool is_subset(const IntSet& a, const IntSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

std::int64_t count_outside(const IntSet& a, const ArithProgression& p) {
    std::int64_t outside = 0;
    for (auto x : a)
        if (!p.contains(x)) ++outside;
    return outside;
}

} // namespace sumsetlab
