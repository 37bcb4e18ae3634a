#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bnt {

// Dynamic bitset over 64-bit words. Sized at construction; all binary
// operations require equal sizes. Unused high bits of the top word are
// kept zero so that whole-word comparison and hashing are valid.
class Bits {
public:
    Bits() = default;

    explicit Bits(std::size_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    static Bits from_indices(std::size_t size, const std::vector<std::uint32_t>& idxs) {
        Bits b(size);
        for (auto i : idxs) b.set(i);
        return b;
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value = true) {
        check_index(i);
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    Bits& operator|=(const Bits& o) {
        check_size(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    Bits& operator&=(const Bits& o) {
        check_size(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

    // this & ~o  (set difference)
    Bits and_not(const Bits& o) const {
        check_size(o);
        Bits r(size_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            r.words_[i] = words_[i] & ~o.words_[i];
        return r;
    }

    bool is_subset_of(const Bits& o) const {
        check_size(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const Bits& o) const {
        check_size(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    friend bool operator==(const Bits& a, const Bits& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const unsigned bit = static_cast<unsigned>(std::countr_zero(w));
                fn(static_cast<std::uint32_t>(wi * 64 + bit));
                w &= w - 1;
            }
        }
    }

    std::vector<std::uint32_t> to_indices() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for_each_set([&](std::uint32_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const {
        // FNV-1a over the words plus the size.
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&](std::uint64_t v) {
            for (int i = 0; i < 8; ++i) {
                h ^= (v >> (8 * i)) & 0xff;
                h *= 1099511628211ull;
            }
        };
        mix(size_);
        for (auto w : words_) mix(w);
        return static_cast<std::size_t>(h);
    }

private:
    void check_index(std::size_t i) const {
        if (i >= size_) throw std::out_of_range("Bits: index out of range");
    }
    void check_size(const Bits& o) const {
        if (size_ != o.size_) throw std::invalid_argument("Bits: size mismatch");
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitsHash {
    std::size_t operator()(const Bits& b) const { return b.hash(); }
};

} // namespace bnt
