#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace subturan {

// Fixed-capacity bitset sized at construction. Vertex sets and adjacency
// rows are stored this way so that common-neighborhood queries are word-wise
// intersections.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int capacity() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void clear() { for (auto& w : w_) w = 0; }

    int count() const {
        int c = 0;
        for (auto w : w_) c += __builtin_popcountll(w);
        return c;
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    // this \ o
    Bitset& subtract(const Bitset& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { a &= b; return a; }
    friend Bitset operator|(Bitset a, const Bitset& b) { a |= b; return a; }

    bool intersects(const Bitset& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    int intersection_count(const Bitset& o) const {
        int c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += __builtin_popcountll(w_[i] & o.w_[i]);
        return c;
    }

    // -1 when exhausted.
    int find_first() const { return find_next(-1); }
    int find_next(int i) const {
        for (int j = i + 1; j < n_;) {
            std::uint64_t w = w_[j >> 6] >> (j & 63);
            if (w) return j + __builtin_ctzll(w);
            j = ((j >> 6) + 1) << 6;
        }
        return -1;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (int v = find_first(); v >= 0; v = find_next(v)) f(v);
    }

    std::vector<int> to_vector() const {
        std::vector<int> r;
        r.reserve(count());
        for_each([&](int v) { r.push_back(v); });
        return r;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }

private:
    int n_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace subturan
