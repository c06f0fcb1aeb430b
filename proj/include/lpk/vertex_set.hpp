#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace lpk {

/// Subset of {0, ..., n-1}, stored as a bitset. Iteration order is ascending.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    VertexSet(std::size_t n, std::initializer_list<std::size_t> members) : VertexSet(n) {
        for (auto v : members) insert(v);
    }
    static VertexSet full(std::size_t n) {
        VertexSet s(n);
        for (std::size_t i = 0; i < n; ++i) s.insert(i);
        return s;
    }
    static VertexSet of(std::size_t n, const std::vector<std::size_t>& members) {
        VertexSet s(n);
        for (auto v : members) s.insert(v);
        return s;
    }

    std::size_t universe() const noexcept { return n_; }
    bool contains(std::size_t v) const { return (w_[v >> 6] >> (v & 63)) & 1u; }
    void insert(std::size_t v) { w_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(std::size_t v) { w_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }

    std::size_t size() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(std::popcount(x));
        return c;
    }
    bool empty() const {
        for (auto x : w_)
            if (x) return false;
        return true;
    }
    bool is_full() const { return size() == n_; }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (contains(i)) out.push_back(i);
        return out;
    }

    bool subset_of(const VertexSet& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    VertexSet operator|(const VertexSet& o) const {
        VertexSet r(*this);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] |= o.w_[i];
        return r;
    }
    VertexSet operator&(const VertexSet& o) const {
        VertexSet r(*this);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
        return r;
    }
    /// Set difference.
    VertexSet operator-(const VertexSet& o) const {
        VertexSet r(*this);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
        return r;
    }
    VertexSet complement() const { return full(n_) - *this; }

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
    /// Orders by size, then by the sorted member list; used for deterministic listings.
    friend bool operator<(const VertexSet& a, const VertexSet& b) {
        std::size_t sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        return a.members() < b.members();
    }

    std::size_t hash() const {
        std::size_t h = n_;
        for (auto x : w_) h = h * 1000003u ^ std::hash<std::uint64_t>{}(x);
        return h;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct VertexSetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

}  // namespace lpk
