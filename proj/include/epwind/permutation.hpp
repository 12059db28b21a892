#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace epwind {

/// Bijection on sheet slots {0..n-1} (printed 1-based).
///
/// p(i) is the slot that the state in slot i moves to. The matrix form has
/// M[p(i)][i] = 1, so composition matches matrix multiplication:
/// (a * b)(i) = a(b(i)), i.e. b acts first.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(std::size_t n);
    /// Swap of slots a and b (0-based).
    static Permutation transposition(std::size_t n, int a, int b);
    static Permutation from_matrix(const std::vector<std::vector<int>>& m);

    std::size_t size() const noexcept { return images_.size(); }
    int operator()(std::size_t i) const { return images_[i]; }
    const std::vector<int>& images() const noexcept { return images_; }

    bool is_identity() const;
    Permutation inverse() const;
    std::vector<std::vector<int>> matrix() const;
    /// Multiset of cycle lengths, sorted descending.
    std::vector<int> cycle_type() const;
    /// Cycle notation, 1-based, fixed points omitted; "()" for identity.
    std::string cycles() const;

    /// out[p(i)] = v[i]: the slot contents after the move.
    template <typename T>
    std::vector<T> apply(const std::vector<T>& v) const {
        std::vector<T> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(images_[i])] = v[i];
        return out;
    }

    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.images_ < b.images_; }

private:
    std::vector<int> images_;
};

}  // namespace epwind
