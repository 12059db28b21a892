#include "epwind/permutation.hpp"

#include <algorithm>
#include <stdexcept>

namespace epwind {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
        if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[static_cast<std::size_t>(v)]) {
            throw std::invalid_argument("Permutation: images do not form a bijection");
        }
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<int> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(i);
    return Permutation(std::move(v));
}

Permutation Permutation::transposition(std::size_t n, int a, int b) {
    auto p = identity(n);
    std::swap(p.images_[static_cast<std::size_t>(a)], p.images_[static_cast<std::size_t>(b)]);
    return p;
}

Permutation Permutation::from_matrix(const std::vector<std::vector<int>>& m) {
    const std::size_t n = m.size();
    std::vector<int> images(n, -1);
    for (std::size_t col = 0; col < n; ++col) {
        int ones = 0;
        for (std::size_t row = 0; row < n; ++row) {
            if (m[row].size() != n) throw std::invalid_argument("Permutation: matrix is not square");
            if (m[row][col] == 1) {
                images[col] = static_cast<int>(row);
                ++ones;
            } else if (m[row][col] != 0) {
                throw std::invalid_argument("Permutation: matrix entries must be 0 or 1");
            }
        }
        if (ones != 1) throw std::invalid_argument("Permutation: each column needs exactly one 1");
    }
    return Permutation(std::move(images));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != static_cast<int>(i)) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

std::vector<std::vector<int>> Permutation::matrix() const {
    const std::size_t n = images_.size();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[static_cast<std::size_t>(images_[i])][i] = 1;
    return m;
}

std::vector<int> Permutation::cycle_type() const {
    std::vector<char> seen(images_.size(), 0);
    std::vector<int> lengths;
    for (std::size_t s = 0; s < images_.size(); ++s) {
        if (seen[s]) continue;
        int len = 0;
        for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(images_[i])) {
            seen[i] = 1;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
}

std::string Permutation::cycles() const {
    std::vector<char> seen(images_.size(), 0);
    std::string out;
    for (std::size_t s = 0; s < images_.size(); ++s) {
        if (seen[s] || images_[s] == static_cast<int>(s)) continue;
        out += '(';
        bool first = true;
        for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(images_[i])) {
            seen[i] = 1;
            if (!first) out += ' ';
            out += std::to_string(i + 1);
            first = false;
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("Permutation: size mismatch in composition");
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.images_[static_cast<std::size_t>(b.images_[i])];
    return Permutation(std::move(out));
}

}  // namespace epwind
