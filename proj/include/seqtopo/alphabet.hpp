#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqtopo {

/// Ordered finite symbol set with a char <-> code bijection.
class Alphabet {
public:
    explicit Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty() || symbols_.size() > 64)
            throw std::invalid_argument("alphabet size must be in [1, 64]");
        index_.fill(-1);
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            unsigned char c = static_cast<unsigned char>(symbols_[i]);
            if (index_[c] != -1)
                throw std::invalid_argument("duplicate alphabet symbol");
            index_[c] = static_cast<int>(i);
        }
    }

    static const Alphabet& dna() {
        static const Alphabet a("ACGT");
        return a;
    }

    int size() const { return static_cast<int>(symbols_.size()); }
    char symbol(int code) const { return symbols_.at(static_cast<std::size_t>(code)); }
    int code_of(char c) const { return index_[static_cast<unsigned char>(c)]; }
    bool contains(char c) const { return code_of(c) >= 0; }
    const std::string& symbols() const { return symbols_; }

private:
    std::string symbols_;
    std::array<int, 256> index_{};
};

/// A validated symbol sequence. `path_length` is the number of elements
/// minus one: a sequence of k+1 symbols spells a path of length k.
struct Sequence {
    std::string id;
    std::vector<std::uint8_t> codes;

    long path_length() const { return static_cast<long>(codes.size()) - 1; }

    std::string to_string(const Alphabet& a) const {
        std::string s;
        s.reserve(codes.size());
        for (auto c : codes) s.push_back(a.symbol(c));
        return s;
    }
};

}  // namespace seqtopo
