#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gct/error.hpp"

namespace gct {

/// Finite word over the alphabet {1,...,d}, letters stored 1-based.
struct SymbolWord {
    std::vector<uint8_t> letters;

    SymbolWord() = default;
    SymbolWord(std::initializer_list<int> ls) {
        for (int l : ls) letters.push_back(uint8_t(l));
    }
    explicit SymbolWord(std::vector<uint8_t> ls) : letters(std::move(ls)) {}

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    uint8_t operator[](size_t i) const { return letters[i]; }

    /// Drops the first letter (one-sided shift).
    SymbolWord shifted() const {
        if (letters.empty()) throw Error("cannot shift the empty word");
        return SymbolWord(std::vector<uint8_t>(letters.begin() + 1, letters.end()));
    }
    /// Drops the last letter.
    SymbolWord parent() const {
        if (letters.empty()) throw Error("the empty word has no parent");
        return SymbolWord(std::vector<uint8_t>(letters.begin(), letters.end() - 1));
    }
    SymbolWord prefix(size_t n) const {
        return SymbolWord(std::vector<uint8_t>(letters.begin(),
                                               letters.begin() + std::min(n, letters.size())));
    }
    SymbolWord appended(uint8_t l) const {
        SymbolWord w = *this;
        w.letters.push_back(l);
        return w;
    }
    /// Concatenation: *this followed by tail.
    SymbolWord concat(const SymbolWord& tail) const {
        SymbolWord w = *this;
        w.letters.insert(w.letters.end(), tail.letters.begin(), tail.letters.end());
        return w;
    }

    bool operator==(const SymbolWord& o) const { return letters == o.letters; }
    bool operator<(const SymbolWord& o) const { return letters < o.letters; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < letters.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(int(letters[i]));
        }
        return s + ")";
    }
};

struct WordHash {
    size_t operator()(const SymbolWord& w) const {
        uint64_t h = 1469598103934665603ull;
        for (uint8_t l : w.letters) {
            h ^= l;
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};

/// exp(-k) where k is the first index of disagreement (0 when the first letters differ,
/// and distance 0 for equal words compared to their common length).
double shift_metric(const SymbolWord& a, const SymbolWord& b);

/// Eventually periodic address: preperiod u followed by the repeating block v.
struct Address {
    SymbolWord preperiod;
    SymbolWord period; // non-empty

    /// First n letters of u v v v ...
    SymbolWord prefix(size_t n) const;

    /// Canonical form: the period reduced to its primitive root, rotations absorbed
    /// into the preperiod, and the preperiod shortened whenever its last letter
    /// matches the rotated period's last letter.  Canonical addresses representing
    /// the same point of the shift space compare equal.
    Address canonical() const;

    bool operator==(const Address& o) const {
        return preperiod == o.preperiod && period == o.period;
    }
    bool operator<(const Address& o) const {
        if (preperiod != o.preperiod) return preperiod < o.preperiod;
        return period < o.period;
    }

    std::string str() const { return preperiod.str() + period.str() + "inf"; }
};

} // namespace gct
