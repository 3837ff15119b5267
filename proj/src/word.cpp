#include "gct/word.hpp"

#include <algorithm>
#include <cmath>

namespace gct {

double shift_metric(const SymbolWord& a, const SymbolWord& b) {
    size_t n = std::min(a.size(), b.size());
    for (size_t k = 0; k < n; ++k)
        if (a[k] != b[k]) return std::exp(-double(k));
    if (a.size() == b.size()) return 0.0;
    return std::exp(-double(n)); // one word is a strict prefix of the other
}

SymbolWord Address::prefix(size_t n) const {
    if (period.empty()) throw Error("address has an empty period");
    SymbolWord w;
    w.letters.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < preperiod.size())
            w.letters.push_back(preperiod[i]);
        else
            w.letters.push_back(period[(i - preperiod.size()) % period.size()]);
    }
    return w;
}

namespace {

// Smallest p dividing |v| such that v is the p-prefix repeated.
SymbolWord primitive_root(const SymbolWord& v) {
    size_t n = v.size();
    for (size_t p = 1; p <= n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (size_t i = p; i < n && ok; ++i) ok = (v[i] == v[i % p]);
        if (ok) return v.prefix(p);
    }
    return v;
}

} // namespace

Address Address::canonical() const {
    if (period.empty()) throw Error("address has an empty period");
    Address a;
    a.preperiod = preperiod;
    a.period = primitive_root(period);
    // Absorb matching tail letters: u'x (y1..yp)^inf = u' (x y1..y_{p-1})^inf when x == yp.
    while (!a.preperiod.empty() && a.preperiod.letters.back() == a.period.letters.back()) {
        a.preperiod.letters.pop_back();
        std::rotate(a.period.letters.begin(), a.period.letters.end() - 1, a.period.letters.end());
    }
    a.period = primitive_root(a.period);
    return a;
}

} // namespace gct
