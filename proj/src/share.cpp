#include "hexid/share.hpp"

#include <algorithm>
#include <map>

namespace hexid {

Rational share(const PeriodicCode& code, Vertex c, int r) {
    if (!code.is_codeword(c)) throw std::invalid_argument("share: not a codeword");
    Rational total;
    for (Vertex u : ball(c, r)) {
        auto I = code.iset(u, r);
        if (I.empty()) throw ShareUndefined(u);
        total += Rational(1, static_cast<long long>(I.size()));
    }
    return total;
}

Rational share_upper_bound(const std::vector<Vertex>& D, Vertex c, int r) {
    if (std::find(D.begin(), D.end(), c) == D.end())
        throw std::invalid_argument("share_upper_bound: c must belong to D");
    std::map<std::vector<Vertex>, long long> classes;
    for (Vertex u : ball(c, r)) {
        std::vector<Vertex> I;
        for (Vertex d : D)
            if (distance(u, d) <= r) I.push_back(d);
        std::sort(I.begin(), I.end());
        ++classes[I];
    }
    Rational total;
    for (auto& [I, m] : classes) {
        long long k = static_cast<long long>(I.size());
        if (k == 0)
            total += Rational(1) + Rational(m - 1, 2);
        else
            total += Rational(1, k) + Rational(m - 1) * Rational(1, k + 1);
    }
    return total;
}

ShareReport share_report(const PeriodicCode& code, int r) {
    ShareReport rep;
    for (Vertex c : code.codewords()) {
        Rational s = share(code, c, r);
        rep.shares.emplace_back(c, s);
    }
    rep.sum = Rational(0);
    rep.max_share = rep.shares.front().second;
    for (auto& [c, s] : rep.shares) {
        rep.sum += s;
        if (rep.max_share < s) rep.max_share = s;
    }
    rep.avg_share = rep.sum / Rational(static_cast<long long>(rep.shares.size()));
    return rep;
}

}  // namespace hexid
