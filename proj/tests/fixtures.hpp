#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "k3cover/surface.hpp"

namespace fixtures {

using namespace k3cover;

// Bracket of the X_h display: monomial key -> integer coefficient.
inline const std::vector<std::pair<std::string, long>>& xh_bracket() {
    static const std::vector<std::pair<std::string, long>> b = {
        {"5,1,0", 11}, {"5,0,1", 7},  {"4,2,0", 1},  {"4,1,1", 5},  {"4,0,2", 7},  {"3,3,0", 7},
        {"3,2,1", 10}, {"3,1,2", 5},  {"3,0,3", 4},  {"2,4,0", 6},  {"2,3,1", 5},  {"2,2,2", 10},
        {"2,1,3", 5},  {"2,0,4", 5},  {"1,5,0", 11}, {"1,3,2", 5},  {"1,0,5", 12}, {"0,6,0", 9},
        {"0,4,2", 5},  {"0,2,4", 10}, {"0,0,6", 4}};
    return b;
}

/// f for X_0: (7/73) times the bracket.
inline Form x0_form() {
    std::map<Monomial, TowerElement> c;
    for (const auto& [k, v] : xh_bracket()) c[parse_monomial_key(k, 3)] = TowerElement(Rational(7 * v, 73));
    return make_sextic(TowerField{}, c);
}

inline K3DoubleCover x0() { return K3DoubleCover(TowerField{}, x0_form()); }

/// The quartic of the X_0 example, constant term first.
inline TPoly x0_quartic() {
    TowerField q;
    return TPoly(q, {TowerElement(1), TowerElement(Rational(-4078, 3577)), TowerElement(Rational(81451, 25039)),
                     TowerElement(Rational(-1540220, 175273)), TowerElement(Rational(16771780, 1226911))});
}

inline Form form_from(const std::vector<std::pair<std::string, Rational>>& terms, const TowerField& k = {}) {
    std::map<Monomial, TowerElement> c;
    for (const auto& [key, v] : terms) c[parse_monomial_key(key, 3)] = TowerElement(v);
    return make_sextic(k, c);
}

/// -x^6 - y^6 - z^6
inline K3DoubleCover fermat_minus() {
    return K3DoubleCover(TowerField{}, form_from({{"6,0,0", -1}, {"0,6,0", -1}, {"0,0,6", -1}}));
}

}  // namespace fixtures
