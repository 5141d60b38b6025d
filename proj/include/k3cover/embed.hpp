#pragma once

// Reduction of a tower modulo a prime: embeddings T -> F_{p^k}.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "factor.hpp"
#include "finite_field.hpp"
#include "tower.hpp"

namespace k3cover {

class EmbeddingFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A ring homomorphism from the p-integral elements of a tower into F_q,
/// determined by the images of the level generators.
class TowerEmbedding {
public:
    TowerEmbedding(TowerField tower, FqField target, std::vector<FqElement> roots)
        : tower_(std::move(tower)), target_(std::move(target)), roots_(std::move(roots)), levels_(tower_.levels()) {}

    const TowerField& tower() const { return tower_; }
    const FqField& target() const { return target_; }
    std::uint64_t prime() const { return target_.characteristic(); }
    /// Image of the generator of level i (1-based).
    const std::vector<FqElement>& generator_images() const { return roots_; }

    /// Image of a; nullopt when a is not p-integral in the power basis.
    std::optional<FqElement> apply(const TowerElement& a) const {
        TowerElement e = tower_.coerce(a);
        return eval(tower_.depth(), e.flat(), 0);
    }
    std::optional<FqElement> apply(const Rational& a) const { return eval(0, Flat{a}, 0); }

private:
    std::optional<FqElement> eval(int level, const Flat& c, std::size_t offset) const {
        if (level == 0) {
            const Rational& q = c[offset];
            if (mod_u64(q.den(), prime()) == 0) return std::nullopt;
            return target_.from_rational(q);
        }
        const int d = levels_[level].level_degree();
        const std::size_t bs = static_cast<std::size_t>(levels_[level - 1].degree());
        FqElement acc = target_.zero();
        for (int i = d; i-- > 0;) {
            auto b = eval(level - 1, c, offset + i * bs);
            if (!b) return std::nullopt;
            acc = acc * roots_[level - 1] + *b;
        }
        return acc;
    }

    TowerField tower_;
    FqField target_;
    std::vector<FqElement> roots_;
    std::vector<TowerField> levels_;
};

/// Sends each level generator to a root of its reduced modulus in F_{p^k},
/// choosing roots in increasing index order depth-first.
inline TowerEmbedding tower_embed_mod_p(const TowerField& t, std::uint64_t p, int k = 1) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("embedding prime must be odd");
    FqField fq = FqField::of_degree(p, k);
    auto levels = t.levels();
    const int depth = t.depth();
    std::vector<FqElement> chosen;
    std::string failure = "no root chain modulo " + std::to_string(p);

    auto search = [&](auto&& self, int level) -> bool {
        if (level > depth) return true;
        TowerEmbedding partial(levels[level - 1], fq, chosen);
        std::vector<FqElement> coeffs;
        for (const auto& m : levels[level].data()->modulus) {
            auto img = partial.apply(levels[level - 1].element(m));
            if (!img) {
                failure = "bad reduction modulo " + std::to_string(p);
                return false;
            }
            coeffs.push_back(*img);
        }
        for (const auto& r : roots(UniPoly<FqField>(fq, coeffs))) {
            chosen.push_back(r);
            if (self(self, level + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!search(search, 1)) throw EmbeddingFailure(failure);
    return TowerEmbedding(t, fq, chosen);
}

/// First prime >= start admitting a degree-k embedding, with a sweep cap.
inline std::optional<TowerEmbedding> first_embedding(const TowerField& t, std::uint64_t start, std::uint64_t cap,
                                                     int k = 1) {
    for (std::uint64_t p = std::max<std::uint64_t>(start, 3); p <= cap; ++p) {
        if (!detail::zx::is_prime_small(p) || p % 2 == 0) continue;
        try {
            return tower_embed_mod_p(t, p, k);
        } catch (const EmbeddingFailure&) {
        }
    }
    return std::nullopt;
}

}  // namespace k3cover
