#include "bongle/bongle.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <nlohmann/json.hpp>

#include "bongle/tetrahedron.hpp"

namespace bongle {
namespace {

Charm side_swapped(Charm c) {
    c.side = c.side == Side::Outie ? Side::Innie : Side::Outie;
    return c;
}

Charm pattern_swapped(Charm c) {
    c.pattern = c.pattern == CrossingPattern::OU ? CrossingPattern::UO
                                                 : CrossingPattern::OU;
    return c;
}

std::vector<Charm> rotated(const std::vector<Charm>& v, int r) {
    const int n = static_cast<int>(v.size());
    std::vector<Charm> out(v.size());
    for (int i = 0; i < n; ++i) out[i] = v[(i + r) % n];
    return out;
}

// Tracing the knot backward reverses the charm order and exchanges each
// crossing's over/under entry order.
std::vector<Charm> reflected(const std::vector<Charm>& v) {
    std::vector<Charm> out(v.rbegin(), v.rend());
    for (auto& c : out) c = pattern_swapped(c);
    return out;
}

char last_letter(CrossingPattern p) { return p == CrossingPattern::OU ? 'u' : 'o'; }
char first_letter(CrossingPattern p) { return p == CrossingPattern::OU ? 'o' : 'u'; }

}  // namespace

Bongle::Bongle(std::vector<Charm> charms) : charms_(std::move(charms)) {
    if (charms_.size() < 2)
        throw NTooSmallError("a bongle needs at least 2 charms, got " +
                             std::to_string(charms_.size()));
}

const Charm& Bongle::charm(int i) const {
    const int n = size();
    return charms_[((i % n) + n) % n];
}

Bongle parse_bongle(std::string_view text) {
    std::vector<Charm> charms;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        Charm c;
        if (text[i] == 'O')
            c.side = Side::Outie;
        else if (text[i] == 'I')
            c.side = Side::Innie;
        else
            throw ParseError("expected side letter 'O' or 'I', got '" +
                                 std::string(1, text[i]) + "'",
                             i);
        if (i + 1 >= text.size())
            throw ParseError("charm token truncated: missing pattern digit", i + 1);
        if (text[i + 1] == '0')
            c.pattern = CrossingPattern::OU;
        else if (text[i + 1] == '1')
            c.pattern = CrossingPattern::UO;
        else
            throw ParseError("expected pattern digit '0' or '1', got '" +
                                 std::string(1, text[i + 1]) + "'",
                             i + 1);
        charms.push_back(c);
        i += 2;
    }
    if (charms.size() < 2)
        throw NTooSmallError("a bongle needs at least 2 charms, got " +
                             std::to_string(charms.size()));
    return Bongle(std::move(charms));
}

std::string to_token(const Charm& c) {
    std::string t;
    t += c.side == Side::Outie ? 'O' : 'I';
    t += c.pattern == CrossingPattern::OU ? '0' : '1';
    return t;
}

std::string to_string(const Bongle& b) {
    std::string out;
    for (const Charm& c : b.charms()) {
        if (!out.empty()) out += ' ';
        out += to_token(c);
    }
    return out;
}

std::string to_json(const Bongle& b) {
    nlohmann::json j;
    j["charms"] = nlohmann::json::array();
    for (const Charm& c : b.charms()) {
        j["charms"].push_back(
            {{"side", c.side == Side::Outie ? "O" : "I"},
             {"pattern", c.pattern == CrossingPattern::OU ? 0 : 1}});
    }
    return j.dump();
}

Bongle bongle_from_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(),
                         static_cast<std::size_t>(e.byte));
    }
    if (!j.contains("charms") || !j["charms"].is_array())
        throw ParseError("JSON bongle needs a \"charms\" array", 0);
    std::vector<Charm> charms;
    for (const auto& jc : j["charms"]) {
        Charm c;
        const std::string side = jc.at("side").get<std::string>();
        if (side == "O")
            c.side = Side::Outie;
        else if (side == "I")
            c.side = Side::Innie;
        else
            throw ParseError("side must be \"O\" or \"I\"", 0);
        const int pat = jc.at("pattern").get<int>();
        if (pat != 0 && pat != 1) throw ParseError("pattern must be 0 or 1", 0);
        c.pattern = pat == 0 ? CrossingPattern::OU : CrossingPattern::UO;
        charms.push_back(c);
    }
    if (charms.size() < 2)
        throw NTooSmallError("a bongle needs at least 2 charms, got " +
                             std::to_string(charms.size()));
    return Bongle(std::move(charms));
}

std::string traversal_string(const Bongle& b) {
    std::string s;
    s.reserve(2 * b.size());
    for (const Charm& c : b.charms())
        s += c.pattern == CrossingPattern::OU ? "ou" : "uo";
    return s;
}

bool is_alternating(const Bongle& b) {
    const CrossingPattern p = b.charms().front().pattern;
    return std::all_of(b.charms().begin(), b.charms().end(),
                       [p](const Charm& c) { return c.pattern == p; });
}

int innie_count(const Bongle& b) {
    return static_cast<int>(std::count_if(
        b.charms().begin(), b.charms().end(),
        [](const Charm& c) { return c.side == Side::Innie; }));
}

Bongle normalize_orientation(const Bongle& b) {
    if (2 * innie_count(b) <= b.size()) return b;
    std::vector<Charm> v = b.charms();
    for (auto& c : v) c = side_swapped(c);
    return Bongle(std::move(v));
}

std::vector<NonAltPair> non_alternating_pairs(const Bongle& b) {
    std::vector<NonAltPair> out;
    const int n = b.size();
    for (int j = 0; j < n; ++j) {
        const char l = last_letter(b.charm(j).pattern);
        const char r = first_letter(b.charm(j + 1).pattern);
        if (l == r) {
            out.push_back({j, j, (j + 1) % n,
                           l == 'u' ? RepeatedLetter::uu : RepeatedLetter::oo});
        }
    }
    return out;
}

NonAlternatingType classify_nonalternating(const Bongle& b) {
    const auto pairs = non_alternating_pairs(b);
    if (pairs.empty())
        throw AlternatingInputError("classify_nonalternating: bongle is alternating");
    for (const auto& p : pairs) {
        if (b.charm(p.left_charm).side == b.charm(p.right_charm).side)
            return NonAlternatingType::TypeI;
    }
    // All pairs mixed-side; Type III iff some monogon sits in two pairs.
    std::vector<int> membership(b.size(), 0);
    for (const auto& p : pairs) {
        if (++membership[p.left_charm] > 1 || ++membership[p.right_charm] > 1)
            return NonAlternatingType::TypeIII;
    }
    return NonAlternatingType::TypeII;
}

std::string_view to_string(VerdictReason r) {
    switch (r) {
        case VerdictReason::AlternatingBongle: return "AlternatingBongle";
        case VerdictReason::Whitehead: return "Whitehead";
        case VerdictReason::SixTwoSquared: return "SixTwoSquared";
        case VerdictReason::TrivialTwoLink: return "TrivialTwoLink";
        case VerdictReason::SixOneSquaredBraid: return "SixOneSquaredBraid";
        case VerdictReason::NonAlternatingTypeI: return "NonAlternatingTypeI";
        case VerdictReason::NonAlternatingTypeII: return "NonAlternatingTypeII";
        case VerdictReason::NonAlternatingTypeIII: return "NonAlternatingTypeIII";
    }
    return "?";
}

HyperbolicityVerdict decide_hyperbolic(const Bongle& b) {
    HyperbolicityVerdict v;
    const bool alt = is_alternating(b);
    if (b.size() == 2) {
        const bool same_side = b.charm(0).side == b.charm(1).side;
        if (alt) {
            v.is_hyperbolic = true;
            v.reason = same_side ? VerdictReason::Whitehead
                                 : VerdictReason::SixTwoSquared;
            v.known_volume = same_side ? constants().vol_whitehead
                                       : constants().vol_622;
        } else {
            v.is_hyperbolic = false;
            v.reason = same_side ? VerdictReason::TrivialTwoLink
                                 : VerdictReason::SixOneSquaredBraid;
            v.provisional = true;
        }
        return v;
    }
    if (alt) {
        v.is_hyperbolic = true;
        v.reason = VerdictReason::AlternatingBongle;
        return v;
    }
    v.is_hyperbolic = false;
    switch (classify_nonalternating(b)) {
        case NonAlternatingType::TypeI:
            v.reason = VerdictReason::NonAlternatingTypeI;
            break;
        case NonAlternatingType::TypeII:
            v.reason = VerdictReason::NonAlternatingTypeII;
            break;
        case NonAlternatingType::TypeIII:
            v.reason = VerdictReason::NonAlternatingTypeIII;
            break;
    }
    return v;
}

std::vector<Bongle> equivalence_orbit(const Bongle& b) {
    std::vector<Bongle> out;
    out.reserve(8 * b.size());
    for (int refl = 0; refl < 2; ++refl) {
        std::vector<Charm> base = refl ? reflected(b.charms()) : b.charms();
        for (int ss = 0; ss < 2; ++ss) {
            for (int ps = 0; ps < 2; ++ps) {
                std::vector<Charm> v = base;
                for (auto& c : v) {
                    if (ss) c = side_swapped(c);
                    if (ps) c = pattern_swapped(c);
                }
                for (int r = 0; r < static_cast<int>(v.size()); ++r)
                    out.push_back(Bongle(rotated(v, r)));
            }
        }
    }
    return out;
}

bool are_equivalent(const Bongle& a, const Bongle& b) {
    if (a.size() != b.size()) return false;
    for (const Bongle& x : equivalence_orbit(a))
        if (x == b) return true;
    return false;
}

Bongle canonical_form(const Bongle& b) {
    auto orbit = equivalence_orbit(b);
    return *std::min_element(orbit.begin(), orbit.end());
}

std::vector<Bongle> enumerate_bongles(int n, BongleFilter filter, int cap) {
    if (n < 2) throw EnumerationCapError("enumeration requires n >= 2");
    if (n > cap)
        throw EnumerationCapError("n = " + std::to_string(n) +
                                  " exceeds the enumeration cap " +
                                  std::to_string(cap));

    std::set<Bongle> classes;
    if (filter == BongleFilter::All) {
        // 4^n raw charm sequences; keep canonical forms. Each class contains a
        // rotation-minimal raw sequence, so the others can be skipped cheaply.
        const std::uint64_t total = std::uint64_t(1) << (2 * n);
        std::vector<Charm> v(n);
        auto rotation_minimal = [&v, n] {
            for (int r = 1; r < n; ++r) {
                for (int i = 0; i < n; ++i) {
                    const Charm& a = v[i];
                    const Charm& b = v[(i + r) % n];
                    if (b < a) return false;
                    if (a < b) break;
                }
            }
            return true;
        };
        for (std::uint64_t code = 0; code < total; ++code) {
            for (int i = 0; i < n; ++i) {
                const unsigned bits = (code >> (2 * i)) & 3u;
                v[i].side = (bits & 2u) ? Side::Innie : Side::Outie;
                v[i].pattern = (bits & 1u) ? CrossingPattern::UO : CrossingPattern::OU;
            }
            if (!rotation_minimal()) continue;
            classes.insert(canonical_form(Bongle(v)));
        }
    } else {
        // Every alternating class contains an all-OU representative, so only
        // side patterns vary.
        const std::uint64_t total = std::uint64_t(1) << n;
        std::vector<Charm> v(n);
        for (std::uint64_t code = 0; code < total; ++code) {
            int k = 0;
            for (int i = 0; i < n; ++i) {
                const bool innie = (code >> i) & 1u;
                k += innie;
                v[i] = {innie ? Side::Innie : Side::Outie, CrossingPattern::OU};
            }
            if (filter == BongleFilter::Balanced && 2 * k != n) continue;
            classes.insert(canonical_form(Bongle(v)));
        }
    }
    return std::vector<Bongle>(classes.begin(), classes.end());
}

EdgeClassCounts edge_class_counts(const Bongle& b) {
    if (!is_alternating(b))
        throw NonAlternatingError("edge_class_counts requires an alternating bongle");
    const int n = b.size();
    const int k = innie_count(b);
    return {n + k, 2 * n - k};
}

}  // namespace bongle
