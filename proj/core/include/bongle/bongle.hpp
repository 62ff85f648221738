#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bongle/errors.hpp"

namespace bongle {

/// Which side of the bracelet circle the charm's monogon points to.
enum class Side : std::uint8_t { Outie = 0, Innie = 1 };

/// The two traversal characters the charm's single crossing contributes,
/// under the fixed traversal orientation: OU = "ou", UO = "uo".
enum class CrossingPattern : std::uint8_t { OU = 0, UO = 1 };

struct Charm {
    Side side = Side::Outie;
    CrossingPattern pattern = CrossingPattern::OU;

    auto operator<=>(const Charm&) const = default;
};

/// A bongle: a cyclic sequence of n >= 2 charms, each carrying one crossing
/// that forms a monogon around one stake. All operations treat the charm
/// list cyclically.
class Bongle {
  public:
    explicit Bongle(std::vector<Charm> charms);

    int size() const { return static_cast<int>(charms_.size()); }
    const std::vector<Charm>& charms() const { return charms_; }
    /// Cyclic access: any integer index is reduced mod n.
    const Charm& charm(int i) const;

    bool operator==(const Bongle& other) const { return charms_ == other.charms_; }
    auto operator<=>(const Bongle& other) const { return charms_ <=> other.charms_; }

  private:
    std::vector<Charm> charms_;
};

/// Grammar: whitespace-separated tokens, each a side letter ('O' or 'I')
/// followed by a pattern digit ('0' = OU, '1' = UO). The compact form with
/// no separators is also accepted. Throws ParseError / NTooSmallError.
Bongle parse_bongle(std::string_view text);

/// Serializer: emits the whitespace form, e.g. "O0 I1 O0".
std::string to_string(const Bongle& b);
std::string to_token(const Charm& c);

/// JSON form: {"charms":[{"side":"O","pattern":0},...]}.
std::string to_json(const Bongle& b);
Bongle bongle_from_json(std::string_view json_text);

/// Cyclic over/under string of length 2n, e.g. "ououou".
std::string traversal_string(const Bongle& b);

/// True iff the cyclic traversal string has no "uu" and no "oo";
/// equivalently, iff all charms share one crossing pattern.
bool is_alternating(const Bongle& b);

int innie_count(const Bongle& b);

/// Swaps every side iff the innie count exceeds n/2, so the result has
/// k <= n/2. Ties (k = n/2) are left unchanged.
Bongle normalize_orientation(const Bongle& b);

enum class RepeatedLetter : std::uint8_t { uu, oo };

/// A junction between consecutive charms whose adjacent traversal letters
/// repeat. `junction_index` j sits between charms j and j+1 (mod n).
struct NonAltPair {
    int junction_index = 0;
    int left_charm = 0;
    int right_charm = 0;
    RepeatedLetter repeated_letter = RepeatedLetter::uu;
};

std::vector<NonAltPair> non_alternating_pairs(const Bongle& b);

enum class NonAlternatingType { TypeI, TypeII, TypeIII };

/// Classifies a non-alternating bongle. Type I: some non-alternating pair
/// joins two same-side monogons. Otherwise every pair is mixed-side:
/// Type III when one monogon belongs to two pairs, else Type II.
/// Priority I > III > II. Throws AlternatingInputError on alternating input.
NonAlternatingType classify_nonalternating(const Bongle& b);

enum class VerdictReason {
    AlternatingBongle,
    Whitehead,
    SixTwoSquared,
    TrivialTwoLink,
    SixOneSquaredBraid,
    NonAlternatingTypeI,
    NonAlternatingTypeII,
    NonAlternatingTypeIII,
};

std::string_view to_string(VerdictReason r);

struct HyperbolicityVerdict {
    bool is_hyperbolic = false;
    VerdictReason reason = VerdictReason::AlternatingBongle;
    /// Present only for the two hyperbolic 2-bongles.
    std::optional<double> known_volume;
    /// The split of the non-alternating 2-bongles between the trivial
    /// 2-link and the 6_1^2 braid exterior is a documented convention,
    /// flagged here.
    bool provisional = false;
};

/// n >= 3: hyperbolic iff alternating (non-alternating type as witness).
/// n = 2: alternating same-side -> Whitehead, mixed -> 6_2^2;
/// non-alternating same-side -> trivial 2-link, mixed -> 6_1^2 (provisional).
HyperbolicityVerdict decide_hyperbolic(const Bongle& b);

/// Equivalence is generated by rotation, reflection (reversing the charm
/// order and swapping each pattern), the global in/out swap, and the global
/// crossing reversal. are_equivalent scans the orbit directly; canonical_form
/// returns the lexicographically least orbit element (Outie < Innie, OU < UO).
bool are_equivalent(const Bongle& a, const Bongle& b);
Bongle canonical_form(const Bongle& b);

/// All 8n (not necessarily distinct) orbit elements.
std::vector<Bongle> equivalence_orbit(const Bongle& b);

enum class BongleFilter { All, Alternating, Balanced };

/// One canonical representative per equivalence class, sorted. `Balanced`
/// selects alternating bongles with exactly n/2 innies.
/// Throws EnumerationCapError when n < 2 or n > cap.
std::vector<Bongle> enumerate_bongles(int n, BongleFilter filter, int cap = 12);

struct EdgeClassCounts {
    int central = 0;   ///< n + k
    int exterior = 0;  ///< 2n - k
};

/// Edge-class sizes of the central and exterior equatorial classes for an
/// alternating bongle with k innies; central + exterior = 3n.
/// Throws NonAlternatingError otherwise.
EdgeClassCounts edge_class_counts(const Bongle& b);

}  // namespace bongle
