#include <doctest.h>

#include <cmath>
#include <set>

#include "bongle/triangulation.hpp"

using namespace bongle;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("build preconditions") {
    CHECK_THROWS_AS(build_decomposition(parse_bongle("O0 O1 O0")), NonAlternatingError);
    CHECK_THROWS_AS(build_decomposition(parse_bongle("O0 O0")), NTooSmallError);
}

TEST_CASE("slot bookkeeping") {
    const auto t = build_decomposition(parse_bongle("O0 I0 O0 I0"));
    CHECK(t.crossings() == 4);
    CHECK(t.slot_count() == 72);
    for (int i = 0; i < t.slot_count(); ++i) CHECK(t.slot_index(t.slot_at(i)) == i);
}

TEST_CASE("equatorial class sizes") {
    const auto bal4 = build_decomposition(parse_bongle("O0 I0 O0 I0"));
    CHECK(bal4.inner_class_size() == 6);
    CHECK(bal4.outer_class_size() == 6);

    const auto out3 = build_decomposition(parse_bongle("O0 O0 O0"));
    CHECK(out3.inner_class_size() == 3);
    CHECK(out3.outer_class_size() == 6);

    // (n+k, 2n-k) exhaustively over all alternating bongles, n <= 8
    for (int n = 3; n <= 8; ++n) {
        for (std::uint64_t code = 0; code < (std::uint64_t(1) << n); ++code) {
            std::vector<Charm> v(n);
            int k = 0;
            for (int i = 0; i < n; ++i) {
                const bool innie = (code >> i) & 1;
                k += innie;
                v[i] = {innie ? Side::Innie : Side::Outie, CrossingPattern::OU};
            }
            const auto t = build_decomposition(Bongle(v));
            CHECK(t.inner_class_size() == n + k);
            CHECK(t.outer_class_size() == 2 * n - k);
        }
    }
}

TEST_CASE("constraint census") {
    // 6n per-tetrahedron rows + n central + 2 equatorial + n ideal classes
    const auto t5 = build_decomposition(parse_bongle("O0 I0 O0 I0 O0"));
    CHECK(t5.constraints().rows.size() == 42);
    const auto t3 = build_decomposition(parse_bongle("O0 O0 O0"));
    CHECK(t3.constraints().rows.size() == 26);
}

TEST_CASE("ideal edge classes partition the B/C/E/F slots") {
    for (const char* spec : {"O0 O0 O0", "O0 I0 O0 I0", "O0 I0 I0 O0 O0"}) {
        const auto t = build_decomposition(parse_bongle(spec));
        const int n = t.crossings();
        std::set<int> seen;
        for (int j = 0; j < n; ++j) {
            const auto& cls = t.ideal_class(j);
            CHECK(cls.size() == 12);
            std::set<int> bips;
            for (int s : cls) {
                CHECK(seen.insert(s).second);  // each slot in exactly one class
                const auto slot = t.slot_at(s);
                CHECK(slot.label != EdgeLabel::A);
                CHECK(slot.label != EdgeLabel::D);
                bips.insert(slot.bipyramid);
            }
            // drawn from exactly three consecutive bipyramids
            CHECK(bips.size() == 3);
            CHECK(bips.count(j) == 1);
            CHECK(bips.count((j + 1) % n) == 1);
            CHECK(bips.count((j + n - 1) % n) == 1);
        }
        CHECK(static_cast<int>(seen.size()) == 12 * n);
    }
}

TEST_CASE("feasible start") {
    const auto bal6 = build_decomposition(parse_bongle("O0 I0 O0 I0 O0 I0"));
    const auto x6 = feasible_start(bal6);
    for (int j = 0; j < 6; ++j)
        for (int k = 0; k < 3; ++k) {
            const int base = (j * 3 + k) * 6;
            CHECK(x6[base + 0] == doctest::Approx(2.0 * kPi / 9.0).epsilon(1e-15));
            CHECK(x6[base + 3] == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-15));
        }
    CHECK(constraint_residuals(bal6, x6).max_norm < 1e-12);

    const auto out3 = build_decomposition(parse_bongle("O0 O0 O0"));
    const auto x3 = feasible_start(out3);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const double a = x3[(j * 3 + k) * 6];
            if (out3.a_class(j, k) == EquatorialClass::Inner)
                CHECK(a == doctest::Approx(2.0 * kPi / 3.0));
            else
                CHECK(a == doctest::Approx(kPi / 3.0));
        }
    CHECK(constraint_residuals(out3, x3).max_norm < 1e-12);

    // all slots strictly interior
    for (double v : x3) {
        CHECK(v > 0.0);
        CHECK(v < kPi);
    }
}

TEST_CASE("residual mechanics") {
    const auto t = build_decomposition(parse_bongle("O0 O0 O0 O0"));
    auto x = feasible_start(t);

    AngleAssignment zero(t.slot_count(), 0.0);
    const auto rz = constraint_residuals(t, zero);
    for (std::size_t i = 0; i < rz.rows.size(); ++i) {
        if (t.constraints().rows[i].name.find("central") != std::string::npos)
            CHECK(rz.rows[i] == doctest::Approx(2.0 * kPi));
    }

    // perturbing one D slot changes exactly the rows containing it, by 1e-3
    const int slot = t.slot_index({1, 2, EdgeLabel::D});
    x[slot] += 1e-3;
    const auto r = constraint_residuals(t, x);
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        bool contains = false;
        for (const auto& [s, c] : t.constraints().rows[i].coefficients)
            if (s == slot) contains = true;
        if (contains)
            CHECK(r.rows[i] == doctest::Approx(1e-3).epsilon(1e-9));
        else
            CHECK(r.rows[i] < 1e-12);
    }

    AngleAssignment bad(3);
    CHECK_THROWS_AS(constraint_residuals(t, bad), DimensionMismatchError);
}

TEST_CASE("constraint rank: one documented redundancy") {
    for (const char* spec : {"O0 O0 O0", "O0 I0 O0 I0", "O0 I0 O0 I0 O0",
                             "O0 O0 I0 I0 O0 I0"}) {
        const auto t = build_decomposition(parse_bongle(spec));
        const int n = t.crossings();
        CHECK(static_cast<int>(t.constraints().rows.size()) == 8 * n + 2);
        CHECK(constraint_rank(t) == 8 * n + 1);
    }
}

TEST_CASE("loosened system") {
    const auto t = build_decomposition(parse_bongle("O0 O0 O0"), ConstraintLevel::Loosened);
    CHECK(t.constraints().rows.size() == 3);
    const auto x = feasible_start(t);
    CHECK(constraint_residuals(t, x).max_norm < 1e-12);
    CHECK(constraint_rank(t) == 3);
}

TEST_CASE("debug dump is valid json with the expected shape") {
    const auto t = build_decomposition(parse_bongle("O0 O0 O0"));
    const std::string dump = dump_triangulation_json(t);
    CHECK(dump.find("\"slot_count\": 54") != std::string::npos);
    CHECK(dump.find("ideal_classes") != std::string::npos);
    CHECK(dump.find("\"bongle\": \"O0 O0 O0\"") != std::string::npos);
}
