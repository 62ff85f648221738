#include <doctest.h>

#include <cmath>

#include "bongle/bounds.hpp"

using namespace bongle;

TEST_CASE("inequality check") {
    for (int n = 3; n <= 11; ++n) {
        const auto c = inequality_check(n);
        CHECK(c.holds);
        CHECK(c.margin > 0);
    }
    // n = 2: (2n/(n-1)) Vol(T_2) = 4 v_tet, which sits below 5 v_tet; the
    // per-crossing inequality genuinely starts at n = 3.
    const auto c2 = inequality_check(2);
    CHECK(!c2.holds);
    CHECK(c2.margin == doctest::Approx(4.0 * constants().v_tet - constants().five_v_tet));
    // margin -> 0 from above for large n
    CHECK(inequality_check(100000).margin > 0);
    CHECK(inequality_check(100000).margin < 1e-3);
}

TEST_CASE("monotonicity scan") {
    const auto rows = monotonicity_scan(2, 200);
    REQUIRE(rows.size() == 199);
    // z1 term decreases from n = 12 on (it first rises to a peak near n = 7)
    for (const auto& r : rows)
        if (r.n >= 13) CHECK(r.z1_decreased);
    // Im U(z2) is negative and increasing: its contribution -z2_term to the
    // volume decreases for every n
    for (const auto& r : rows) {
        CHECK(r.z2_term < 0);
        if (r.n >= 3) CHECK(r.z2_increased);
    }
    // combined quantity (2n/(n-1)) Vol(T_n) decreasing toward 5 v_tet for n >= 12
    for (const auto& r : rows) {
        if (r.n >= 13) CHECK(r.combined_decreased);
        CHECK(r.combined == doctest::Approx(2.0 * r.n / (r.n - 1.0) * tn_volume(r.n))
                                .epsilon(1e-12));
        if (r.n >= 3) CHECK(r.combined > constants().five_v_tet);
    }
    CHECK_THROWS_AS(monotonicity_scan(1, 5), Error);
    CHECK_THROWS_AS(monotonicity_scan(5, 2), Error);
}

TEST_CASE("limit table") {
    const auto rows = limit_table(2, 200);
    REQUIRE(rows.size() == 199);
    CHECK(rows[0].v_n_b_over_n == doctest::Approx(2.0 * constants().v_tet).epsilon(1e-12));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].gap > 0);
        if (i > 0) {
            CHECK(rows[i].v_n_b_over_n > rows[i - 1].v_n_b_over_n);  // monotone increase
            CHECK(rows[i].gap < rows[i - 1].gap);                    // shrinking gap
        }
    }
    // n = 100 within 0.05 of the limit
    const auto r100 = limit_table(100, 100).front();
    CHECK(r100.gap < 0.05);
}

TEST_CASE("bound rows") {
    for (int n : {2, 3, 5, 11, 60}) {
        const auto r = bound_row(n);
        CHECK(r.below_five_n);
        CHECK(r.v_n_b < r.five_n_v_tet);
        CHECK(r.v_n_b_over_n == doctest::Approx(r.v_n_b / n).epsilon(1e-12));
        if (n >= 3) CHECK(r.inequality_holds);
    }
}

TEST_CASE("k order scan n=4") {
    const auto scan = k_order_scan(4);
    REQUIRE(scan.rows.size() == 4);  // k = 0, 1, and two balanced classes
    CHECK(scan.rows[0].k == 0);
    CHECK(scan.rows[1].k == 1);
    CHECK(scan.rows[2].k == 2);
    CHECK(scan.rows[3].k == 2);
    CHECK(scan.observed_monotone);
    CHECK(scan.note.find("not a theorem") != std::string::npos);
    for (const auto& r : scan.rows) {
        CHECK(r.volume < 5.0 * 4 * constants().v_tet);
        CHECK(r.volume <= balanced_closed_form(4) + 1e-6);
        if (r.k == 2) {
            CHECK(r.matches_closed_form);
            CHECK(std::abs(r.volume - balanced_closed_form(4)) < 1e-6);
        }
    }
}

TEST_CASE("k order scan n=6 balanced row matches the closed form") {
    const auto scan = k_order_scan(6);
    bool saw_balanced = false;
    for (const auto& r : scan.rows) {
        if (r.k == 3) {
            saw_balanced = true;
            CHECK(r.matches_closed_form);
            CHECK(std::abs(r.volume - balanced_closed_form(6)) < 1e-6);
        }
        CHECK(r.volume < 5.0 * 6 * constants().v_tet);
    }
    CHECK(saw_balanced);
    CHECK(scan.observed_monotone);
}
