#include "bongle/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace bongle {
namespace {

void check_scan_range(int n_min, int n_max) {
    if (n_min < 2 || n_max < n_min || n_max > 1000000)
        throw Error("scan range must satisfy 2 <= n_min <= n_max <= 10^6");
}

// Rows are independent pure computations; run them across a few threads and
// let the caller merge deterministically by index.
template <typename Fn>
void parallel_rows(int count, Fn&& fn) {
    const int workers =
        std::min<int>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

BoundRow bound_row(int n) {
    BoundRow r;
    r.n = n;
    const double vt = tn_volume(n);
    r.v_n_b = 2.0 * n * vt;
    r.five_n_v_tet = 5.0 * n * constants().v_tet;
    r.per_crossing_bound = 2.0 * n / (n - 1.0) * vt;
    r.v_n_b_over_n = 2.0 * vt;
    r.below_five_n = r.v_n_b < r.five_n_v_tet;
    r.inequality_holds = r.per_crossing_bound > constants().five_v_tet;
    return r;
}

InequalityCheck inequality_check(int n) {
    if (n < 2) throw Error("inequality_check requires n >= 2");
    const double margin =
        2.0 * n / (n - 1.0) * tn_volume(n) - constants().five_v_tet;
    return {margin > 0, margin};
}

std::vector<MonotonicityRow> monotonicity_scan(int n_min, int n_max) {
    check_scan_range(n_min, n_max);
    std::vector<MonotonicityRow> out;
    out.reserve(n_max - n_min + 1);
    for (int n = n_min; n <= n_max; ++n) {
        MonotonicityRow r;
        r.n = n;
        const double f = static_cast<double>(n) / (n - 1.0);
        r.z1_term = f * std::imag(tn_u(tn_z1(n), n));
        r.z2_term = f * std::imag(tn_u(tn_z2(n), n));
        r.combined = r.z1_term - r.z2_term;
        if (!out.empty()) {
            const auto& prev = out.back();
            r.z1_decreased = r.z1_term < prev.z1_term;
            r.z2_increased = r.z2_term > prev.z2_term;
            r.combined_decreased = r.combined < prev.combined;
        }
        out.push_back(r);
    }
    return out;
}

std::vector<LimitRow> limit_table(int n_min, int n_max) {
    check_scan_range(n_min, n_max);
    std::vector<LimitRow> out;
    out.reserve(n_max - n_min + 1);
    for (int n = n_min; n <= n_max; ++n) {
        LimitRow r;
        r.n = n;
        r.v_n_b_over_n = 2.0 * tn_volume(n);
        r.gap = constants().five_v_tet - r.v_n_b_over_n;
        out.push_back(r);
    }
    return out;
}

KOrderScan k_order_scan(int n, const OptimizerOptions& opts) {
    if (n < 3) throw Error("k_order_scan requires n >= 3");
    KOrderScan scan;
    scan.n = n;

    const auto classes = enumerate_bongles(n, BongleFilter::Alternating);
    scan.rows.resize(classes.size());
    parallel_rows(static_cast<int>(classes.size()), [&](int i) {
        const Bongle& cls = classes[i];
        KOrderRow row;
        row.k = innie_count(normalize_orientation(cls));
        row.representative = to_string(cls);
        const VolumeReport rep = bongle_volume(cls, opts);
        row.volume = rep.volume;
        row.method = rep.method;
        if (n % 2 == 0 && 2 * row.k == n)
            row.matches_closed_form =
                std::abs(row.volume - balanced_closed_form(n)) < 1e-6;
        scan.rows[i] = std::move(row);
    });
    std::sort(scan.rows.begin(), scan.rows.end(), [](const auto& a, const auto& b) {
        return std::tie(a.k, a.representative) < std::tie(b.k, b.representative);
    });

    std::map<int, std::pair<double, double>> by_k;  // k -> (min, max)
    for (const auto& r : scan.rows) {
        auto [it, fresh] = by_k.try_emplace(r.k, std::make_pair(r.volume, r.volume));
        if (!fresh) {
            it->second.first = std::min(it->second.first, r.volume);
            it->second.second = std::max(it->second.second, r.volume);
        }
    }
    scan.observed_monotone = true;
    for (auto it = by_k.begin(); it != by_k.end(); ++it) {
        auto next = std::next(it);
        if (next == by_k.end()) break;
        if (it->second.second > next->second.first + 1e-9)
            scan.observed_monotone = false;
    }
    return scan;
}

}  // namespace bongle
