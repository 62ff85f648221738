#include "cli.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bongle/bounds.hpp"
#include "bongle/optimizer.hpp"

namespace bongle::cli {
namespace {

using nlohmann::json;

// Machine output carries full binary64 precision as the shortest decimal
// that round-trips; human output shows 10 significant digits.
std::string full(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string human(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

enum class Format { Human, Json, Csv };

struct Options {
    Format format = Format::Human;
    OptimizerOptions opt;
    bool allow_bound = false;
    bool dump_triangulation = false;
    int cap = 12;
};

std::string csv_join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

json verdict_json(const HyperbolicityVerdict& v) {
    json j;
    j["is_hyperbolic"] = v.is_hyperbolic;
    j["reason"] = std::string(to_string(v.reason));
    if (v.known_volume) j["known_volume"] = *v.known_volume;
    if (v.provisional) j["provisional"] = true;
    return j;
}

int cmd_classify(const std::string& spec, const Options& o, std::ostream& out) {
    const Bongle b = parse_bongle(spec);
    const Bongle nb = normalize_orientation(b);
    const bool alt = is_alternating(b);
    const HyperbolicityVerdict v = decide_hyperbolic(b);
    const int n = b.size();
    const int k = innie_count(nb);
    const bool balanced = alt && n % 2 == 0 && 2 * k == n;

    if (o.format == Format::Json) {
        json j;
        j["bongle"] = json::parse(to_json(b));
        j["spec"] = to_string(b);
        j["n"] = n;
        j["k"] = k;
        j["normalized"] = to_string(nb);
        j["traversal"] = traversal_string(b);
        j["alternating"] = alt;
        j["balanced"] = balanced;
        j["verdict"] = verdict_json(v);
        if (alt && n >= 3) {
            const auto c = edge_class_counts(nb);
            j["edge_classes"] = {{"central", c.central}, {"exterior", c.exterior}};
        } else if (!alt) {
            j["non_alternating_pairs"] = non_alternating_pairs(b).size();
        }
        out << j.dump(2) << '\n';
        return 0;
    }

    out << "bongle:       " << to_string(b) << "\n"
        << "n:            " << n << "\n"
        << "k (innies):   " << k;
    if (nb.charms() != b.charms()) out << "   (after in/out normalization: " << to_string(nb) << ")";
    out << "\n"
        << "traversal:    " << traversal_string(b) << "\n"
        << "alternating:  " << (alt ? "yes" : "no") << "\n"
        << "balanced:     " << (balanced ? "yes" : "no") << "\n";
    if (alt && n >= 3) {
        const auto c = edge_class_counts(nb);
        out << "edge classes: central " << c.central << ", exterior " << c.exterior << "\n";
    } else if (!alt) {
        out << "non-alternating pairs: " << non_alternating_pairs(b).size() << "\n";
    }
    out << "hyperbolic:   " << (v.is_hyperbolic ? "yes" : "no") << " (" << to_string(v.reason) << ")";
    if (v.known_volume) out << ", volume " << human(*v.known_volume);
    if (v.provisional) out << "  [provisional case split]";
    out << "\n";
    return 0;
}

int cmd_volume(const std::string& spec, const Options& o, std::ostream& out,
               std::ostream& err) {
    const Bongle b = parse_bongle(spec);
    VolumeReport rep;
    try {
        rep = bongle_volume(b, o.opt);
    } catch (const NotHyperbolicError& e) {
        if (o.format == Format::Json) {
            json j;
            j["error"] = "not hyperbolic";
            j["verdict"] = verdict_json(e.verdict);
            out << j.dump(2) << '\n';
        }
        err << "not hyperbolic: " << to_string(e.verdict.reason)
            << (e.verdict.provisional ? " [provisional case split]" : "") << "\n";
        return 3;
    }

    if (o.format == Format::Json) {
        json j = json::parse(to_json(rep));
        j.erase("maximizer");  // bulky; available via --dump-triangulation runs
        j["bongle"] = json::parse(to_json(b));
        j["spec"] = to_string(b);
        out << j.dump(2) << '\n';
    } else {
        static const std::map<VolumeMethod, std::string> acc = {
            {VolumeMethod::KnownLink, "closed-form constant, abs error < 1e-9"},
            {VolumeMethod::BalancedClosedForm, "closed form 2n Vol(T_n), abs error < 1e-9"},
            {VolumeMethod::Optimizer, "angle-structure maximization, abs error ~ tol"},
            {VolumeMethod::BoundOnly, "upper bound only"},
        };
        out << "volume:   " << human(rep.volume) << "\n"
            << "method:   " << to_string(rep.method) << "  (" << acc.at(rep.method) << ")\n"
            << "convention: " << rep.convention << "\n";
        if (rep.method == VolumeMethod::Optimizer) {
            out << "iterations: " << rep.iterations
                << "   projected |grad|: " << human(rep.projected_gradient_norm)
                << "   max residual: " << human(rep.constraint_max_residual) << "\n";
        }
        if (rep.cross_check_volume)
            out << "cross-check (optimizer): " << human(*rep.cross_check_volume) << "\n";
        if (!rep.note.empty()) out << "note:     " << rep.note << "\n";
    }

    if (o.dump_triangulation && b.size() >= 3 && is_alternating(b)) {
        const auto t = build_decomposition(normalize_orientation(b));
        out << dump_triangulation_json(t) << '\n';
    }

    if (rep.method == VolumeMethod::BoundOnly && !o.allow_bound) {
        err << "optimizer reported an upper bound only (rerun with --allow-bound to accept)\n";
        return 4;
    }
    return 0;
}

int cmd_enumerate(int n, const std::string& filter, const Options& o, std::ostream& out) {
    BongleFilter f = BongleFilter::All;
    if (filter == "alternating") f = BongleFilter::Alternating;
    else if (filter == "balanced") f = BongleFilter::Balanced;
    else if (filter != "all") throw CLI::ValidationError("--filter must be all|alternating|balanced");

    const auto classes = enumerate_bongles(n, f, o.cap);
    if (o.format == Format::Json) {
        json j;
        j["n"] = n;
        j["filter"] = filter;
        j["count"] = classes.size();
        j["classes"] = json::array();
        for (const auto& b : classes) j["classes"].push_back(to_string(b));
        out << j.dump(2) << '\n';
    } else if (o.format == Format::Csv) {
        out << "n,k,bongle\n";
        for (const auto& b : classes)
            out << csv_join({std::to_string(n),
                             std::to_string(innie_count(normalize_orientation(b))),
                             to_string(b)});
    } else {
        out << classes.size() << " classes (n=" << n << ", filter " << filter << ")\n";
        for (const auto& b : classes) out << "  " << to_string(b) << "\n";
    }
    return 0;
}

struct TableRow {
    int n, k;
    std::string spec;
    double volume;
    VolumeMethod method;
    std::string note;
};

int cmd_table(int n_min, int n_max, const Options& o, std::ostream& out) {
    if (n_min < 3 || n_max < n_min || n_max > o.cap)
        throw CLI::ValidationError("table range must satisfy 3 <= min <= max <= cap");

    std::vector<Bongle> all_classes;
    for (int n = n_min; n <= n_max; ++n)
        for (const auto& cls : enumerate_bongles(n, BongleFilter::Alternating, o.cap))
            all_classes.push_back(cls);

    // Rows are independent; compute them in parallel, assemble in order.
    std::vector<TableRow> rows(all_classes.size());
    {
        const int count = static_cast<int>(all_classes.size());
        const int workers =
            std::min<int>(count, std::max(1u, std::thread::hardware_concurrency()));
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto work = [&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    const Bongle& cls = all_classes[i];
                    TableRow r;
                    r.n = cls.size();
                    r.k = innie_count(normalize_orientation(cls));
                    r.spec = to_string(cls);
                    const VolumeReport rep = bongle_volume(cls, o.opt);
                    r.volume = rep.volume;
                    r.method = rep.method;
                    if (rep.method == VolumeMethod::BoundOnly) r.note = "upper bound only";
                    rows[i] = std::move(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    // Annotate balanced duplicates against the first balanced class per n.
    std::map<int, std::string> first_balanced;
    for (auto& r : rows) {
        if (r.n % 2 == 0 && 2 * r.k == r.n) {
            auto [it, fresh] = first_balanced.try_emplace(r.n, r.spec);
            if (!fresh) r.note = "same volume as " + it->second;
        }
    }

    if (o.format == Format::Json) {
        json j;
        j["schema"] = "bongle.table.v1";
        j["convention"] = "C1";
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"n", r.n},
                                 {"k", r.k},
                                 {"bongle", r.spec},
                                 {"volume", r.volume},
                                 {"method", std::string(to_string(r.method))},
                                 {"note", r.note}});
        out << j.dump(2) << '\n';
    } else if (o.format == Format::Csv) {
        out << "n,k,bongle,volume,method,convention,note\n";
        for (const auto& r : rows)
            out << csv_join({std::to_string(r.n), std::to_string(r.k), r.spec,
                             full(r.volume), std::string(to_string(r.method)), "C1",
                             r.note});
    } else {
        out << "volumes of alternating bongles, " << n_min << " <= n <= " << n_max
            << " (convention C1)\n";
        for (const auto& r : rows) {
            out << "  n=" << r.n << " k=" << r.k << "  " << r.spec << "  "
                << human(r.volume) << "  " << to_string(r.method);
            if (!r.note.empty()) out << "  [" << r.note << "]";
            out << "\n";
        }
    }
    return 0;
}

int cmd_bounds(int n_min, int n_max, const Options& o, std::ostream& out) {
    if (n_min < 2 || n_max < n_min)
        throw CLI::ValidationError("bounds range must satisfy 2 <= min <= max");
    std::vector<BoundRow> rows;
    for (int n = n_min; n <= n_max; ++n) rows.push_back(bound_row(n));

    if (o.format == Format::Json) {
        json j;
        j["schema"] = "bongle.bounds.v1";
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"n", r.n},
                                 {"v_n_b", r.v_n_b},
                                 {"five_n_v_tet", r.five_n_v_tet},
                                 {"per_crossing_bound", r.per_crossing_bound},
                                 {"v_n_b_over_n", r.v_n_b_over_n},
                                 {"below_five_n", r.below_five_n},
                                 {"inequality_holds", r.inequality_holds}});
        out << j.dump(2) << '\n';
    } else if (o.format == Format::Csv) {
        out << "n,v_n_b,five_n_v_tet,per_crossing_bound,v_n_b_over_n,below_five_n,inequality_holds\n";
        for (const auto& r : rows)
            out << csv_join({std::to_string(r.n), full(r.v_n_b), full(r.five_n_v_tet),
                             full(r.per_crossing_bound), full(r.v_n_b_over_n),
                             r.below_five_n ? "1" : "0", r.inequality_holds ? "1" : "0"});
    } else {
        out << "n    V_n^B          5n v_tet       V_n^B/(n-1)    V_n^B/n\n";
        for (const auto& r : rows) {
            char line[160];
            std::snprintf(line, sizeof line, "%-4d %-14.10g %-14.10g %-14.10g %-14.10g %s\n",
                          r.n, r.v_n_b, r.five_n_v_tet, r.per_crossing_bound,
                          r.v_n_b_over_n, r.inequality_holds ? "" : "(bound <= 5 v_tet)");
            out << line;
        }
    }
    return 0;
}

int cmd_scan(const std::string& kind, int a, int b, const Options& o, std::ostream& out) {
    if (kind == "limit") {
        const auto rows = limit_table(a, b);
        if (o.format == Format::Json) {
            json j;
            j["schema"] = "bongle.scan.limit.v1";
            j["rows"] = json::array();
            for (const auto& r : rows)
                j["rows"].push_back({{"n", r.n},
                                     {"v_n_b_over_n", r.v_n_b_over_n},
                                     {"gap", r.gap}});
            out << j.dump(2) << '\n';
        } else {
            out << "n,v_n_b_over_n,gap\n";
            for (const auto& r : rows)
                out << csv_join({std::to_string(r.n), full(r.v_n_b_over_n), full(r.gap)});
        }
        return 0;
    }
    if (kind == "monotonic") {
        const auto rows = monotonicity_scan(a, b);
        if (o.format == Format::Json) {
            json j;
            j["schema"] = "bongle.scan.monotonic.v1";
            j["rows"] = json::array();
            for (const auto& r : rows)
                j["rows"].push_back({{"n", r.n},
                                     {"z1_term", r.z1_term},
                                     {"z2_term", r.z2_term},
                                     {"combined", r.combined},
                                     {"z1_decreased", r.z1_decreased},
                                     {"z2_increased", r.z2_increased},
                                     {"combined_decreased", r.combined_decreased}});
            out << j.dump(2) << '\n';
        } else {
            out << "n,z1_term,z2_term,combined,z1_decreased,z2_increased,combined_decreased\n";
            for (const auto& r : rows)
                out << csv_join({std::to_string(r.n), full(r.z1_term), full(r.z2_term),
                                 full(r.combined), r.z1_decreased ? "1" : "0",
                                 r.z2_increased ? "1" : "0",
                                 r.combined_decreased ? "1" : "0"});
        }
        return 0;
    }
    if (kind == "korder") {
        const auto scan = k_order_scan(a, o.opt);
        if (o.format == Format::Json) {
            json j;
            j["schema"] = "bongle.scan.korder.v1";
            j["n"] = scan.n;
            j["note"] = scan.note;
            j["observed_monotone"] = scan.observed_monotone;
            j["convention"] = "C1";
            j["rows"] = json::array();
            for (const auto& r : scan.rows)
                j["rows"].push_back({{"k", r.k},
                                     {"bongle", r.representative},
                                     {"volume", r.volume},
                                     {"method", std::string(to_string(r.method))},
                                     {"matches_closed_form", r.matches_closed_form}});
            out << j.dump(2) << '\n';
        } else {
            if (o.format == Format::Human)
                out << "# " << scan.note << " (convention C1); observed monotone in k: "
                    << (scan.observed_monotone ? "yes" : "no") << "\n";
            out << "k,bongle,volume,method,matches_closed_form\n";
            for (const auto& r : scan.rows)
                out << csv_join({std::to_string(r.k), r.representative, full(r.volume),
                                 std::string(to_string(r.method)),
                                 r.matches_closed_form ? "1" : "0"});
        }
        return 0;
    }
    throw CLI::ValidationError("scan kind must be limit|monotonic|korder");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"bongle: hyperbolicity and volumes of staked charm-bracelet links"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    Options o;
    std::string format = "human";
    std::string options_json;
    app.add_option("--format", format, "human|json|csv")->capture_default_str();
    auto* opt_tol = app.add_option("--tol", o.opt.tol, "optimizer projected-gradient tolerance");
    auto* opt_iter = app.add_option("--max-iter", o.opt.max_iterations, "optimizer iteration cap");
    auto* opt_restarts =
        app.add_option("--restarts", o.opt.restarts, "random feasible restarts (uniqueness audit)");
    auto* opt_binit =
        app.add_option("--barrier-init", o.opt.barrier_initial, "initial log-barrier weight");
    auto* opt_bdecay =
        app.add_option("--barrier-decay", o.opt.barrier_decay, "barrier decay factor per stage");
    auto* opt_verify =
        app.add_flag("--verify", o.opt.verify, "cross-check balanced volumes both ways");
    app.add_flag("--allow-bound", o.allow_bound, "accept BoundOnly reports with exit 0");
    app.add_flag("--dump-triangulation", o.dump_triangulation,
                 "dump the decomposition as JSON (volume command)");
    app.add_option("--cap", o.cap, "enumeration size cap")->capture_default_str();
    app.add_option("--options-json", options_json,
                   "optimizer options as a JSON object; explicit flags win");

    std::string spec, filter = "all", kind;
    int n = 0, range_a = 0, range_b = 0;

    auto* classify = app.add_subcommand("classify", "alternation, type and hyperbolicity");
    classify->add_option("bongle", spec, "bongle text, e.g. \"O0 I1 O0\"")->required();

    auto* volume = app.add_subcommand("volume", "hyperbolic volume");
    volume->add_option("bongle", spec)->required();

    auto* enumerate = app.add_subcommand("enumerate", "equivalence classes for one n");
    enumerate->add_option("n", n)->required();
    enumerate->add_option("--filter", filter, "all|alternating|balanced")->capture_default_str();

    auto* table = app.add_subcommand("table", "volume table over a range of n");
    table->add_option("n_min", range_a)->required();
    table->add_option("n_max", range_b)->required();

    auto* bounds = app.add_subcommand("bounds", "bound and inequality table");
    bounds->add_option("n_min", range_a)->required();
    bounds->add_option("n_max", range_b)->required();

    auto* scan = app.add_subcommand("scan", "limit | monotonic | korder scans");
    scan->add_option("kind", kind, "limit|monotonic|korder")->required();
    scan->add_option("a", range_a, "n (korder) or range start")->required();
    scan->add_option("b", range_b, "range end (unused for korder)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 1;
    }

    if (format == "json") o.format = Format::Json;
    else if (format == "csv") o.format = Format::Csv;
    else if (format == "human") o.format = Format::Human;
    else {
        err << "--format must be human|json|csv\n";
        return 1;
    }

    if (!options_json.empty()) {
        json j;
        try {
            j = json::parse(options_json);
        } catch (const json::parse_error& e) {
            err << "--options-json: " << e.what() << "\n";
            return 1;
        }
        OptimizerOptions base = o.opt;
        if (j.contains("tol")) base.tol = j["tol"].get<double>();
        if (j.contains("max_iterations")) base.max_iterations = j["max_iterations"].get<int>();
        if (j.contains("fd_step")) base.fd_step = j["fd_step"].get<double>();
        if (j.contains("degeneracy_band")) base.degeneracy_band = j["degeneracy_band"].get<double>();
        if (j.contains("barrier_initial")) base.barrier_initial = j["barrier_initial"].get<double>();
        if (j.contains("barrier_decay")) base.barrier_decay = j["barrier_decay"].get<double>();
        if (j.contains("barrier_min")) base.barrier_min = j["barrier_min"].get<double>();
        if (j.contains("restarts")) base.restarts = j["restarts"].get<int>();
        if (j.contains("seed")) base.seed = j["seed"].get<unsigned>();
        if (j.contains("verify")) base.verify = j["verify"].get<bool>();
        if (j.contains("schlafli_everywhere"))
            base.schlafli_everywhere = j["schlafli_everywhere"].get<bool>();
        // explicit command-line flags take precedence over the JSON object
        if (opt_tol->count()) base.tol = o.opt.tol;
        if (opt_iter->count()) base.max_iterations = o.opt.max_iterations;
        if (opt_restarts->count()) base.restarts = o.opt.restarts;
        if (opt_binit->count()) base.barrier_initial = o.opt.barrier_initial;
        if (opt_bdecay->count()) base.barrier_decay = o.opt.barrier_decay;
        if (opt_verify->count()) base.verify = o.opt.verify;
        o.opt = base;
    }

    try {
        if (classify->parsed()) return cmd_classify(spec, o, out);
        if (volume->parsed()) return cmd_volume(spec, o, out, err);
        if (enumerate->parsed()) return cmd_enumerate(n, filter, o, out);
        if (table->parsed()) return cmd_table(range_a, range_b, o, out);
        if (bounds->parsed()) return cmd_bounds(range_a, range_b, o, out);
        if (scan->parsed()) {
            if (kind == "korder" && range_b == 0) range_b = range_a;
            return cmd_scan(kind, range_a, range_b, o, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace bongle::cli
