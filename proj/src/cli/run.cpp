#include "mertens/cli/run.hpp"

#include "mertens/arith/mobius.hpp"
#include "mertens/cli/report.hpp"
#include "mertens/errors.hpp"
#include "mertens/gamma/gamma.hpp"
#include "mertens/identities/verify.hpp"
#include "mertens/induction/induction.hpp"
#include "mertens/parallel.hpp"
#include "mertens/sequences/evaluators.hpp"
#include "mertens/sequences/sublinear.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

namespace mertens::cli {

using nlohmann::ordered_json;

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct Common {
    unsigned threads = 1;
    std::string output = "-";
    std::string format = "csv";
    bool no_timestamp = false;
};

struct Outcome {
    Table table;
    int status = kExitPass;
    std::string note; // one-line stderr summary
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", c.output, "Report path, '-' for stdout");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the generation timestamp");
}

struct Range {
    std::string lo;
    std::string hi;
};

std::pair<std::uint64_t, std::uint64_t> resolve_range(const Range& r, std::uint64_t default_lo)
{
    if (r.hi.empty())
        throw UsageError("--x-max is required");
    const std::uint64_t lo = r.lo.empty() ? default_lo : parse_count(r.lo);
    const std::uint64_t hi = parse_count(r.hi);
    if (lo == 0)
        throw UsageError("--x-min must be >= 1");
    if (hi < lo)
        throw UsageError("empty range: --x-max " + std::to_string(hi) + " is below --x-min " + std::to_string(lo));
    return {lo, hi};
}

// ---- verify ----

struct VerifyArgs {
    std::string ids = "all";
    Range range;
    std::optional<std::string> j;
    double s = 0.0;
    std::string mode = "auto";
    double tolerance = 1e-9;
    std::uint64_t rational_bound = kDefaultRationalBound;
};

bool is_triple(IdentityId id) { return id == IdentityId::eq3 || id == IdentityId::eq13; }

std::vector<IdentityId> selected_ids(const std::string& text, bool& all)
{
    all = text == "all";
    if (all)
        return {all_identities().begin(), all_identities().end()};
    std::set<IdentityId> ids;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        ids.insert(parse_identity(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return {ids.begin(), ids.end()};
}

Outcome run_verify(const VerifyArgs& a, const Common& common)
{
    if (!(a.tolerance > 0))
        throw UsageError("--tolerance must be positive");
    if (a.mode != "auto" && a.mode != "exact" && a.mode != "float")
        throw UsageError("--mode must be auto, exact or float");
    const auto [lo, hi] = resolve_range(a.range, 2);
    if (hi >= (std::uint64_t{1} << 32))
        throw UsageError("--x-max must be below 2^32");

    bool all = false;
    const auto ids = selected_ids(a.ids, all);
    const VerifyOptions opts{.tolerance = a.tolerance};
    const bool s_exactable = a.s == 0.0 || a.s == 1.0;

    std::vector<IdentityCase> cases;
    std::uint64_t skipped = 0;
    for (IdentityId id : ids) {
        for (std::uint64_t x = lo; x <= hi; ++x) {
            IdentityCase c{.id = id, .x = x, .j = std::nullopt, .s = a.s, .mode = Mode::exact};
            if (a.mode == "float" || (a.mode == "auto" && !s_exactable))
                c.mode = Mode::floating;
            c = normalized(c);
            if (a.mode == "auto" && c.mode == Mode::exact && c.s == 1.0 &&
                !exact_s1_feasible(id, x, a.rational_bound, kDefaultExactTableCap))
                c.mode = Mode::floating;
            if (is_triple(id)) {
                const std::uint64_t bound =
                    c.mode == Mode::exact ? opts.triple_exact_bound : opts.triple_float_bound;
                if (x > bound) {
                    if (!all)
                        throw UsageError(std::string(to_string(id)) + " is limited to x <= " + std::to_string(bound) +
                                         " in " + std::string(to_string(c.mode)) + " mode");
                    ++skipped;
                    continue;
                }
            }
            if (id == IdentityId::eq2 || id == IdentityId::eq12) {
                std::set<std::uint64_t> js;
                if (a.j)
                    js.insert(parse_count(*a.j));
                else
                    js = {x, (x + x * x) / 2, x * x};
                for (std::uint64_t j : js) {
                    c.j = j;
                    validate(c);
                    cases.push_back(c);
                }
            } else {
                validate(c);
                cases.push_back(c);
            }
        }
    }
    if (a.mode == "exact")
        for (const auto& c : cases)
            if (c.mode == Mode::exact && c.s == 1.0 &&
                !exact_s1_feasible(c.id, c.x, a.rational_bound, kDefaultExactTableCap))
                throw UsageError(std::string(to_string(c.id)) + " at x = " + std::to_string(c.x) +
                                 " exceeds the exact s = 1 limits; use --mode float or auto");

    const SequenceCache cache(cache_requirements(cases, a.rational_bound, kDefaultExactTableCap));
    std::vector<Residual> results(cases.size());
    parallel_for(cases.size(), common.threads, [&](std::size_t k) { results[k] = verify(cases[k], cache, opts); });

    Outcome o;
    o.table.columns = {"identity", "x", "j", "s", "mode", "lhs", "rhs", "residual", "pass"};
    std::uint64_t failed = 0;
    std::uint64_t inconsistent = 0;
    double max_float = 0.0;
    ordered_json failures = ordered_json::array();
    for (std::size_t k = 0; k < cases.size(); ++k) {
        const IdentityCase& c = cases[k];
        const Residual& r = results[k];
        const bool pass = r.passes(a.tolerance);
        const bool exact = r.kind == ResidualKind::exact;
        o.table.rows.push_back({std::string(to_string(c.id)), c.x,
                                c.j ? Cell{*c.j} : Cell{std::string()}, c.s,
                                std::string(exact ? "exact" : "float"), format_number(r.lhs), format_number(r.rhs),
                                exact ? format_exact(r.exact_value) : format_double(r.float_value), pass});
        if (!exact)
            max_float = std::max(max_float, std::fabs(r.float_value));
        if (!r.consistent)
            ++inconsistent;
        if (!pass) {
            ++failed;
            if (failures.size() < 100) {
                ordered_json f = {{"identity", to_string(c.id)}, {"x", c.x}};
                if (c.j)
                    f["j"] = *c.j;
                f["detail"] = r.detail;
                failures.push_back(std::move(f));
            }
        }
    }
    auto& sm = o.table.summary;
    sm["cases"] = cases.size();
    sm["passed"] = cases.size() - failed;
    sm["failed"] = failed;
    sm["inconsistent"] = inconsistent;
    sm["tolerance"] = a.tolerance;
    sm["max_abs_float_residual"] = max_float;
    sm["skipped_triple_cases"] = skipped;
    sm["failures"] = std::move(failures);
    o.status = failed ? kExitFail : kExitPass;
    o.note = "verify: " + std::to_string(cases.size()) + " cases, " + std::to_string(failed) + " failed";
    if (skipped)
        o.note += ", " + std::to_string(skipped) + " eq3/eq13 cases above the triple-sum bound skipped";
    return o;
}

// ---- gamma ----

struct GammaArgs {
    std::string points = "50,100,200,400,800";
    std::uint64_t cap = kGammaCap;
};

Outcome run_gamma(const GammaArgs& a, const Common& common)
{
    const auto xs = parse_count_list(a.points);
    for (std::uint64_t x : xs)
        if (x < 2)
            throw UsageError("gamma points must be >= 2");
    const GammaStudy study = gamma_convergence_study(xs, common.threads, a.cap);

    Outcome o;
    o.table.columns = {"x", "estimate", "reference", "abs_error", "scaled_error"};
    bool finite = true;
    for (const auto& r : study.rows) {
        o.table.rows.push_back({r.x, r.estimate, r.reference_gamma, r.abs_error, r.scaled_error});
        finite = finite && std::isfinite(r.estimate);
    }
    auto& sm = o.table.summary;
    sm["reference_gamma_literal"] = kEulerGammaDigits;
    sm["max_scaled_error"] = study.max_scaled_error;
    sm["trend_computed"] = study.trend_computed;
    if (study.trend_computed) {
        sm["monotone_growth"] = study.monotone_growth;
        sm["max_growth_ratio"] = study.max_growth_ratio;
        sm["log_log_slope"] = study.log_log_slope;
    }
    sm["log_argument"] = "integer x";
    o.status = finite ? kExitPass : kExitFail;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", study.max_scaled_error);
    o.note = "gamma: " + std::to_string(study.rows.size()) + " points, max scaled_error " + buf;
    return o;
}

// ---- induction ----

struct InductionArgs {
    std::string x_max = "10000";
    unsigned n = 1;
    std::string dense = "1000";
    unsigned per_decade = 10;
    std::optional<double> C;
    std::optional<std::string> x0;
    std::string synthetic;
    std::string cross_check = "1000";
};

ordered_json bound_json(const BoundCheck& b)
{
    ordered_json j = {{"x0", b.params.x0},
                      {"C", b.params.C},
                      {"n", b.params.n},
                      {"base_holds", b.base_holds},
                      {"steps_hold", b.steps_hold},
                      {"extension_holds", b.extension_holds},
                      {"extension_checked_to", b.extension_checked_to}};
    auto opt = [](const std::optional<std::uint64_t>& v) { return v ? ordered_json(*v) : ordered_json(); };
    j["first_base_violation"] = opt(b.first_base_violation);
    j["first_step_violation"] = opt(b.first_step_violation);
    j["first_extension_violation"] = opt(b.first_extension_violation);
    return j;
}

Outcome run_induction(const InductionArgs& a, const Common& common)
{
    const std::uint64_t x_max = parse_count(a.x_max);
    if (x_max < kFirstY)
        throw UsageError("--x-max must be >= 3");
    if (a.n < 1)
        throw UsageError("--n must be >= 1");
    if (a.C.has_value() != a.x0.has_value())
        throw UsageError("--C and --x0 go together");

    InductionOptions opts;
    opts.dense_limit = parse_count(a.dense);
    opts.points_per_decade = a.per_decade;
    opts.threads = common.threads;
    if (a.C)
        opts.bound = BoundParams{parse_count(*a.x0), *a.C, a.n};
    const bool synthetic = !a.synthetic.empty();
    if (synthetic) {
        if (a.synthetic != "ones")
            throw UsageError("--synthetic-mu accepts only 'ones'");
        opts.source = synthetic_all_ones();
    }
    const InductionReport report = induction_sweep(x_max, a.n, opts);

    Outcome o;
    o.table.columns = {"x",   "n",   "sup_M", "argmax_y",  "sup_M_sq",  "argmax_y_sq",
                       "lhs", "rhs", "ratio", "minimal_C", "step_holds"};
    for (const auto& r : report.rows)
        o.table.rows.push_back({r.x, std::uint64_t{r.n}, r.sup.sup_M, r.sup.argmax_y, r.sup.sup_M_sq,
                                r.sup.argmax_y_sq, r.lhs, r.rhs, r.ratio, r.minimal_C, r.step_holds});

    const InductionSummary& s = report.summary;
    auto& sm = o.table.summary;
    sm["x_max"] = report.x_max;
    sm["n"] = report.n;
    sm["synthetic_mu"] = synthetic ? a.synthetic : std::string("none");
    sm["max_ratio"] = s.max_ratio;
    sm["max_ratio_x"] = s.max_ratio_x;
    sm["minimal_C"] = s.minimal_C;
    sm["minimal_C_x"] = s.minimal_C_x;
    sm["violation_count"] = s.violation_count;
    sm["violations"] = s.violations;
    sm["max_chain_residual"] = s.max_chain_residual;
    bool bound_ok = true;
    if (s.bound) {
        sm["bound"] = bound_json(*s.bound);
        bound_ok = s.bound->base_holds && s.bound->steps_hold && s.bound->extension_holds;
    }

    bool cross_ok = true;
    if (!synthetic) {
        const std::uint64_t y_max = std::min(x_max, parse_count(a.cross_check));
        if (y_max >= 1) {
            SequenceOptions cache_opts;
            cache_opts.table_size = y_max * y_max;
            const SequenceCache cache(cache_opts);
            std::vector<DoubleSumComparison> checks(y_max);
            parallel_for(y_max, common.threads,
                         [&](std::size_t k) { checks[k] = double_sum_cross_check(k + 1, cache); });
            ordered_json rows = ordered_json::array();
            std::uint64_t failures = 0;
            for (const auto& c : checks) {
                const bool ok = c.residual.passes(0.0);
                failures += ok ? 0 : 1;
                rows.push_back({{"y", c.y},
                                {"double_sum", static_cast<std::int64_t>(c.double_sum)},
                                {"mertens_square", c.mertens_square},
                                {"offset", c.offset},
                                {"residual", format_exact(c.residual.exact_value)},
                                {"pass", ok}});
            }
            cross_ok = failures == 0;
            sm["double_sum"] = {{"checked_to", y_max}, {"failures", failures}, {"rows", std::move(rows)}};
        }
    }

    o.status = (report.all_steps_hold() && bound_ok && cross_ok) ? kExitPass : kExitFail;
    o.note = "induction: x_max " + std::to_string(x_max) + ", " + std::to_string(s.violation_count) +
             " step violations";
    if (!bound_ok)
        o.note += ", bound check failed";
    if (!cross_ok)
        o.note += ", double-sum cross-check failed";
    return o;
}

// ---- sieve / mertens / bench ----

struct SieveArgs {
    std::string lo = "1";
    std::string hi;
};

Outcome run_sieve(const SieveArgs& a)
{
    if (a.hi.empty())
        throw UsageError("--hi is required");
    const std::uint64_t lo = parse_count(a.lo);
    const std::uint64_t hi = parse_count(a.hi);
    if (lo == 0 || hi < lo)
        throw UsageError("need 1 <= --lo <= --hi");
    const MobiusTable t = mobius_segment(lo, hi);
    Outcome o;
    o.table.columns = {"k", "mu"};
    std::int64_t sum = 0;
    for (std::uint64_t k = lo; k <= hi; ++k) {
        o.table.rows.push_back({k, std::int64_t{t[k]}});
        sum += t[k];
    }
    o.table.summary = {{"lo", lo}, {"hi", hi}, {"sum", sum}};
    return o;
}

struct MertensArgs {
    std::string x;
    Range range;
};

Outcome run_mertens(const MertensArgs& a, const Common& common)
{
    Outcome o;
    o.table.columns = {"x", "M"};
    if (!a.x.empty()) {
        if (!a.range.hi.empty() || !a.range.lo.empty())
            throw UsageError("use either --x or --x-min/--x-max");
        const auto xs = parse_count_list(a.x);
        std::vector<std::int64_t> values(xs.size());
        for (std::uint64_t x : xs)
            if (x == 0)
                throw UsageError("--x values must be >= 1");
        parallel_for(xs.size(), common.threads, [&](std::size_t k) { values[k] = mertens_sublinear(xs[k]); });
        for (std::size_t k = 0; k < xs.size(); ++k)
            o.table.rows.push_back({xs[k], values[k]});
        return o;
    }
    const auto [lo, hi] = resolve_range(a.range, 1);
    std::int64_t running = 0;
    for_each_segment(hi, 0, sieve_source(hi), [&](std::uint64_t base, std::span<const std::int8_t> mu) {
        for (std::size_t t = 0; t < mu.size(); ++t) {
            running += mu[t];
            if (base + t >= lo)
                o.table.rows.push_back({base + t, running});
        }
    });
    return o;
}

struct BenchArgs {
    std::string sieve;
    std::string mertens;
};

Outcome run_bench(const BenchArgs& a)
{
    const auto sieves = parse_count_list(a.sieve.empty() && a.mertens.empty() ? "1e6" : a.sieve);
    const auto mertens = parse_count_list(a.mertens.empty() && a.sieve.empty() ? "1e7" : a.mertens);
    using clock = std::chrono::steady_clock;
    Outcome o;
    o.table.columns = {"operation", "size", "seconds", "rate"};
    for (std::uint64_t n : sieves) {
        if (n == 0)
            throw UsageError("--sieve sizes must be >= 1");
        const auto t0 = clock::now();
        std::int64_t sum = 0;
        for_each_segment(n, 0, sieve_source(n), [&](std::uint64_t, std::span<const std::int8_t> mu) {
            for (std::int8_t v : mu)
                sum += v;
        });
        const double sec = std::chrono::duration<double>(clock::now() - t0).count();
        o.table.rows.push_back({std::string("sieve"), n, sec, static_cast<double>(n) / sec});
        o.table.summary["sieve_" + std::to_string(n) + "_M"] = sum;
    }
    for (std::uint64_t x : mertens) {
        if (x == 0)
            throw UsageError("--mertens sizes must be >= 1");
        const auto t0 = clock::now();
        const std::int64_t m = mertens_sublinear(x);
        const double sec = std::chrono::duration<double>(clock::now() - t0).count();
        o.table.rows.push_back({std::string("mertens_sublinear"), x, sec, static_cast<double>(x) / sec});
        o.table.summary["mertens_" + std::to_string(x)] = m;
    }
    return o;
}

int emit(const Outcome& o, const Common& common, std::ostream& out, std::ostream& err)
{
    const std::optional<std::string> stamp =
        common.no_timestamp ? std::nullopt : std::optional<std::string>(utc_timestamp());
    const std::string body = render(o.table, parse_format(common.format), stamp);
    if (common.output == "-") {
        out << body;
        out.flush();
    } else {
        std::ofstream file(common.output, std::ios::binary);
        if (!file || !(file << body) || !file.flush()) {
            err << "error: cannot write " << common.output << "\n";
            return kExitUsage;
        }
    }
    if (!o.note.empty())
        err << o.note << "\n";
    return o.status;
}

} // namespace

std::uint64_t parse_count(std::string_view text)
{
    const char* first = text.data();
    const char* last = text.data() + text.size();
    std::uint64_t v = 0;
    if (auto [p, ec] = std::from_chars(first, last, v); ec == std::errc() && p == last && !text.empty())
        return v;
    double d = 0;
    auto [p, ec] = std::from_chars(first, last, d);
    if (ec != std::errc() || p != last || text.empty() || !std::isfinite(d) || d < 0 || d != std::floor(d) ||
        d >= 18446744073709551616.0)
        throw UsageError("expected a non-negative integer, got '" + std::string(text) + "'");
    return static_cast<std::uint64_t>(d);
}

std::vector<std::uint64_t> parse_count_list(std::string_view text)
{
    std::vector<std::uint64_t> out;
    if (text.empty())
        return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        out.push_back(parse_count(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Möbius and Mertens identity engine"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Common common;
    VerifyArgs verify_args;
    GammaArgs gamma_args;
    InductionArgs induction_args;
    SieveArgs sieve_args;
    MertensArgs mertens_args;
    BenchArgs bench_args;

    auto* sieve = app.add_subcommand("sieve", "Print mu(k) for k in [lo, hi]");
    sieve->add_option("--lo", sieve_args.lo, "First k (default 1)");
    sieve->add_option("--hi", sieve_args.hi, "Last k")->required();
    add_common(sieve, common);

    auto* mertens = app.add_subcommand("mertens", "Evaluate the Mertens function");
    mertens->add_option("--x", mertens_args.x, "Comma-separated points, evaluated sublinearly");
    mertens->add_option("--x-min", mertens_args.range.lo, "Range start (default 1)");
    mertens->add_option("--x-max", mertens_args.range.hi, "Range end, evaluated by sieving");
    add_common(mertens, common);

    auto* verify = app.add_subcommand("verify", "Check identities over a range of x");
    verify->add_option("--id", verify_args.ids, "eq1,...,eq18 or all (default all)");
    verify->add_option("--x-min", verify_args.range.lo, "First x (default 2)");
    verify->add_option("--x-max", verify_args.range.hi, "Last x")->required();
    verify->add_option("--j", verify_args.j, "Shift for eq2/eq12 (default x, (x+x^2)/2 and x^2)");
    verify->add_option("--s", verify_args.s, "Exponent (default 0)");
    verify->add_option("--mode", verify_args.mode, "auto, exact or float (default auto)");
    verify->add_option("--tolerance", verify_args.tolerance, "Float residual tolerance (default 1e-9)");
    verify->add_option("--rational-bound", verify_args.rational_bound, "Largest x for exact s = 1 (default 200)");
    add_common(verify, common);

    auto* gamma = app.add_subcommand("gamma", "Convergence study of the Euler constant series");
    gamma->add_option("--points", gamma_args.points, "Ascending x values (default 50,100,200,400,800)");
    gamma->add_option("--cap", gamma_args.cap, "Largest accepted x (default 3000)");
    add_common(gamma, common);

    auto* induction = app.add_subcommand("induction", "Sup-bound induction step sweep");
    induction->add_option("--x-max", induction_args.x_max, "Largest x (default 10000)");
    induction->add_option("--n", induction_args.n, "Power of log x (default 1)");
    induction->add_option("--dense", induction_args.dense, "Rows for every x up to this (default 1000)");
    induction->add_option("--points-per-decade", induction_args.per_decade, "Log-spaced rows (default 10)");
    induction->add_option("--C", induction_args.C, "Bound constant; needs --x0");
    induction->add_option("--x0", induction_args.x0, "Bound range end; needs --C");
    induction->add_option("--synthetic-mu", induction_args.synthetic, "Replace mu: 'ones'");
    induction->add_option("--cross-check", induction_args.cross_check,
                          "Double-sum cross-check for y up to this (default 1000)");
    add_common(induction, common);

    auto* bench = app.add_subcommand("bench", "Timing of the sieve and sublinear Mertens");
    bench->add_option("--sieve", bench_args.sieve, "Sieve sizes (default 1e6)");
    bench->add_option("--mertens", bench_args.mertens, "Sublinear Mertens points (default 1e7)");
    add_common(bench, common);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        Outcome o;
        if (*sieve)
            o = run_sieve(sieve_args);
        else if (*mertens)
            o = run_mertens(mertens_args, common);
        else if (*verify)
            o = run_verify(verify_args, common);
        else if (*gamma)
            o = run_gamma(gamma_args, common);
        else if (*induction)
            o = run_induction(induction_args, common);
        else
            o = run_bench(bench_args);
        return emit(o, common, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return kExitUsage;
    }
}

} // namespace mertens::cli
