#include "commands.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "hsurf/arith.hpp"
#include "svg.hpp"

namespace hsurf::cli {

mpq_class default_precision() {
    const char* env = std::getenv("STAIRCASE_PRECISION");
    if (env && *env) {
        Real p = Real::parse(env);
        if (p.is_rational() && p.rational() > 0) return p.rational();
        throw DomainError(std::string("STAIRCASE_PRECISION must be a positive number, got ") + env);
    }
    return mpq_class(1, 1000000000000L);
}

namespace {

// Runs body(i) for i in [0, n) on a few threads; results go into caller-owned slots.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < n;) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> g(failure_lock);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

Real parse_real(const std::string& text, const char* what) {
    try {
        return Real::parse(text);
    } catch (const Error& e) {
        throw DomainError(std::string("bad value for ") + what + ": " + e.what());
    }
}

Side parse_side(const std::string& s) {
    if (s == "minus" || s == "-") return Side::minus;
    if (s == "plus" || s == "+") return Side::plus;
    throw DomainError("side must be minus or plus, got " + s);
}

std::string scalar_text(const Real& x) { return x.str(); }

void write_to(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot write " + path);
    f << text;
}

struct SurfaceArgs {
    std::string s, s1, s2, u = "0";
    void add(CLI::App* app) {
        app->add_option("--s", s, "chamber parameter for both halves");
        app->add_option("--s1", s1, "plus-chamber parameter");
        app->add_option("--s2", s2, "minus-chamber parameter");
        app->add_option("--u", u, "twist of the minus chamber");
    }
    bool twisted() const { return !s1.empty() || !s2.empty() || u != "0"; }
    SurfaceSpec spec() const {
        std::string a = s1.empty() ? s : s1, b = s2.empty() ? s : s2;
        if (a.empty() || b.empty()) throw DomainError("give --s, or both --s1 and --s2");
        SurfaceSpec sp = SurfaceSpec::scaled(parse_real(a, "s1"), parse_real(b, "s2"));
        sp.minus.twist_u = parse_real(u, "u");
        return sp;
    }
};

std::optional<Real> parse_slope(const std::string& m) {
    if (m == "inf" || m == "vertical") return std::nullopt;
    return parse_real(m, "m");
}

}  // namespace

TrajectoryState parse_start(const std::string& text, const Real& slope, bool backward) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("start must look like EDGE:coord, e.g. A:5/6");
    static const std::map<std::string, Edge> edges = {
        {"A", Edge::A_long}, {"A_long", Edge::A_long}, {"A_short", Edge::A_short}, {"B", Edge::B},
        {"C", Edge::C_long}, {"C_long", Edge::C_long}, {"C_short", Edge::C_short}, {"D", Edge::D},
        {"E", Edge::E}};
    auto it = edges.find(text.substr(0, colon));
    if (it == edges.end()) throw DomainError("unknown edge in start " + text);
    TrajectoryState st;
    st.edge = it->second;
    st.coord = parse_real(text.substr(colon + 1), "start coordinate");
    st.slope = slope;
    st.direction = backward ? Direction::backward : Direction::forward;
    bool minus_edge = st.edge == Edge::C_long || st.edge == Edge::C_short || st.edge == Edge::D;
    st.chamber = minus_edge ? Chamber::minus : Chamber::plus;
    return st;
}

TongueTable tongue_table(long n_max, long grid, const RunConfig& cfg) {
    if (n_max < 1 || grid < 1) throw DomainError("n_max and grid must be positive");
    struct Frac {
        mpz_class k;
        long n;
    };
    std::vector<Frac> fracs;  // one period: 0 <= k/n < 1
    for (long n = 1; n <= n_max; ++n)
        for (long k = 0; k < n; ++k)
            if (std::gcd(k, n) == 1) fracs.push_back({k, n});
    std::vector<std::vector<Tongue>> per_s(static_cast<std::size_t>(grid));
    std::vector<Tongue> top(static_cast<std::size_t>(grid));  // the 1/1 tongue, drawn only
    parallel_for(static_cast<std::size_t>(grid), cfg.threads, [&](std::size_t i) {
        StaircaseParams p{Real::frac(static_cast<long>(i) + 1, grid + 1), cfg.precision};
        for (const auto& f : fracs) per_s[i].push_back(tongue(p, f.k, f.n));
        top[i] = tongue(p, 1, 1);
    });
    TongueTable t;
    std::ostringstream csv;
    csv << "s,xi,lower,upper,width\n";
    for (long i = 0; i < grid; ++i)
        for (const auto& tg : per_s[static_cast<std::size_t>(i)]) {
            csv << mpq_class(i + 1, grid + 1).get_str() << "," << tg.k.get_str() << "/" << tg.n << "," << tg.lower.str()
                << "," << tg.upper.str() << "," << tg.width.str() << "\n";
            ++t.rows;
        }
    t.csv = csv.str();

    double s_min = 1.0 / (grid + 1);
    SvgChart chart(0, 1, 0, std::min(2.0 / s_min, 12.0));
    std::vector<double> xs;
    for (long i = 0; i < grid; ++i) xs.push_back(static_cast<double>(i + 1) / (grid + 1));
    auto draw = [&](std::function<const Tongue&(long)> get, std::size_t color) {
        std::vector<double> lo, hi;
        for (long i = 0; i < grid; ++i) {
            lo.push_back(std::min(get(i).lower.to_double(), 12.0));
            hi.push_back(std::min(get(i).upper.to_double(), 12.0));
        }
        chart.band(xs, lo, hi, SvgChart::palette(color), 0.35);
    };
    for (std::size_t f = 0; f < fracs.size(); ++f)
        draw([&](long i) -> const Tongue& { return per_s[static_cast<std::size_t>(i)][f]; }, f);
    draw([&](long i) -> const Tongue& { return top[static_cast<std::size_t>(i)]; }, fracs.size());
    chart.axes("s", "slope m");
    t.svg = chart.str();
    return t;
}

std::string staircase_csv(const Real& s, Side side, const Real& lo, const Real& hi, long grid, const RunConfig& cfg) {
    if (grid < 1) throw DomainError("grid must be positive");
    if (!lo.is_rational() || !hi.is_rational()) throw DomainError("sweep window must be rational");
    std::vector<Real> xs;
    for (long i = 0; i <= grid; ++i) xs.push_back(lo + (hi - lo) * Real::frac(i, grid));
    std::vector<Real> values(xs.size());
    StaircaseParams p{s, cfg.precision};
    parallel_for(xs.size(), cfg.threads, [&](std::size_t i) { values[i] = delta(p, xs[i], side); });
    std::ostringstream csv;
    csv << "x,value,decimal\n";
    for (std::size_t i = 0; i < xs.size(); ++i) csv << xs[i].str() << "," << values[i].str() << "," << values[i].decimal(15) << "\n";
    return csv.str();
}

std::string classify_random(const Real& s, long count, const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    const long scale = 1000000;
    std::vector<Real> slopes;
    for (long i = 0; i < count; ++i) slopes.push_back(Real(mpq_class(static_cast<long>(rng() % scale), scale)) / s);
    std::vector<std::string> lines(slopes.size());
    parallel_for(slopes.size(), cfg.threads, [&](std::size_t i) {
        lines[i] = to_json(classify_slope(s, slopes[i], cfg.depth)).dump();
    });
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

namespace {

struct Commands {
    CLI::App app{"Staircases, tongues and linear trajectories on homothety surfaces", "hsurf"};
    RunConfig cfg;
    std::string precision;
    std::ostream& out;
    std::function<void()> action;

    explicit Commands(std::ostream& o) : out(o) {
        app.require_subcommand(1);
        app.fallthrough();
        app.add_option("--precision", precision, "absolute precision for series (default $STAIRCASE_PRECISION or 1e-12)");
        app.add_option("--threads", cfg.threads, "worker threads for sweeps (0: all cores)");
        app.add_option("--seed", cfg.seed, "seed for randomized sweeps");
        add_delta();
        add_classify();
        add_tongues();
        add_trace();
        add_cutseq();
        add_gapsum();
        add_staircase();
        add_cantor();
    }

    void finish_config() {
        cfg.precision = precision.empty() ? default_precision() : parse_real(precision, "precision").rational();
        if (cfg.precision <= 0) throw DomainError("precision must be positive");
        if (cfg.depth < 1) throw DomainError("depth must be at least 1");
    }

    // sub-option precision overrides the global one
    void add_precision(CLI::App* sub) { sub->add_option("--precision", precision, "absolute precision"); }

    void add_delta() {
        auto* sub = app.add_subcommand("delta", "evaluate the staircase function");
        auto s = std::make_shared<std::string>(), x = std::make_shared<std::string>();
        auto side = std::make_shared<std::string>("minus"), fmt = std::make_shared<std::string>("text");
        sub->add_option("--s", *s, "parameter s in (0,1)")->required();
        sub->add_option("--x", *x, "argument")->required();
        sub->add_option("--side", *side, "minus or plus");
        sub->add_option("--format", *fmt, "text or json");
        add_precision(sub);
        sub->callback([=, this] {
            action = [=, this] {
                Real sv = parse_real(*s, "s"), xv = parse_real(*x, "x");
                Real v = delta(StaircaseParams{sv, cfg.precision}, xv, parse_side(*side));
                if (*fmt == "json")
                    out << Json{{"s", real_to_json(sv)}, {"x", real_to_json(xv)}, {"side", *side}, {"value", real_to_json(v)}}.dump()
                        << "\n";
                else
                    out << scalar_text(v) << "\n";
            };
        });
    }

    void add_classify() {
        auto* sub = app.add_subcommand("classify", "classify a direction");
        auto surf = std::make_shared<SurfaceArgs>();
        auto m = std::make_shared<std::string>();
        auto random = std::make_shared<long>(0);
        surf->add(sub);
        sub->add_option("--m", *m, "slope, or inf");
        sub->add_option("--depth", cfg.depth, "Stern-Brocot depth");
        sub->add_option("--random", *random, "classify this many random exact slopes in [0,1/s) instead");
        add_precision(sub);
        sub->callback([=, this] {
            action = [=, this] {
                SurfaceSpec spec = surf->spec();
                if (*random > 0) {
                    out << classify_random(spec.plus.s, *random, cfg);
                    return;
                }
                if (m->empty()) throw DomainError("--m is required");
                auto slope = parse_slope(*m);
                if (surf->twisted()) {
                    Json j{{"forward", to_json(classify_direction(spec, slope, cfg.depth))},
                           {"backward", to_json(classify_backward(spec, slope, cfg.depth))}};
                    if (slope) j["backward_effective_slope"] = real_to_json(*slope - spec.minus.twist_u / spec.minus.s);
                    out << j.dump(2) << "\n";
                } else {
                    out << to_json(classify_direction(spec, slope, cfg.depth)).dump(2) << "\n";
                }
            };
        });
    }

    void add_tongues() {
        auto* sub = app.add_subcommand("tongues", "tongue boundaries over an s grid (CSV and SVG)");
        auto n_max = std::make_shared<long>(5), grid = std::make_shared<long>(200);
        auto svg = std::make_shared<std::string>(), csv = std::make_shared<std::string>();
        sub->add_option("--nmax", *n_max, "largest denominator");
        sub->add_option("--grid", *grid, "number of s values, s = i/(grid+1)");
        sub->add_option("--svg", *svg, "SVG output path");
        sub->add_option("--csv", *csv, "CSV output path (default stdout)");
        sub->callback([=, this] {
            action = [=, this] {
                TongueTable t = tongue_table(*n_max, *grid, cfg);
                write_to(*csv, t.csv, out);
                if (!svg->empty()) write_to(*svg, t.svg, out);
            };
        });
    }

    void add_trace() {
        auto* sub = app.add_subcommand("trace", "trace a trajectory; JSONL events then a status line");
        auto surf = std::make_shared<SurfaceArgs>();
        auto m = std::make_shared<std::string>(), start = std::make_shared<std::string>(), path = std::make_shared<std::string>();
        auto backward = std::make_shared<bool>(false);
        surf->add(sub);
        sub->add_option("--m", *m, "slope, or inf")->required();
        sub->add_option("--start", *start, "EDGE:coord, edges A A_short B C C_short D E")->required();
        sub->add_option("--max", cfg.max_crossings, "maximum number of crossings");
        sub->add_flag("--backward", *backward, "trace backward in time");
        sub->add_option("--out", *path, "JSONL output path (default stdout)");
        sub->callback([=, this] {
            action = [=, this] {
                auto slope = parse_slope(*m);
                TrajectoryState st = parse_start(*start, slope.value_or(Real(0)), *backward);
                st.vertical = !slope;
                TraceResult r = trace(surf->spec(), st, cfg.max_crossings);
                std::string text;
                for (const auto& e : r.events) text += to_json(e).dump() + "\n";
                Json tail{{"status", status_name(r.status)}, {"word", r.word()}, {"crossings", r.events.size()}};
                if (r.status == TraceStatus::Closed) {
                    tail["period"] = r.period;
                    tail["period_start"] = r.period_start;
                }
                text += tail.dump() + "\n";
                write_to(*path, text, out);
            };
        });
    }

    void add_cutseq() {
        auto* sub = app.add_subcommand("cutseq", "compare surface cutting sequences with the torus word");
        auto surf = std::make_shared<SurfaceArgs>();
        auto m = std::make_shared<std::string>();
        auto horizon = std::make_shared<long>(30);
        surf->add(sub);
        sub->add_option("--m", *m, "slope")->required();
        sub->add_option("--horizon", *horizon, "letters to compare");
        sub->add_option("--depth", cfg.depth, "Stern-Brocot depth");
        sub->callback([=, this] {
            action = [=, this] {
                auto slope = parse_slope(*m);
                if (!slope) throw DomainError("cutting sequences need a finite slope");
                out << to_json(compare_cutting_sequences(surf->spec(), *slope, *horizon, cfg.depth)).dump(2) << "\n";
            };
        });
    }

    void add_gapsum() {
        auto* sub = app.add_subcommand("gapsum", "gap sums of the Cantor sets");
        auto target = std::make_shared<std::string>("Ksxi"), s = std::make_shared<std::string>();
        auto d = std::make_shared<std::string>("1"), csv = std::make_shared<std::string>();
        auto n_max = std::make_shared<long>(200);
        sub->add_option("--target", *target, "Ks or Ksxi");
        sub->add_option("--s", *s, "rational s in (0,1)")->required();
        sub->add_option("--delta", *d, "exponent, rational > 0");
        sub->add_option("--nmax", *n_max, "number of terms");
        sub->add_option("--csv", *csv, "write partial sums as CSV");
        sub->callback([=, this] {
            action = [=, this] {
                GapTarget t;
                if (*target == "Ks") t = GapTarget::K_s;
                else if (*target == "Ksxi") t = GapTarget::K_s_xi;
                else throw DomainError("target must be Ks or Ksxi");
                Real dv = parse_real(*d, "delta");
                if (!dv.is_rational()) throw DomainError("delta must be rational");
                GapSumReport r = gap_sum(t, parse_real(*s, "s"), dv.rational(), *n_max);
                if (!csv->empty()) {
                    std::ostringstream c;
                    c << "n,partial\n";
                    c.precision(17);
                    for (std::size_t i = 0; i < r.partial_sums.size(); ++i) c << i + 1 << "," << r.partial_sums[i] << "\n";
                    write_to(*csv, c.str(), out);
                }
                out << to_json(r).dump(2) << "\n";
            };
        });
    }

    void add_staircase() {
        auto* sub = app.add_subcommand("staircase", "sample the staircase function on a grid (CSV, optional SVG)");
        auto s = std::make_shared<std::string>(), side = std::make_shared<std::string>("minus");
        auto lo = std::make_shared<std::string>("0"), hi = std::make_shared<std::string>("1");
        auto grid = std::make_shared<long>(200);
        auto csv = std::make_shared<std::string>(), svg = std::make_shared<std::string>();
        sub->add_option("--s", *s, "parameter s")->required();
        sub->add_option("--side", *side, "minus or plus");
        sub->add_option("--lo", *lo, "window start");
        sub->add_option("--hi", *hi, "window end");
        sub->add_option("--grid", *grid, "number of intervals");
        sub->add_option("--csv", *csv, "CSV path (default stdout)");
        sub->add_option("--svg", *svg, "SVG path");
        add_precision(sub);
        sub->callback([=, this] {
            action = [=, this] {
                Real sv = parse_real(*s, "s"), l = parse_real(*lo, "lo"), h = parse_real(*hi, "hi");
                std::string text = staircase_csv(sv, parse_side(*side), l, h, *grid, cfg);
                write_to(*csv, text, out);
                if (svg->empty()) return;
                std::istringstream in(text);
                std::string line;
                std::getline(in, line);
                std::vector<std::pair<double, double>> pts;
                while (std::getline(in, line)) {
                    auto a = line.find(','), b = line.rfind(',');
                    double x = Real::parse(line.substr(0, a)).to_double();
                    double y = std::stod(line.substr(b + 1));
                    if (!pts.empty()) pts.emplace_back(x, pts.back().second);  // step
                    pts.emplace_back(x, y);
                }
                double y_lo = pts.front().second, y_hi = pts.back().second;
                if (!(y_hi > y_lo)) y_hi = y_lo + 1;
                SvgChart chart(l.to_double(), h.to_double(), y_lo, y_hi);
                chart.polyline(pts, SvgChart::palette(0), 1.5);
                chart.axes("x", "staircase value");
                write_to(*svg, chart.str(), out);
            };
        });
    }

    void add_cantor() {
        auto* sub = app.add_subcommand("cantor", "gap cover of the Cantor image (CSV, optional SVG)");
        auto s = std::make_shared<std::string>(), xi = std::make_shared<std::string>();
        auto stage = std::make_shared<long>(20);
        auto csv = std::make_shared<std::string>(), svg = std::make_shared<std::string>();
        sub->add_option("--s", *s, "parameter s")->required();
        sub->add_option("--xi", *xi, "rotation number xi")->required();
        sub->add_option("--stage", *stage, "number of gaps");
        sub->add_option("--csv", *csv, "CSV path (default stdout)");
        sub->add_option("--svg", *svg, "SVG path");
        add_precision(sub);
        sub->callback([=, this] {
            action = [=, this] {
                UpsilonParams p{parse_real(*s, "s"), parse_real(*xi, "xi"), cfg.precision};
                GapCover cover = cantor_cover(p, *stage);
                std::ostringstream c;
                if (cover.finite) {
                    c << "point\n";
                    for (const auto& pt : cover.points) c << pt.str() << "\n";
                } else {
                    c << "j,at,left,right,length\n";
                    for (const auto& g : cover.gaps)
                        c << g.j << "," << g.at.decimal(20) << "," << g.left.decimal(20) << "," << g.right.decimal(20) << ","
                          << g.length.str() << "\n";
                }
                write_to(*csv, c.str(), out);
                if (svg->empty()) return;
                SvgChart chart(0, 1, 0, 1);
                if (cover.finite) {
                    for (const auto& pt : cover.points) chart.segment(pt.to_double(), 0, pt.to_double(), 1, SvgChart::palette(1));
                } else {
                    // the increasing jump function through its gaps, sorted by jump point
                    std::vector<Gap> by_at = cover.gaps;
                    std::sort(by_at.begin(), by_at.end(), [](const Gap& a, const Gap& b) { return a.at < b.at; });
                    std::vector<std::pair<double, double>> pts{{0, 0}};
                    for (const auto& g : by_at) {
                        double x = g.at.to_double();
                        pts.emplace_back(x, g.left.to_double());
                        pts.emplace_back(x, g.right.to_double());
                    }
                    pts.emplace_back(1, 1);
                    chart.polyline(pts, SvgChart::palette(0), 1.2);
                    for (const auto& g : cover.gaps) chart.rect(0, g.left.to_double(), 0.03, g.right.to_double(), SvgChart::palette(1), 0.6);
                }
                chart.axes("x", "image");
                write_to(*svg, chart.str(), out);
            };
        });
    }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Commands c(out);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        c.app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return c.app.exit(e, out, err);
    }
    try {
        c.finish_config();
        if (c.action) c.action();
    } catch (const PrecisionExhausted& e) {
        err << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace hsurf::cli
