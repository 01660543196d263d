#include "stw/config.hpp"

#include <algorithm>
#include <random>

namespace stw {

void SlackParams::validate() const {
    if (epsilon.sign() <= 0 || epsilon > Rat(1, 10))
        throw std::invalid_argument("epsilon must be in (0, 1/10]");
    if (c_gap <= 0 || k <= 0 || k1 <= 0 || k2 <= 0)
        throw std::invalid_argument("slack constants must be positive");
    if (c_cross.sign() <= 0 || c_st.sign() <= 0)
        throw std::invalid_argument("c_cross and c_st must be positive");
}

Configuration Configuration::make(std::vector<Line> lines, std::vector<Point2> points,
                                  long long N) {
    Configuration c;
    c.lines = std::move(lines);
    c.points = std::move(points);
    c.N = N;
    for (std::size_t i = 0; i < c.lines.size(); ++i) {
        auto [it, fresh] = c.line_index_.emplace(c.lines[i], static_cast<int>(i));
        if (!fresh)
            throw duplicate_input("duplicate line at indices " + std::to_string(it->second) +
                                  " and " + std::to_string(i));
    }
    for (std::size_t i = 0; i < c.points.size(); ++i) {
        auto [it, fresh] = c.point_index_.emplace(c.points[i], static_cast<int>(i));
        if (!fresh)
            throw duplicate_input("duplicate point at indices " + std::to_string(it->second) +
                                  " and " + std::to_string(i));
    }
    return c;
}

int Configuration::line_id(const Line& l) const {
    auto it = line_index_.find(l);
    return it == line_index_.end() ? -1 : it->second;
}

int Configuration::point_id(const Point2& p) const {
    auto it = point_index_.find(p);
    return it == point_index_.end() ? -1 : it->second;
}

bool IncidenceSet::contains(int li, int pi) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(li, pi));
}

IncidenceSet IncidenceSet::from_pairs(std::vector<std::pair<int, int>> p, std::size_t n_lines,
                                      std::size_t n_points) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    IncidenceSet s;
    s.pairs = std::move(p);
    s.by_line.assign(n_lines, {});
    s.by_point.assign(n_points, {});
    for (auto [li, pi] : s.pairs) {
        s.by_line[li].push_back(pi);
        s.by_point[pi].push_back(li);
    }
    return s;
}

IncidenceSet incidences(const Configuration& config) {
    std::vector<std::pair<int, int>> pairs;
    // group point ids by x, each group sorted by y for exact binary search
    std::map<Rat, std::vector<std::pair<Rat, int>>> by_x;
    for (std::size_t i = 0; i < config.points.size(); ++i)
        by_x[config.points[i].x].push_back({config.points[i].y, static_cast<int>(i)});
    for (auto& [x, ys] : by_x) std::sort(ys.begin(), ys.end());

    // bucketed path pays off when lines far outnumber distinct columns
    bool bucketed = by_x.size() * 4 <= config.points.size() || by_x.size() <= 64;
    for (std::size_t li = 0; li < config.lines.size(); ++li) {
        const Line& l = config.lines[li];
        if (bucketed && !l.vertical()) {
            for (const auto& [x, ys] : by_x) {
                Rat y = l.y_at(x);
                auto it = std::lower_bound(ys.begin(), ys.end(), std::make_pair(y, -1));
                if (it != ys.end() && it->first == y)
                    pairs.push_back({static_cast<int>(li), it->second});
            }
        } else if (bucketed && l.vertical()) {
            Rat x = -l.c / l.a;
            auto it = by_x.find(x);
            if (it != by_x.end())
                for (auto& [y, pi] : it->second) pairs.push_back({static_cast<int>(li), pi});
        } else {
            for (std::size_t pi = 0; pi < config.points.size(); ++pi)
                if (l.contains(config.points[pi]))
                    pairs.push_back({static_cast<int>(li), static_cast<int>(pi)});
        }
    }
    return IncidenceSet::from_pairs(std::move(pairs), config.lines.size(),
                                    config.points.size());
}

Configuration generate_grid(long long k) {
    if (k < 1) throw std::invalid_argument("grid: k >= 1 required");
    std::vector<Line> lines;
    lines.reserve(k * k * k);
    for (long long m = 0; m < k; ++m)
        for (long long b = 0; b < k * k; ++b)
            lines.push_back(Line::canon(Rat(m), Rat(-1), Rat(b)));  // y = m x + b
    std::vector<Point2> points;
    points.reserve(k * (2 * k * k - 1));
    for (long long x = 0; x < k; ++x)
        for (long long y = 0; y < 2 * k * k - 1; ++y) points.push_back({Rat(x), Rat(y)});
    return Configuration::make(std::move(lines), std::move(points), 2 * k * k * k);
}

Configuration generate_random(long long n_lines, long long n_points, long long span,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto coord = [&]() { return Rat(static_cast<long long>(rng() % (2 * span + 1)) - span); };
    std::map<Line, bool> seen_l;
    std::vector<Line> lines;
    while (static_cast<long long>(lines.size()) < n_lines) {
        Rat a = coord(), b = coord(), c = coord();
        if (a.is_zero() && b.is_zero()) continue;
        Line l = Line::canon(a, b, c);
        if (!seen_l.emplace(l, true).second) continue;
        lines.push_back(l);
    }
    std::map<Point2, bool> seen_p;
    std::vector<Point2> points;
    while (static_cast<long long>(points.size()) < n_points) {
        Point2 p{coord(), coord()};
        if (!seen_p.emplace(p, true).second) continue;
        points.push_back(p);
    }
    long long n = std::max(n_lines, n_points);
    return Configuration::make(std::move(lines), std::move(points), n);
}

Rat st_margin(const Configuration& config, const IncidenceSet& I, const SlackParams& params) {
    long long n = static_cast<long long>(config.lines.size());
    long long m = static_cast<long long>(config.points.size());
    if (n == 0 && m == 0) return Rat(0);
    mpz_class nm = mpz_class(static_cast<long>(n)) * static_cast<long>(m);
    mpz_class x = iroot(nm * nm, 3);  // floor((n m)^(2/3))
    Rat bound = params.c_st * Rat(mpq_class(x)) + Rat(n) + Rat(m);
    if (bound.is_zero()) return Rat(0);
    return Rat(static_cast<long long>(I.size())) / bound;
}

namespace {
int dyadic_class(long long v) {
    int d = 0;
    while ((2LL << d) <= v) ++d;
    return d;  // v in [2^d, 2^(d+1))
}
}  // namespace

RichnessProfile richness(const Configuration& config, const IncidenceSet& I) {
    RichnessProfile r;
    r.point_counts.assign(config.points.size(), 0);
    r.line_counts.assign(config.lines.size(), 0);
    for (auto [li, pi] : I.pairs) {
        ++r.line_counts[li];
        ++r.point_counts[pi];
    }
    for (auto c : r.point_counts)
        if (c > 0) ++r.point_histogram[dyadic_class(c)];
    for (auto c : r.line_counts)
        if (c > 0) ++r.line_histogram[dyadic_class(c)];
    r.total = static_cast<long long>(I.size());
    return r;
}

ShearResult shear_avoiding_vertical(const Configuration& config) {
    bool any_vertical = false;
    std::vector<Rat> bad;  // shear values that would create a vertical line
    for (const auto& l : config.lines) {
        if (l.vertical())
            any_vertical = true;
        else if (!l.a.is_zero())
            bad.push_back(l.b / l.a);  // B - A*s = 0  =>  s = B/A
    }
    if (!any_vertical) return {config, Rat(0)};
    Rat s(0);
    for (long long d = 1; ; ++d) {
        bool ok = false;
        for (Rat cand : {Rat(1, d), Rat(-1, d)}) {
            ok = true;
            for (const auto& b : bad)
                if (b == cand) ok = false;
            if (ok) {
                s = cand;
                break;
            }
        }
        if (ok) break;
    }
    std::vector<Line> lines;
    for (const auto& l : config.lines) lines.push_back(Line::canon(l.a, l.b - l.a * s, l.c));
    std::vector<Point2> pts;
    for (const auto& p : config.points) pts.push_back({p.x + s * p.y, p.y});
    return {Configuration::make(std::move(lines), std::move(pts), config.N), s};
}

FilterResult filter_rich_points(const Configuration& config, const IncidenceSet& I,
                                long long threshold) {
    std::vector<long long> count(config.points.size(), 0);
    for (auto [li, pi] : I.pairs) ++count[pi];
    FilterResult res;
    std::vector<Point2> kept;
    for (std::size_t pi = 0; pi < config.points.size(); ++pi) {
        if (count[pi] >= threshold)
            kept.push_back(config.points[pi]);
        else
            res.removed_points.push_back(static_cast<int>(pi));
    }
    res.config = Configuration::make(config.lines, std::move(kept), config.N);
    res.incidences = incidences(res.config);
    return res;
}

}  // namespace stw
