#include "stw/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace stw {

using nlohmann::json;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string digest_file(const std::string& path) { return fnv1a_hex(read_file(path)); }

json slack_to_json(const SlackParams& s) {
    return json{{"epsilon", s.epsilon.str()}, {"c_gap", s.c_gap},     {"k", s.k},
                {"k1", s.k1},                 {"k2", s.k2},           {"c_cross", s.c_cross.str()},
                {"c_st", s.c_st.str()}};
}

json RunManifest::to_json() const {
    json j;
    j["command"] = command;
    j["slack"] = slack_to_json(slack);
    j["seeds"] = seeds;
    json d = json::array();
    for (auto& [path, hex] : input_digests) d.push_back({{"path", path}, {"fnv64", hex}});
    j["inputs"] = d;
    j["version"] = kToolVersion;
    if (wall_clock) j["wall_clock"] = *wall_clock;
    return j;
}

json config_to_json(const Configuration& c) {
    json pts = json::array(), lines = json::array();
    for (const auto& p : c.points) pts.push_back({p.x.str(), p.y.str()});
    for (const auto& l : c.lines) lines.push_back({l.a.str(), l.b.str(), l.c.str()});
    return json{{"N", c.N}, {"points", pts}, {"lines", lines}};
}

Configuration config_from_json(const json& j) {
    std::vector<Point2> pts;
    std::vector<Line> lines;
    for (const auto& p : j.at("points"))
        pts.push_back({Rat::from_string(p.at(0).get<std::string>()),
                       Rat::from_string(p.at(1).get<std::string>())});
    for (const auto& l : j.at("lines"))
        lines.push_back(Line::canon(Rat::from_string(l.at(0).get<std::string>()),
                                    Rat::from_string(l.at(1).get<std::string>()),
                                    Rat::from_string(l.at(2).get<std::string>())));
    return Configuration::make(std::move(lines), std::move(pts), j.at("N").get<long long>());
}

json circle_config_to_json(const CircleConfig& c) {
    json pts = json::array();
    for (const auto& p : c.points) pts.push_back({p.x.str(), p.y.str()});
    return json{{"N", c.N}, {"points", pts}};
}

CircleConfig circle_config_from_json(const json& j) {
    std::vector<Point2> pts;
    for (const auto& p : j.at("points"))
        pts.push_back({Rat::from_string(p.at(0).get<std::string>()),
                       Rat::from_string(p.at(1).get<std::string>())});
    return CircleConfig::make(std::move(pts), j.at("N").get<long long>());
}

json recipe_params_to_json(const RecipeParams& p) {
    json a = json::array(), b = json::array(), ls = json::array();
    for (const auto& v : p.a) a.push_back(v.str());
    for (const auto& v : p.b) b.push_back(v.str());
    for (const auto& l : p.ls) ls.push_back({l.a.str(), l.b.str(), l.c.str()});
    return json{{"N", p.N}, {"a", a}, {"b", b}, {"ls", ls}};
}

RecipeParams recipe_params_from_json(const json& j) {
    RecipeParams p;
    p.N = j.at("N").get<long long>();
    for (const auto& v : j.at("a")) p.a.push_back(Rat::from_string(v.get<std::string>()));
    for (const auto& v : j.at("b")) p.b.push_back(Rat::from_string(v.get<std::string>()));
    for (const auto& l : j.at("ls"))
        p.ls.push_back(Line::canon(Rat::from_string(l.at(0).get<std::string>()),
                                   Rat::from_string(l.at(1).get<std::string>()),
                                   Rat::from_string(l.at(2).get<std::string>())));
    p.validate();
    return p;
}

json map_to_json(const ProjectiveMap& m) {
    json rows = json::array();
    for (const auto& v : m.m) rows.push_back(v.str());
    return json{{"matrix", rows}};
}

ProjectiveMap map_from_json(const json& j) {
    std::array<Rat, 9> m;
    const auto& rows = j.at("matrix");
    for (int i = 0; i < 9; ++i) m[i] = Rat::from_string(rows.at(i).get<std::string>());
    return ProjectiveMap::from_rows(m);
}

std::string richness_csv(const RichnessProfile& r) {
    std::ostringstream os;
    os << "kind,id,count\n";
    for (std::size_t i = 0; i < r.point_counts.size(); ++i)
        os << "point," << i << "," << r.point_counts[i] << "\n";
    for (std::size_t i = 0; i < r.line_counts.size(); ++i)
        os << "line," << i << "," << r.line_counts[i] << "\n";
    return os.str();
}

std::string arrangement_csv(const Arrangement& a) {
    std::ostringstream os;
    os << "kind,id,data\n";
    for (std::size_t v = 0; v < a.vertices().size(); ++v)
        os << "vertex," << v << "," << a.vertices()[v].p.x.str() << ";"
           << a.vertices()[v].p.y.str() << "\n";
    for (std::size_t e = 0; e < a.edges().size(); ++e)
        os << "edge," << e << ",line=" << a.edges()[e].line << ";from=" << a.edges()[e].v_from
           << ";to=" << a.edges()[e].v_to << "\n";
    for (std::size_t f = 0; f < a.face_count(); ++f)
        os << "face," << f << ",sides=" << a.side_count(static_cast<int>(f))
           << ";bounded=" << (a.faces()[f].bounded ? 1 : 0) << "\n";
    return os.str();
}

namespace {

// 12 significant digits, render-only
std::string dec(const Rat& r) {
    std::ostringstream os;
    os << std::setprecision(12) << r.to_double();
    return os.str();
}

}  // namespace

std::string arrangement_svg(const Arrangement& a, const std::vector<Point2>& overlay) {
    // viewport fitted to vertices and overlay, padded
    double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
    bool any = false;
    auto grow = [&](const Point2& p) {
        double x = p.x.to_double(), y = p.y.to_double();
        if (!any) {
            lo_x = hi_x = x;
            lo_y = hi_y = y;
            any = true;
        }
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    };
    for (const auto& v : a.vertices()) grow(v.p);
    for (const auto& p : overlay) grow(p);
    double pad = std::max({(hi_x - lo_x) * 0.1, (hi_y - lo_y) * 0.1, 1.0});
    lo_x -= pad;
    hi_x += pad;
    lo_y -= pad;
    hi_y += pad;
    std::ostringstream os;
    os << std::setprecision(12);
    os << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='" << lo_x << " " << -hi_y << " "
       << (hi_x - lo_x) << " " << (hi_y - lo_y) << "'>\n";
    os << "<!-- render-only decimal precision; authoritative data is exact -->\n";
    double sw = (hi_x - lo_x) / 400.0;
    // shade bounded faces
    const char* fills[] = {"#dbeafe", "#dcfce7", "#fef9c3", "#fde2e2", "#ede9fe", "#cffafe"};
    for (std::size_t f = 0; f < a.face_count(); ++f) {
        if (!a.faces()[f].bounded) continue;
        os << "<polygon points='";
        for (int d : a.faces()[f].darts) {
            const auto& e = a.edges()[d / 2];
            int src = (d % 2 == 0) ? e.v_from : e.v_to;
            const Point2& p = a.vertices()[src].p;
            os << p.x.to_double() << "," << -p.y.to_double() << " ";
        }
        os << "' fill='" << fills[f % 6] << "' stroke='none'/>\n";
    }
    for (const auto& l : a.lines()) {
        // clip to the viewport box
        std::vector<std::pair<double, double>> pts;
        double A = l.a.to_double(), B = l.b.to_double(), C = l.c.to_double();
        auto push = [&](double x, double y) {
            if (x >= lo_x - 1e-9 && x <= hi_x + 1e-9 && y >= lo_y - 1e-9 && y <= hi_y + 1e-9)
                pts.push_back({x, y});
        };
        if (B != 0) {
            push(lo_x, (-C - A * lo_x) / B);
            push(hi_x, (-C - A * hi_x) / B);
        }
        if (A != 0) {
            push((-C - B * lo_y) / A, lo_y);
            push((-C - B * hi_y) / A, hi_y);
        }
        if (pts.size() >= 2)
            os << "<line x1='" << pts[0].first << "' y1='" << -pts[0].second << "' x2='"
               << pts[1].first << "' y2='" << -pts[1].second << "' stroke='black' stroke-width='"
               << sw << "'/>\n";
    }
    for (const auto& v : a.vertices())
        os << "<circle cx='" << dec(v.p.x) << "' cy='" << -v.p.y.to_double() << "' r='"
           << 2 * sw << "' fill='crimson'/>\n";
    for (const auto& p : overlay)
        os << "<circle cx='" << dec(p.x) << "' cy='" << -p.y.to_double() << "' r='" << 2 * sw
           << "' fill='steelblue'/>\n";
    os << "</svg>\n";
    return os.str();
}

std::string circles_svg(const CircleConfig& cfg) {
    double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
    bool any = false;
    for (const auto& p : cfg.points) {
        double x = p.x.to_double(), y = p.y.to_double();
        if (!any) {
            lo_x = hi_x = x;
            lo_y = hi_y = y;
            any = true;
        }
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    }
    lo_x -= 2;
    hi_x += 2;
    lo_y -= 2;
    hi_y += 2;
    std::ostringstream os;
    os << std::setprecision(12);
    os << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='" << lo_x << " " << -hi_y << " "
       << (hi_x - lo_x) << " " << (hi_y - lo_y) << "'>\n";
    os << "<!-- render-only decimal precision; authoritative data is exact -->\n";
    double sw = (hi_x - lo_x) / 400.0;
    for (const auto& p : cfg.points) {
        os << "<circle cx='" << dec(p.x) << "' cy='" << -p.y.to_double()
           << "' r='1' fill='none' stroke='black' stroke-width='" << sw << "'/>\n";
        os << "<circle cx='" << dec(p.x) << "' cy='" << -p.y.to_double() << "' r='" << 2 * sw
           << "' fill='crimson'/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace stw
